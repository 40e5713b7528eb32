"""The Random Walk Rule at a fixed epsilon, solved exactly.

A walker at delegator ``u`` follows edge ``(u, v)`` with probability
``eps ** c(u, v) / sum_w eps ** c(u, w)``.  Only the limit ``eps -> 0`` is
approximated, by taking ``eps`` small; each per-epsilon solve is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .chain import AbsorbingChain, absorbing_probabilities
from .graph_core import Assignment, DelegationGraph, make_assignment, prepare
from .mbb_solver import solve

DEFAULT_EPS = Fraction(1, 10**6)
DEFAULT_TOL = Fraction(1, 10**3)


class EpsOutOfRange(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class EpsilonChain:
    graph: DelegationGraph
    eps: Fraction
    chain: AbsorbingChain

    def probability(self, u: str, v: str) -> Fraction:
        return self.chain.transitions.get(u, {}).get(v, Fraction(0))


def build_epsilon_chain(graph: DelegationGraph, eps) -> EpsilonChain:
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise EpsOutOfRange(f"eps must lie in (0, 1], got {eps}")
    rows = {}
    for u in graph.delegators:
        powers = {e.target: eps**e.cost for e in graph.out_edges[u]}
        norm = sum(powers.values())
        rows[u] = {v: p / norm for v, p in powers.items()}
    return EpsilonChain(graph, eps, AbsorbingChain(graph.nodes, rows, graph.sinks))


def rwr_estimate(graph: DelegationGraph, eps) -> Assignment:
    """Exact absorption probabilities of the epsilon chain."""
    graph, removed = prepare(graph)
    q = absorbing_probabilities(build_epsilon_chain(graph, eps).chain)
    return make_assignment(graph.delegators, graph.sinks, q, removed)


@dataclass(frozen=True)
class ConvergenceReport:
    eps: tuple[Fraction, ...]
    deviations: tuple[Fraction, ...]

    @property
    def monotone(self) -> bool:
        """Deviations never grow as epsilon decreases."""
        return all(b <= a for a, b in zip(self.deviations, self.deviations[1:]))

    @property
    def final(self) -> Fraction:
        return self.deviations[-1]


def rwr_limit_check(
    graph: DelegationGraph, eps_sequence: Iterable = (Fraction(1, 10**2), Fraction(1, 10**4), DEFAULT_EPS)
) -> ConvergenceReport:
    """Max-entry deviation of each epsilon solve from the exact limit."""
    eps = tuple(Fraction(e) for e in eps_sequence)
    if any(b >= a for a, b in zip(eps, eps[1:])):
        raise ValueError("eps_sequence must be strictly decreasing")
    limit = solve(graph)
    devs = tuple(rwr_estimate(graph, e).max_deviation(limit) for e in eps)
    return ConvergenceReport(eps, devs)
