"""Limits of parametric absorbing chains and the directed power watershed.

Each edge of a :class:`ParametricChain` moves with probability
``f_e(eps) / g_e(eps)`` for polynomials with positive coefficients.  As
``eps -> 0`` only the lowest-order terms matter: the edge behaves like a
delegation edge of cost ``x_e - z_e + 1`` (``x_e``, ``z_e`` the smallest
exponents of ``f_e`` and ``g_e``) whose contracted weight is scaled by the
ratio ``q_e`` of the matching coefficients.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Mapping

from .chain import AbsorbingChain, absorbing_probabilities
from .generators import random_delegation_graph
from .graph_core import (
    DELEGATOR,
    SINK,
    Assignment,
    DelegationGraph,
    Edge,
    GraphError,
    format_fraction,
    make_assignment,
)
from .mbb_solver import solve_detailed

Poly = Mapping[int, Fraction]


class IllDefinedChain(GraphError):
    pass


class NoLabeledNodes(GraphError):
    pass


def poly(terms: Mapping) -> dict[int, Fraction]:
    """Normalise an exponent -> coefficient map (keys and values may be strings)."""
    out = {int(k): Fraction(v) for k, v in terms.items()}
    if not out:
        raise IllDefinedChain("empty polynomial")
    if any(k < 0 for k in out):
        raise IllDefinedChain("negative exponent")
    if any(c <= 0 for c in out.values()):
        raise IllDefinedChain("polynomial coefficients must be positive")
    return out


def evaluate(p: Poly, eps: Fraction) -> Fraction:
    return sum((c * eps**k for k, c in p.items()), Fraction(0))


def derive_cost_and_ratio(f: Poly, g: Poly) -> tuple[int, Fraction]:
    f, g = poly(f), poly(g)
    x, z = min(f), min(g)
    c = x - z + 1
    if c < 1:
        raise IllDefinedChain(
            f"edge probability grows like eps^{x - z} and exceeds 1 for small eps"
        )
    return c, f[x] / g[z]


@dataclass(frozen=True, eq=False)
class ParametricChain:
    nodes: tuple[str, ...]
    edges: Mapping[tuple[str, str], tuple[Poly, Poly]]

    @property
    def sinks(self) -> tuple[str, ...]:
        tails = {u for u, _ in self.edges}
        return tuple(v for v in self.nodes if v not in tails)

    def to_dict(self) -> dict:
        def enc(p: Poly) -> dict:
            return {str(k): format_fraction(c) for k, c in sorted(p.items())}

        return {
            "nodes": [
                {"id": v, "role": SINK if v in self.sinks else DELEGATOR} for v in self.nodes
            ],
            "edges": [
                {"from": u, "to": v, "f": enc(f), "g": enc(g)}
                for (u, v), (f, g) in sorted(self.edges.items())
            ],
        }


def chain_from_dict(data: Mapping) -> ParametricChain:
    nodes = tuple(sorted(str(n["id"]) for n in data["nodes"]))
    edges = {
        (str(e["from"]), str(e["to"])): (poly(e["f"]), poly(e.get("g", {"0": "1"})))
        for e in data["edges"]
    }
    return ParametricChain(nodes, edges)


def to_delegation_graph(chain: ParametricChain) -> tuple[DelegationGraph, dict[tuple[str, str], Fraction]]:
    """Derived cost graph and per-edge leading-coefficient ratios."""
    roles = {v: SINK for v in chain.nodes}
    edges, ratios = [], {}
    for (u, v), (f, g) in sorted(chain.edges.items()):
        c, q = derive_cost_and_ratio(f, g)
        roles[u] = DELEGATOR
        edges.append(Edge(u, v, c))
        ratios[(u, v)] = q
    return DelegationGraph(roles, tuple(edges)), ratios


def solve_parametric_limit(chain: ParametricChain) -> Assignment:
    """Exact ``eps -> 0`` absorption probabilities of a parametric chain."""
    graph, ratios = to_delegation_graph(chain)
    result = solve_detailed(graph, ratios)
    if result.assignment.removed:
        raise IllDefinedChain(f"states {list(result.assignment.removed)} never get absorbed")
    return result.assignment


def chain_at(chain: ParametricChain, eps) -> AbsorbingChain:
    """The concrete chain at ``eps``; rows must be stochastic there."""
    eps = Fraction(eps)
    rows: dict[str, dict[str, Fraction]] = {}
    for (u, v), (f, g) in chain.edges.items():
        rows.setdefault(u, {})[v] = evaluate(f, eps) / evaluate(g, eps)
    for u, row in rows.items():
        total = sum(row.values())
        if total != 1:
            raise IllDefinedChain(f"row {u!r} sums to {total} at eps={eps}")
    return AbsorbingChain(chain.nodes, rows, chain.sinks)


def parametric_at(chain: ParametricChain, eps) -> Assignment:
    q = absorbing_probabilities(chain_at(chain, eps))
    return make_assignment(q.keys(), chain.sinks, q)


def from_delegation_graph(graph: DelegationGraph) -> ParametricChain:
    """The epsilon walk of a delegation graph written as a parametric chain."""
    edges = {}
    for u in graph.delegators:
        norm: dict[int, Fraction] = {}
        for e in graph.out_edges[u]:
            norm[e.cost] = norm.get(e.cost, Fraction(0)) + 1
        for e in graph.out_edges[u]:
            edges[(u, e.target)] = ({e.cost: Fraction(1)}, dict(norm))
    return ParametricChain(graph.nodes, edges)


def random_parametric_chain(rng: random.Random, n_nodes: tuple[int, int] = (3, 8)) -> ParametricChain:
    """Random stochastic parametric chain with polynomial degrees at most 2.

    Out of delegator ``u`` the numerators are ``h_u * f'_e`` and the shared
    denominator is ``h_u * sum f'``, with ``h_u`` a monomial of degree <= 1
    and each ``f'_e`` of degree <= 1.
    """
    skeleton = random_delegation_graph(rng, n_nodes)
    edges = {}
    for u in skeleton.delegators:
        shift = rng.randint(0, 1)
        scale = Fraction(rng.randint(1, 3), rng.randint(1, 2))
        base = {}
        for e in skeleton.out_edges[u]:
            exps = rng.sample((0, 1), rng.randint(1, 2))
            base[e.target] = {k: Fraction(rng.randint(1, 4), rng.randint(1, 3)) for k in exps}
        total: dict[int, Fraction] = {}
        for p in base.values():
            for k, c in p.items():
                total[k] = total.get(k, Fraction(0)) + c
        g = {k + shift: c * scale for k, c in total.items()}
        for v, p in base.items():
            edges[(u, v)] = ({k + shift: c * scale for k, c in p.items()}, g)
    return ParametricChain(skeleton.nodes, edges)


def watershed(graph: DelegationGraph, labels: Mapping[str, Hashable]) -> dict[str, dict[Hashable, Fraction]]:
    """Label distribution of every unlabeled node.

    The probability of label ``l`` at ``v`` is the share of min-cost
    branchings connecting ``v`` to a seed carrying ``l``.
    """
    if not labels:
        raise NoLabeledNodes("watershed needs at least one labeled node")
    result = solve_detailed(graph)
    a = result.assignment
    if set(labels) != set(a.cols):
        raise GraphError(
            f"labeled nodes {sorted(labels)} must be exactly the sinks {list(a.cols)}"
        )
    out: dict[str, dict[Hashable, Fraction]] = {}
    for v in a.rows:
        dist: dict[Hashable, Fraction] = {}
        for s, p in a.row(v).items():
            if p:
                dist[labels[s]] = dist.get(labels[s], Fraction(0)) + p
        out[v] = dist
    return out
