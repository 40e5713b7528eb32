"""Executable delegation-rule axioms and the non-fractional impossibility.

Each ``check_*`` function solves the instance (and its edited variant) with
Mixed Borda Branching and compares exactly.  The pure predicates on
assignments (``*_holds``) are shared with the impossibility search, where
the "rule" is an arbitrary 0/1 assignment per graph.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Mapping

from .chain import AbsorbingChain, absorbing_probabilities
from .fixtures import impossibility_g1, impossibility_g2, impossibility_g3
from .graph_core import (
    Assignment,
    DelegationGraph,
    apply_permutation,
    make_assignment,
    prepare,
    remove_in_edges_of_sink,
    remove_node,
    remove_out_edges,
)
from .mbb_solver import solve, solve_detailed
from .oracle import destination, enumerate_branchings

Rule = Callable[[DelegationGraph], Assignment]

PASS, FAIL, VACUOUS = "pass", "fail", "vacuous-same-block"


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    instance: str
    status: str
    witness: Mapping[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status != FAIL


def _report(axiom: str, graph: DelegationGraph, ok: bool, **witness) -> AxiomReport:
    return AxiomReport(axiom, repr(graph), PASS if ok else FAIL, witness)


# -- predicates on assignments ------------------------------------------------


def anonymity_holds(a: Assignment, a_perm: Assignment, sigma: Mapping[str, str]) -> bool:
    return all(a[v, s] == a_perm[sigma[v], sigma[s]] for v, s, _ in a.items())


def copy_robustness_sides(a: Assignment, a_hat: Assignment, v: str) -> tuple[Fraction, Fraction]:
    reps = a.representatives(v)
    w, w_hat = a.weights(), a_hat.weights()
    lhs = sum((w[s] for s in reps), Fraction(0))
    rhs = w_hat[v] + sum((w_hat[s] for s in reps), Fraction(0))
    return lhs, rhs


def copy_robustness_holds(a: Assignment, a_hat: Assignment, v: str) -> bool:
    lhs, rhs = copy_robustness_sides(a, a_hat, v)
    return lhs == rhs


def weight_not_decreased(a: Assignment, a_hat: Assignment, sinks) -> list[str]:
    """Sinks among ``sinks`` whose voting weight dropped."""
    w, w_hat = a.weights(), a_hat.weights()
    return [s for s in sorted(sinks) if w_hat[s] < w[s]]


# -- checks against the rule ---------------------------------------------------


def check_anonymity(graph: DelegationGraph, sigma: Mapping[str, str], rule: Rule = solve) -> AxiomReport:
    graph, _ = prepare(graph)
    a = rule(graph)
    a_perm = rule(apply_permutation(graph, sigma))
    return _report("anonymity", graph, anonymity_holds(a, a_perm, sigma), sigma=dict(sigma))


def check_copy_robustness(graph: DelegationGraph, v: str, rule: Rule = solve) -> AxiomReport:
    graph, _ = prepare(graph)
    a = rule(graph)
    a_hat = rule(remove_out_edges(graph, v))
    lhs, rhs = copy_robustness_sides(a, a_hat, v)
    return _report("copy-robustness", graph, lhs == rhs, voter=v, lhs=lhs, rhs=rhs)


def check_guru_participation(graph: DelegationGraph, v: str, rule: Rule = solve) -> AxiomReport:
    graph, _ = prepare(graph)
    a = rule(graph)
    a_hat = rule(remove_node(graph, v))
    others = set(a.cols) - a.representatives(v)
    dropped = weight_not_decreased(a, a_hat, others)
    return _report("guru-participation", graph, not dropped, removed=v, offending_sinks=dropped)


def check_sink_inedge_monotonicity(graph: DelegationGraph, s: str, rule: Rule = solve) -> AxiomReport:
    graph, _ = prepare(graph)
    a = rule(graph)
    a_hat = rule(remove_in_edges_of_sink(graph, s))
    dropped = weight_not_decreased(a, a_hat, set(a.cols) - {s})
    return _report("sink-in-edge-monotonicity", graph, not dropped, sink=s, offending_sinks=dropped)


def _walk_chain(h) -> tuple[dict, dict]:
    """Root contracted graph as a walk without self-loops: ``(transitions, sink states)``."""
    w = h.weights[h.root]
    degree: dict = {}
    for (y, _), x in w.items():
        degree[y] = degree.get(y, 0) + x
    rows: dict = {}
    for (y, y2), x in w.items():
        rows.setdefault(y, {})[y2] = Fraction(x) / degree[y]
    sinks = {y for y in h.children[h.root] if y not in rows}
    return rows, sinks


def check_confluence_factorization(graph: DelegationGraph, u: str, v: str) -> AxiomReport:
    """``A[u, s] == A'[u, s] + h * A[v, s]`` on the root contracted chain.

    ``h`` is the probability that the walk from ``u``'s block hits ``v``'s
    block, and ``A'`` the absorption probabilities of walks avoiding it.
    """
    result = solve_detailed(graph)
    hier, a = result.hierarchy, result.assignment
    yu, yv = hier.child_containing(hier.root, u), hier.child_containing(hier.root, v)
    if yu == yv:
        return AxiomReport("confluence", repr(hier.graph), VACUOUS, {"u": u, "v": v})
    rows, sinks = _walk_chain(hier)
    states = tuple(hier.children[hier.root])
    stopped = tuple(sorted(sinks, key=min)) + (yv,)
    trimmed = {y: r for y, r in rows.items() if y != yv}
    q = absorbing_probabilities(AbsorbingChain(states, trimmed, stopped))
    hit = q[yu][yv]
    ok = True
    deviations = {}
    for s in a.cols:
        avoid = q[yu][frozenset([s])]
        if a[u, s] != avoid + hit * a[v, s]:
            ok = False
            deviations[s] = a[u, s] - avoid - hit * a[v, s]
    return _report("confluence", hier.graph, ok, u=u, v=v, hit=hit, deviations=deviations)


def induced_assignment(graph: DelegationGraph, branching) -> dict[str, str]:
    return {v: destination(branching, v) for v in graph.delegators}


def check_nonfractional_confluence(graph: DelegationGraph, a: Mapping[str, str] | Assignment) -> bool:
    """True iff some branching routes every delegator to its assigned sink."""
    target = _as_choice(a)
    return any(
        induced_assignment(graph, b) == target for b in enumerate_branchings(graph).branchings
    )


def _as_choice(a: Mapping[str, str] | Assignment) -> dict[str, str]:
    if isinstance(a, Assignment):
        out = {}
        for v in a.rows:
            reps = [s for s in a.cols if a[v, s] != 0]
            if len(reps) != 1 or a[v, reps[0]] != 1:
                raise ValueError(f"row {v!r} is not a 0/1 row")
            out[v] = reps[0]
        return out
    return dict(a)


def choice_assignment(graph: DelegationGraph, choice: Mapping[str, str]) -> Assignment:
    entries = {v: {s: Fraction(1)} for v, s in choice.items()}
    return make_assignment(graph.delegators, graph.sinks, entries)


# -- impossibility -------------------------------------------------------------


@dataclass(frozen=True)
class ImpossibilityRow:
    choices: tuple[dict[str, str], dict[str, str], dict[str, str]]
    failures: tuple[str, ...]

    @property
    def survives(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class ImpossibilityReport:
    rows: tuple[ImpossibilityRow, ...]

    @property
    def survivors(self) -> int:
        return sum(r.survives for r in self.rows)

    def table(self) -> str:
        lines = []
        for i, r in enumerate(self.rows, 1):
            cells = "  ".join(
                ",".join(f"{v}->{s}" for v, s in sorted(c.items())) for c in r.choices
            )
            lines.append(f"{i:2d}  {cells:<40}  {'; '.join(r.failures) or 'survives'}")
        lines.append(f"{self.survivors} rules survive out of {len(self.rows)}")
        return "\n".join(lines)


def _all_choices(graph: DelegationGraph) -> list[dict[str, str]]:
    return [
        dict(zip(graph.delegators, combo))
        for combo in itertools.product(graph.sinks, repeat=len(graph.delegators))
    ]


def impossibility_demo() -> ImpossibilityReport:
    """Every joint 0/1 assignment on the three fixture graphs breaks some axiom."""
    g1, g2, g3 = impossibility_g1(), impossibility_g2(), impossibility_g3()
    sigma1 = {"v1": "v2", "v2": "v1", "v3": "v4", "v4": "v3"}
    sigma2 = {"v1": "v3", "v3": "v1", "v2": "v4", "v4": "v2"}
    assert apply_permutation(g1, sigma1) == g1 and apply_permutation(g2, sigma2) == g2
    assert remove_out_edges(g1, "v2") == g3 and remove_out_edges(g2, "v3") == g3
    graph_choices = [
        [c for c in _all_choices(g) if set(c.values()) <= set(g.sinks)] for g in (g1, g2)
    ]
    # in G3 only two of v1's three sinks are reachable
    g3_choices = [{"v1": s} for s in ("v2", "v3")]
    rows = []
    for c1, c2, c3 in itertools.product(graph_choices[0], graph_choices[1], g3_choices):
        a1, a2, a3 = (choice_assignment(g, c) for g, c in ((g1, c1), (g2, c2), (g3, c3)))
        failures = []
        for name, g, c in (("G1", g1, c1), ("G2", g2, c2), ("G3", g3, c3)):
            if not check_nonfractional_confluence(g, c):
                failures.append(f"confluence on {name}")
        if not anonymity_holds(a1, a1, sigma1):
            failures.append("anonymity on G1")
        if not anonymity_holds(a2, a2, sigma2):
            failures.append("anonymity on G2")
        if not copy_robustness_holds(a1, a3, "v2"):
            failures.append("copy-robustness on G1->G3")
        if not copy_robustness_holds(a2, a3, "v3"):
            failures.append("copy-robustness on G2->G3")
        rows.append(ImpossibilityRow((c1, c2, c3), tuple(failures)))
    return ImpossibilityReport(tuple(rows))
