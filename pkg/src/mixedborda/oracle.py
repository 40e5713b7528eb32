"""Brute-force ground truth on small instances.

Nothing here is clever on purpose: branchings come from trying every
out-edge per delegator, in-trees from trying every out-edge per non-root
node, and both keep only acyclic choices.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .graph_core import Assignment, DelegationGraph, make_assignment, prepare

MAX_DELEGATORS = 12
MAX_TREE_NODES = 10


class TooLarge(ValueError):
    pass


@dataclass(frozen=True)
class BranchingSet:
    branchings: tuple[frozenset[tuple[str, str]], ...]
    costs: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.branchings)

    @property
    def min_cost(self) -> int:
        return min(self.costs)

    def optimal(self) -> list[frozenset[tuple[str, str]]]:
        best = self.min_cost
        return [b for b, c in zip(self.branchings, self.costs) if c == best]


def _functional_assignments(
    choosers: Sequence[Hashable],
    options: Mapping[Hashable, Sequence[Hashable]],
) -> list[dict]:
    """Every acyclic choice of one successor per chooser."""
    out: list[dict] = []
    succ: dict = {}

    def closes_cycle(u, v) -> bool:
        while v in succ:
            v = succ[v]
            if v == u:
                return True
        return v == u

    def rec(i: int) -> None:
        if i == len(choosers):
            out.append(dict(succ))
            return
        u = choosers[i]
        for v in options[u]:
            if closes_cycle(u, v):
                continue
            succ[u] = v
            rec(i + 1)
            del succ[u]

    rec(0)
    return out


def enumerate_branchings(graph: DelegationGraph) -> BranchingSet:
    """All maximum-cardinality branchings of a preprocessed graph."""
    if len(graph.delegators) > MAX_DELEGATORS:
        raise TooLarge(f"{len(graph.delegators)} delegators exceed the cap of {MAX_DELEGATORS}")
    choices = _functional_assignments(graph.delegators, graph.successors)
    branchings = tuple(frozenset(succ.items()) for succ in choices)
    costs = tuple(sum(graph.cost[e] for e in b) for b in branchings)
    return BranchingSet(branchings, costs)


def destination(branching: Iterable[tuple[str, str]], v: str) -> str:
    succ = dict(branching)
    while v in succ:
        v = succ[v]
    return v


def oracle_assignment(graph: DelegationGraph) -> Assignment:
    """Share of min-cost branchings connecting each delegator to each sink."""
    graph, removed = prepare(graph)
    optimal = enumerate_branchings(graph).optimal() if graph.delegators else []
    total = len(optimal)
    entries: dict[str, dict[str, Fraction]] = {v: {} for v in graph.delegators}
    for b in optimal:
        for v in graph.delegators:
            s = destination(b, v)
            entries[v][s] = entries[v].get(s, Fraction(0)) + Fraction(1, total)
    return make_assignment(graph.delegators, graph.sinks, entries, removed)


def enumerate_in_trees(
    nodes: Sequence[Hashable],
    edges: Iterable[tuple[Hashable, Hashable]],
    root: Hashable,
    cost: Callable[[tuple[Hashable, Hashable]], int] | None = None,
) -> list[frozenset[tuple[Hashable, Hashable]]]:
    """Spanning in-trees rooted at ``root``; with ``cost``, only the cheapest ones."""
    if len(nodes) > MAX_TREE_NODES:
        raise TooLarge(f"{len(nodes)} nodes exceed the cap of {MAX_TREE_NODES}")
    options: dict = {v: [] for v in nodes}
    for u, v in edges:
        if u != v and u in options and v in options:
            options[u].append(v)
    others = [v for v in nodes if v != root]
    trees = [frozenset(s.items()) for s in _functional_assignments(others, options)]
    if cost is None or not trees:
        return trees
    weight = [sum(cost(e) for e in t) for t in trees]
    best = min(weight)
    return [t for t, w in zip(trees, weight) if w == best]


def weighted_tree_total(
    nodes: Sequence[Hashable],
    weights: Mapping[tuple[Hashable, Hashable], int],
    root: Hashable,
) -> int:
    total = 0
    for t in enumerate_in_trees(nodes, weights, root):
        prod = 1
        for e in t:
            prod *= weights[e]
        total += prod
    return total


def min_cost_tree_count(graph: DelegationGraph, x: Iterable[str], v: str) -> int:
    """Number of cheapest ``v``-trees in the subgraph induced by ``x``."""
    x = sorted(x)
    inside = [(e.source, e.target) for e in graph.edges if e.source in x and e.target in x]
    return len(enumerate_in_trees(x, inside, v, cost=graph.cost.__getitem__))
