"""Fulkerson's primal-dual phase: a laminar dual certificate for min-cost branchings.

Starting from ``y({s}) = 1`` for every casting voter, the algorithm repeatedly
takes a strongly connected component ``X`` of delegators in the tight-edge
graph that has no tight edge leaving it, and raises ``y(X)`` until some edge
of the cut ``delta+(X)`` becomes tight.  It stops once every delegator reaches
a casting voter along tight edges.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .graph_core import DelegationGraph, GraphError, scc

NodeSet = frozenset


class NonTermination(RuntimeError):
    pass


class NotABranching(GraphError):
    pass


def set_key(x: frozenset) -> tuple:
    return (len(x), sorted(x))


@dataclass(frozen=True, eq=False)
class DualCertificate:
    graph: DelegationGraph
    family: tuple[frozenset, ...]
    tight_edges: frozenset[tuple[str, str]]
    dual: Mapping[frozenset, int]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DualCertificate):
            return NotImplemented
        return (
            set(self.family) == set(other.family)
            and self.tight_edges == other.tight_edges
            and dict(self.dual) == dict(other.dual)
        )

    @cached_property
    def chains(self) -> dict[str, list[frozenset]]:
        """For each node, the members of the family containing it, smallest first."""
        out: dict[str, list[frozenset]] = {v: [] for v in self.graph.nodes}
        for x in sorted(self.family, key=set_key):
            for v in x:
                out[v].append(x)
        return out

    @property
    def nonsingletons(self) -> list[frozenset]:
        return [x for x in self.family if len(x) > 1]

    def covering(self, u: str, v: str) -> int:
        """Sum of y over family members that the edge (u, v) leaves."""
        return sum(self.dual[x] for x in self.chains[u] if v not in x)

    def delegator_dual_total(self) -> int:
        """Dual objective: sum of y over sets of delegators (equals min branching cost)."""
        return sum(y for x, y in self.dual.items() if not any(self.graph.is_sink(v) for v in x))

    def to_dict(self) -> dict:
        return {
            "sets": [
                {"members": sorted(x), "y": self.dual[x]}
                for x in sorted(self.family, key=set_key)
            ],
            "tight_edges": [list(e) for e in sorted(self.tight_edges)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def run_fulkerson(graph: DelegationGraph, rng: random.Random | None = None) -> DualCertificate:
    """Compute the dual certificate of a preprocessed delegation graph.

    By default the component containing the smallest node id is raised first.
    Passing ``rng`` picks uniformly among the admissible components instead;
    the output does not depend on that choice.
    """
    nodes = graph.nodes
    dual: dict[frozenset, int] = {frozenset([s]): 1 for s in graph.sinks}
    chains: dict[str, list[frozenset]] = {v: [] for v in nodes}
    for s in graph.sinks:
        chains[s].append(frozenset([s]))
    tight: set[tuple[str, str]] = set()
    tight_succ: dict[str, list[str]] = {v: [] for v in nodes}
    cost = graph.cost

    def covering(u: str, v: str) -> int:
        total = 0
        for x in chains[u]:
            if v in x:
                break
            total += dual[x]
        return total

    bound = 2 * len(nodes)
    for _ in range(bound + 1):
        comps = scc(nodes, tight_succ)
        candidates = [
            x
            for x in comps
            if not any(graph.is_sink(v) for v in x)
            and not any(w not in x for v in x for w in tight_succ[v])
        ]
        if not candidates:
            break
        x = rng.choice(candidates) if rng is not None else candidates[0]
        cut = [(u, v) for u in sorted(x) for v in graph.successors[u] if v not in x]
        if not cut:
            raise GraphError(f"delegators {sorted(x)} cannot reach a casting voter")
        slack = {e: cost[e] - covering(*e) for e in cut}
        delta = min(slack.values())
        dual[x] = dual.get(x, 0) + delta
        for v in x:
            chains[v].append(x)
        for e, s in slack.items():
            if s == delta:
                tight.add(e)
                tight_succ[e[0]].append(e[1])
    else:
        raise NonTermination(f"more than {bound} dual increases")
    family = tuple(sorted(dual, key=set_key))
    return DualCertificate(graph, family, frozenset(tight), dual)


def is_tight(cert: DualCertificate, edge: tuple[str, str]) -> bool:
    u, v = edge[0], edge[1]
    return cert.covering(u, v) == cert.graph.cost[(u, v)]


def is_laminar(family: Iterable[frozenset]) -> bool:
    sets = list(family)
    for i, a in enumerate(sets):
        for b in sets[i + 1 :]:
            if a & b and not (a <= b or b <= a):
                return False
    return True


def check_branching(graph: DelegationGraph, branching: Iterable[tuple[str, str]]) -> frozenset:
    """Validate a maximum-cardinality branching (one out-edge per delegator, acyclic)."""
    edges = frozenset((e[0], e[1]) for e in branching)
    succ: dict[str, str] = {}
    for u, v in edges:
        if (u, v) not in graph.cost:
            raise NotABranching(f"{(u, v)} is not an edge of the graph")
        if u in succ:
            raise NotABranching(f"{u!r} has two outgoing edges")
        succ[u] = v
    if set(succ) != set(graph.delegators):
        raise NotABranching("not every delegator has an outgoing edge")
    for start in succ:
        seen = {start}
        v = succ[start]
        while v in succ:
            if v in seen:
                raise NotABranching("branching contains a cycle")
            seen.add(v)
            v = succ[v]
    return edges


def check_branching_optimal(cert: DualCertificate, branching: Iterable[tuple[str, str]]) -> bool:
    """Min-cost test: only tight edges, and every delegator set of the family is left once."""
    edges = check_branching(cert.graph, branching)
    if not edges <= cert.tight_edges:
        return False
    for x in cert.family:
        if any(cert.graph.is_sink(v) for v in x):
            continue
        if sum(1 for u, v in edges if u in x and v not in x) != 1:
            return False
    return True
