"""Small hand-made delegation graphs used throughout tests and the CLI."""
from __future__ import annotations

from .graph_core import DelegationGraph


def two_cycle() -> DelegationGraph:
    """Two delegators in a first-choice cycle, each with a second choice sink."""
    return DelegationGraph.from_edges(
        [("v1", "v2", 1), ("v2", "v1", 1), ("v1", "s1", 2), ("v2", "s2", 2)]
    )


def impossibility_g1() -> DelegationGraph:
    return DelegationGraph.from_edges(
        [("v1", "v2", 1), ("v2", "v1", 1), ("v1", "v3", 2), ("v2", "v4", 2)]
    )


def impossibility_g2() -> DelegationGraph:
    return DelegationGraph.from_edges(
        [("v1", "v3", 2), ("v3", "v1", 2), ("v1", "v2", 1), ("v3", "v4", 1)]
    )


def impossibility_g3() -> DelegationGraph:
    return DelegationGraph.from_edges([("v1", "v2", 1), ("v1", "v3", 2)], sinks=["v4"])


def nested_cycles() -> DelegationGraph:
    """Best-effort reconstruction of a two-level nested delegation cycle.

    Y1 = {v1, v2, v3} and Y2 = {v4, v5} sit inside X1 = Y1 u Y2; the exits
    to s1 and s2 are dearer than every edge inside X1.
    """
    return DelegationGraph.from_edges(
        [
            ("v1", "v2", 1), ("v2", "v1", 1),
            ("v2", "v3", 2), ("v3", "v2", 2), ("v3", "v1", 2),
            ("v4", "v5", 2), ("v5", "v4", 2),
            ("v2", "v4", 3), ("v3", "v4", 3), ("v5", "v3", 3),
            ("v1", "s1", 4), ("v4", "s2", 4),
        ]
    )


def single_edge(cost: int = 1) -> DelegationGraph:
    return DelegationGraph.from_edges([("v", "s", cost)])


FIXTURES = {
    "two-cycle": two_cycle,
    "symmetric-pair": impossibility_g1,
    "crossed-pair": impossibility_g2,
    "split-choice": impossibility_g3,
    "nested-cycles": nested_cycles,
    "single-edge": single_edge,
}
