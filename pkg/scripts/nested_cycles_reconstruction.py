"""Search edge costs for the nested-cycle worked example.

The drawing fixes the edges of X1 = {v1..v5} and the labels
t_Y1 = (2, 2, 1), t_Y2 = (1, 1), w(Y1->Y2) = 3, w(Y2->Y1) = 1 and
t_X1 = (2, 2, 1, 3, 3), but not every edge cost.  Edges are grouped by
line style; every cost combination is tried and the matches printed.
"""
from __future__ import annotations

import itertools

from mixedborda.graph_core import DelegationGraph
from mixedborda.mbb_solver import solve_detailed

F = frozenset
GROUPS = {
    "v1<->v2": [("v1", "v2"), ("v2", "v1")],
    "Y1 other": [("v2", "v3"), ("v3", "v2"), ("v3", "v1")],
    "v4<->v5": [("v4", "v5"), ("v5", "v4")],
    "crossing": [("v2", "v4"), ("v3", "v4"), ("v5", "v3")],
    "exits": [("v1", "s1"), ("v4", "s2")],
}
Y1, Y2 = F({"v1", "v2", "v3"}), F({"v4", "v5"})
X1 = Y1 | Y2


def matches(costs: dict[str, int]) -> bool:
    g = DelegationGraph.from_edges(
        [(u, v, costs[k]) for k, es in GROUPS.items() for u, v in es]
    )
    h = solve_detailed(g).hierarchy
    if not {Y1, Y2, X1} <= set(h.cert.family):
        return False
    return (
        h.t[Y1] == {"v1": 2, "v2": 2, "v3": 1}
        and h.t[Y2] == {"v4": 1, "v5": 1}
        and h.weights[X1] == {(Y1, Y2): 3, (Y2, Y1): 1}
        and h.t[X1] == {"v1": 2, "v2": 2, "v3": 1, "v4": 3, "v5": 3}
    )


def main() -> None:
    found = 0
    total = 0
    for combo in itertools.product(range(1, 6), repeat=len(GROUPS)):
        total += 1
        costs = dict(zip(GROUPS, combo))
        if matches(costs):
            found += 1
            print("match:", costs)
    print(f"{found} of {total} cost combinations reproduce every label")


if __name__ == "__main__":
    main()
