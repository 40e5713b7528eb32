"""Weighted in-tree counting with the directed matrix tree theorem.

For a weighted digraph, ``det`` of the Laplacian with the row and column of
``v`` removed is the total weight of all spanning in-trees rooted at ``v``
(every edge pointing towards the root), where a tree weighs the product of
its edge weights.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Hashable, Mapping, Sequence

from .linalg import Number, det_exact, solve_exact

__all__ = [
    "WeightedDigraph",
    "laplacian",
    "count_v_trees",
    "count_all_roots",
    "det_exact",
]


@dataclass(frozen=True, eq=False)
class WeightedDigraph:
    nodes: tuple[Hashable, ...]
    weights: Mapping[tuple[Hashable, Hashable], Number]

    def __post_init__(self):
        known = set(self.nodes)
        for (u, v), w in self.weights.items():
            if u not in known or v not in known:
                raise ValueError(f"edge {(u, v)} leaves the node set")
            if u == v:
                raise ValueError("self-loops carry no tree weight")
            if w <= 0:
                raise ValueError(f"weight on {(u, v)} must be positive")

    @cached_property
    def index(self) -> dict[Hashable, int]:
        return {v: i for i, v in enumerate(self.nodes)}


def laplacian(g: WeightedDigraph) -> list[list[Number]]:
    """``D - A`` with weighted out-degrees on the diagonal."""
    n = len(g.nodes)
    lap: list[list[Number]] = [[0] * n for _ in range(n)]
    for (u, v), w in g.weights.items():
        i, j = g.index[u], g.index[v]
        lap[i][j] -= w
        lap[i][i] += w
    return lap


def _minor(m: Sequence[Sequence[Number]], k: int) -> list[list[Number]]:
    return [row[:k] + row[k + 1 :] for i, row in enumerate(m) if i != k]


def _integer_scale(g: WeightedDigraph) -> int:
    return lcm(*(Fraction(w).denominator for w in g.weights.values())) if g.weights else 1


def count_v_trees(g: WeightedDigraph, v: Hashable) -> Number:
    """Total weight of the spanning in-trees of ``g`` rooted at ``v``.

    Rational weights are handled by clearing denominators: every in-tree has
    ``|V| - 1`` edges, so scaling all weights by ``k`` scales the count by
    ``k ** (|V| - 1)``.
    """
    scale = _integer_scale(g)
    lap = laplacian(g)
    if scale != 1:
        lap = [[int(x * scale) for x in row] for row in lap]
    d = det_exact(_minor(lap, g.index[v]))
    if scale == 1:
        return d
    return Fraction(d, scale ** (len(g.nodes) - 1))


def count_all_roots(g: WeightedDigraph) -> dict[Hashable, Number]:
    """In-tree weight for every root of a strongly connected digraph.

    The root weights form the left null vector of the Laplacian, so one
    determinant plus one exact solve replaces a determinant per root.
    Falls back to per-root determinants when ``g`` is not strongly connected.
    """
    n = len(g.nodes)
    if n <= 2:
        return {v: count_v_trees(g, v) for v in g.nodes}
    first = g.nodes[0]
    base = count_v_trees(g, first)
    if base == 0:
        return {v: count_v_trees(g, v) for v in g.nodes}
    lap = laplacian(g)
    # pi^T L = 0 with pi_0 = base, restricted to columns 1..n-1
    rest = range(1, n)
    a = [[lap[i][j] for i in rest] for j in rest]
    b = [[-base * lap[0][j]] for j in rest]
    sol = solve_exact(a, b)
    out: dict[Hashable, Number] = {first: base}
    integral = isinstance(base, int)
    for k, j in enumerate(rest):
        x = sol[k][0]
        if integral:
            assert x.denominator == 1, "matrix tree cofactor must be integral"
            x = x.numerator
        out[g.nodes[j]] = x
    return out
