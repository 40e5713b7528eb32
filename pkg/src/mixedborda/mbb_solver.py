"""Mixed Borda Branching: the uniform mixture over all min-cost branchings.

The dual certificate's laminar family is arranged as a tree.  Working bottom
up, each set ``X`` contracts its children into a weighted digraph ``G_X``
over the tight edges; the weight of a contracted edge ``(Y, Y')`` counts the
min-cost in-trees inside ``Y`` that exit through it.  Matrix-tree counts on
``G_X`` give ``t_X(v)``, the number of min-cost ``v``-trees in ``G[X]``.
At the top, the absorbing Markov chain of ``G_{N u S}`` yields the
assignment exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Mapping

from .chain import AbsorbingChain, absorbing_probabilities, chain_from_weights
from .fulkerson import DualCertificate, run_fulkerson
from .graph_core import Assignment, DelegationGraph, make_assignment, prepare
from .linalg import Number
from .tree_count import WeightedDigraph, count_all_roots, count_v_trees


class ZeroTreeCount(RuntimeError):
    """A contracted digraph had no spanning in-tree; the certificate is corrupt."""


def _order(x: frozenset) -> tuple:
    return (len(x), min(x))


@dataclass(eq=False)
class ContractionHierarchy:
    """Tree over the laminar family plus the root ``N u S``.

    ``t[X][v]`` and ``weights[X]`` are filled in as sets are processed.
    """

    graph: DelegationGraph
    cert: DualCertificate
    root: frozenset
    parent: dict[frozenset, frozenset]
    children: dict[frozenset, tuple[frozenset, ...]]
    crossing: dict[frozenset, tuple[tuple[str, str, frozenset, frozenset], ...]]
    t: dict[frozenset, dict[str, Number]] = field(default_factory=dict)
    weights: dict[frozenset, dict[tuple[frozenset, frozenset], Number]] = field(
        default_factory=dict
    )
    tree_weight: dict[frozenset, dict[frozenset, Number]] = field(default_factory=dict)

    @property
    def sets(self) -> list[frozenset]:
        """All members, children before parents (by size, then smallest id)."""
        return sorted(self.children, key=_order)

    def child_containing(self, x: frozenset, v: str) -> frozenset:
        for y in self.children[x]:
            if v in y:
                return y
        raise KeyError(v)

    def contracted_graph(self, x: frozenset) -> WeightedDigraph:
        return WeightedDigraph(self.children[x], self.weights[x])


def build_hierarchy(graph: DelegationGraph, cert: DualCertificate) -> ContractionHierarchy:
    """Parent/child structure of the family and the tight edges between children."""
    root = frozenset(graph.nodes)
    members = sorted(set(cert.family) | {root}, key=_order)
    parent: dict[frozenset, frozenset] = {}
    children: dict[frozenset, list[frozenset]] = {x: [] for x in members}
    for x in members:
        if x == root:
            continue
        v = min(x)
        chain = cert.chains[v] + [root]
        p = chain[chain.index(x) + 1]
        parent[x] = p
        children[p].append(x)
    # node -> ancestor chain, so the child of X holding u is found by lookup
    holder: dict[tuple[frozenset, str], frozenset] = {}
    for x, kids in children.items():
        for y in kids:
            for u in y:
                holder[(x, u)] = y
    crossing: dict[frozenset, list] = {x: [] for x in members}
    for u, v in sorted(cert.tight_edges):
        # the lowest common set is the first set on u's chain that contains v
        for x in cert.chains[u] + [root]:
            if v in x:
                crossing[x].append((u, v, holder[(x, u)], holder[(x, v)]))
                break
    h = ContractionHierarchy(
        graph,
        cert,
        root,
        parent,
        {x: tuple(sorted(kids, key=min)) for x, kids in children.items()},
        {x: tuple(es) for x, es in crossing.items()},
    )
    for v in graph.nodes:
        h.t[frozenset([v])] = {v: 1}
    return h


def contracted_weights(
    h: ContractionHierarchy,
    x: frozenset,
    ratios: Mapping[tuple[str, str], Number] | None = None,
) -> dict[tuple[frozenset, frozenset], Number]:
    """``w_X(Y, Y')``: sum of ``t_Y(u)`` over tight edges ``(u, v)`` from ``Y`` into ``Y'``.

    ``ratios`` optionally multiplies each edge's term (parametric chains).
    """
    w: dict[tuple[frozenset, frozenset], Number] = {}
    for u, v, y, y2 in h.crossing[x]:
        term = h.t[y][u]
        if ratios is not None:
            term = term * ratios[(u, v)]
        w[(y, y2)] = w.get((y, y2), 0) + term
    h.weights[x] = w
    return w


def propagate_counts(h: ContractionHierarchy, x: frozenset) -> dict[str, Number]:
    """``t_X(v) = w_X(T_Y(G_X)) * t_Y(v)`` for every child ``Y`` and ``v`` in ``Y``."""
    g = h.contracted_graph(x)
    counts = count_all_roots(g)
    t: dict[str, Number] = {}
    for y in h.children[x]:
        c = counts[y]
        if c == 0:
            raise ZeroTreeCount(f"no spanning in-tree rooted at {sorted(y)} inside {sorted(x)}")
        for v, tv in h.t[y].items():
            t[v] = c * tv
    h.tree_weight[x] = counts
    h.t[x] = t
    return t


def process_hierarchy(
    h: ContractionHierarchy, ratios: Mapping[tuple[str, str], Number] | None = None
) -> ContractionHierarchy:
    for x in h.sets:
        if len(x) == 1:
            continue
        contracted_weights(h, x, ratios)
        if x != h.root:
            propagate_counts(h, x)
    if len(h.root) == 1:
        h.weights[h.root] = {}
    return h


def root_chain(h: ContractionHierarchy) -> AbsorbingChain:
    kids = h.children[h.root]
    absorbing = tuple(y for y in kids if len(y) == 1 and h.graph.is_sink(min(y)))
    return chain_from_weights(kids, h.weights[h.root], absorbing)


@dataclass(frozen=True, eq=False)
class MBBResult:
    assignment: Assignment
    hierarchy: ContractionHierarchy
    min_cost: int
    num_min_branchings: Number

    @property
    def cert(self) -> DualCertificate:
        return self.hierarchy.cert

    def to_dict(self) -> dict:
        from .graph_core import format_fraction

        return {
            "assignment": self.assignment.to_dict(),
            "weights": {s: format_fraction(w) for s, w in self.assignment.weights().items()},
            "removed": list(self.assignment.removed),
            "min_cost": self.min_cost,
            "num_min_branchings": format_fraction(self.num_min_branchings),
        }


def _assignment_from_root(
    h: ContractionHierarchy, removed: tuple[str, ...]
) -> Assignment:
    graph = h.graph
    q = absorbing_probabilities(root_chain(h)) if graph.delegators else {}
    entries: dict[str, dict[str, Fraction]] = {}
    for v in graph.delegators:
        y = h.child_containing(h.root, v)
        entries[v] = {min(s): p for s, p in q[y].items()}
    return make_assignment(graph.delegators, graph.sinks, entries, removed)


def branching_weight_total(h: ContractionHierarchy) -> Number:
    """Weighted number of branchings of the root contracted graph.

    Adds a super-root fed by every casting voter, so its in-trees are exactly
    the branchings of ``G_{N u S}``.
    """
    kids = h.children[h.root]
    top = "__root__"
    w: dict[tuple[Hashable, Hashable], Number] = dict(h.weights[h.root])
    for y in kids:
        if len(y) == 1 and h.graph.is_sink(min(y)):
            w[(y, top)] = 1
    return count_v_trees(WeightedDigraph(tuple(kids) + (top,), w), top)


def solve_detailed(
    graph: DelegationGraph, ratios: Mapping[tuple[str, str], Number] | None = None
) -> MBBResult:
    graph, removed = prepare(graph)
    cert = run_fulkerson(graph)
    h = process_hierarchy(build_hierarchy(graph, cert), ratios)
    return MBBResult(
        _assignment_from_root(h, removed),
        h,
        cert.delegator_dual_total(),
        branching_weight_total(h),
    )


def solve(graph: DelegationGraph) -> Assignment:
    """Mixed Borda Branching assignment, exact."""
    return solve_detailed(graph).assignment


def min_branching_cost(graph: DelegationGraph) -> int:
    graph, _ = prepare(graph)
    return run_fulkerson(graph).delegator_dual_total()


def count_min_branchings(graph: DelegationGraph) -> int:
    return solve_detailed(graph).num_min_branchings
