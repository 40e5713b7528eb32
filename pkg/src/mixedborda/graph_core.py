"""Delegation graphs, fractional assignments and the edits used by the axioms.

A delegation graph is a digraph over voters.  Delegators (``N``) rank the
voters they trust through positive integer edge costs; sinks (``S``) are the
casting voters and have no outgoing edges.  Node ids are opaque strings and
every internal ordering sorts them lexicographically.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, NamedTuple

DELEGATOR = "delegator"
SINK = "sink"
ROLES = (DELEGATOR, SINK)


class GraphError(ValueError):
    """Base class for malformed or unusable delegation graphs."""


class InvalidGraph(GraphError):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("; ".join(str(v) for v in report.violations))


class AllIsolated(GraphError):
    """Raised when the graph has no casting voter at all."""


class NoSuchNode(GraphError, KeyError):
    pass


class NotABijection(GraphError):
    pass


class Edge(NamedTuple):
    source: str
    target: str
    cost: int


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    node: str | None = None
    edge: tuple[str, str] | None = None

    def __str__(self) -> str:
        return self.message


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def structural(self) -> tuple[Violation, ...]:
        """Violations that isolated-node removal cannot repair."""
        return tuple(v for v in self.violations if v.kind != "isolated")


@dataclass(frozen=True, eq=False)
class DelegationGraph:
    """Immutable delegation graph.

    ``roles`` maps node id to ``"delegator"`` or ``"sink"``; ``edges`` keeps
    the input order, which may contain violations (see :func:`validate`).
    """

    roles: Mapping[str, str]
    edges: tuple[Edge, ...]

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[str, str, int]],
        sinks: Iterable[str] = (),
        delegators: Iterable[str] = (),
    ) -> DelegationGraph:
        """Build a graph, tagging nodes without out-edges as sinks."""
        edges = tuple(Edge(str(u), str(v), int(c)) for u, v, c in edges)
        tails = {e.source for e in edges}
        nodes = set(sinks) | set(delegators) | tails | {e.target for e in edges}
        roles = {
            v: (DELEGATOR if v in tails or v in set(delegators) else SINK)
            for v in nodes
        }
        return cls(roles, edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DelegationGraph):
            return NotImplemented
        return dict(self.roles) == dict(other.roles) and sorted(self.edges) == sorted(
            other.edges
        )

    def __repr__(self) -> str:
        return (
            f"DelegationGraph(N={list(self.delegators)}, S={list(self.sinks)}, "
            f"edges={sorted(self.edges)})"
        )

    @cached_property
    def nodes(self) -> tuple[str, ...]:
        return tuple(sorted(self.roles))

    @cached_property
    def delegators(self) -> tuple[str, ...]:
        return tuple(v for v in self.nodes if self.roles[v] == DELEGATOR)

    @cached_property
    def sinks(self) -> tuple[str, ...]:
        return tuple(v for v in self.nodes if self.roles[v] == SINK)

    @cached_property
    def cost(self) -> dict[tuple[str, str], int]:
        return {(e.source, e.target): e.cost for e in self.edges}

    @cached_property
    def out_edges(self) -> dict[str, tuple[Edge, ...]]:
        out: dict[str, list[Edge]] = {v: [] for v in self.nodes}
        for e in sorted(self.edges):
            out.setdefault(e.source, []).append(e)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def successors(self) -> dict[str, tuple[str, ...]]:
        return {v: tuple(e.target for e in es) for v, es in self.out_edges.items()}

    def is_sink(self, v: str) -> bool:
        return self.roles[v] == SINK

    def to_dict(self) -> dict:
        return {
            "nodes": [{"id": v, "role": self.roles[v]} for v in self.nodes],
            "edges": [
                {"from": e.source, "to": e.target, "cost": e.cost}
                for e in sorted(self.edges)
            ],
        }


# -- fractional assignments -------------------------------------------------


@dataclass(frozen=True)
class Assignment:
    """Exact fractional assignment of delegators to casting voters.

    ``entries[v][s]`` is the share of delegator ``v``'s weight that ends at
    sink ``s``; missing entries are zero.
    """

    rows: tuple[str, ...]
    cols: tuple[str, ...]
    entries: Mapping[str, Mapping[str, Fraction]]
    removed: tuple[str, ...] = ()

    def __getitem__(self, key: tuple[str, str]) -> Fraction:
        v, s = key
        if v not in self.entries or s not in self.cols:
            raise KeyError(key)
        return self.entries[v].get(s, Fraction(0))

    def row(self, v: str) -> dict[str, Fraction]:
        return {s: self[v, s] for s in self.cols}

    def items(self) -> Iterator[tuple[str, str, Fraction]]:
        for v in self.rows:
            for s in self.cols:
                yield v, s, self[v, s]

    def representatives(self, v: str) -> frozenset[str]:
        return frozenset(s for s in self.cols if self[v, s] > 0)

    def weights(self) -> dict[str, Fraction]:
        """Voting weight of every casting voter: one plus all delegated shares."""
        return {
            s: 1 + sum((self[v, s] for v in self.rows), Fraction(0)) for s in self.cols
        }

    def max_deviation(self, other: Assignment) -> Fraction:
        if set(self.rows) != set(other.rows) or set(self.cols) != set(other.cols):
            raise ValueError("assignments are over different voters")
        return max((abs(a - other[v, s]) for v, s, a in self.items()), default=Fraction(0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Assignment):
            return NotImplemented
        return (
            set(self.rows) == set(other.rows)
            and set(self.cols) == set(other.cols)
            and all(a == other[v, s] for v, s, a in self.items())
        )

    def to_dict(self) -> dict:
        return {
            v: {s: format_fraction(self[v, s]) for s in self.cols} for v in self.rows
        }


def make_assignment(
    rows: Iterable[str],
    cols: Iterable[str],
    entries: Mapping[str, Mapping[str, Fraction]],
    removed: Iterable[str] = (),
) -> Assignment:
    rows, cols = tuple(sorted(rows)), tuple(sorted(cols))
    clean = {
        v: {s: Fraction(x) for s, x in entries.get(v, {}).items() if x != 0}
        for v in rows
    }
    return Assignment(rows, cols, clean, tuple(sorted(removed)))


def format_fraction(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str | int) -> Fraction:
    return Fraction(text)


# -- validation and preprocessing ------------------------------------------


def validate(graph: DelegationGraph) -> ValidationReport:
    """Check every delegation-graph invariant and report each violation."""
    found: list[Violation] = []
    seen: set[tuple[str, str]] = set()
    for e in graph.edges:
        key = (e.source, e.target)
        for end in key:
            if end not in graph.roles:
                found.append(Violation("unknown-node", f"edge {key} uses unknown node {end!r}", end, key))
        if e.source == e.target:
            found.append(Violation("self-loop", f"self-loop on {e.source!r}", e.source, key))
        if key in seen:
            found.append(Violation("parallel-edge", f"parallel edge {key}", edge=key))
        seen.add(key)
        if e.cost < 1:
            found.append(Violation("cost", f"cost < 1 on edge {key} (cost {e.cost})", edge=key))
    for v, role in sorted(graph.roles.items()):
        if role not in ROLES:
            found.append(Violation("role", f"node {v!r} has unknown role {role!r}", v))
    tails = {e.source for e in graph.edges}
    for v in graph.nodes:
        if graph.roles[v] == SINK and v in tails:
            found.append(Violation("sink-out-edge", f"sink {v!r} has an outgoing edge", v))
    if not any(v.kind == "unknown-node" for v in found):
        reach = _reaches_sink(graph)
        for v in graph.delegators:
            if v not in reach:
                found.append(Violation("isolated", f"delegator {v!r} reaches no sink", v))
    return ValidationReport(tuple(found))


def require_valid(graph: DelegationGraph) -> None:
    """Raise :class:`InvalidGraph` on violations preprocessing cannot repair."""
    report = validate(graph)
    if report.structural:
        raise InvalidGraph(ValidationReport(report.structural))


def _reaches_sink(graph: DelegationGraph) -> set[str]:
    preds: dict[str, list[str]] = {v: [] for v in graph.nodes}
    for e in graph.edges:
        if e.target in preds:
            preds[e.target].append(e.source)
    stack = [s for s in graph.sinks]
    seen = set(stack)
    while stack:
        v = stack.pop()
        for u in preds[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return seen


def preprocess_isolated(graph: DelegationGraph) -> tuple[DelegationGraph, tuple[str, ...]]:
    """Drop delegators that cannot reach any casting voter.

    A single backward search from the sinks already yields the fixpoint of
    repeated removal.  Returns the cleaned graph and the removed ids.
    """
    if not graph.sinks:
        raise AllIsolated("graph has no casting voter")
    keep = _reaches_sink(graph)
    removed = tuple(v for v in graph.delegators if v not in keep)
    if not removed:
        return graph, ()
    roles = {v: r for v, r in graph.roles.items() if v in keep}
    edges = tuple(e for e in graph.edges if e.source in keep and e.target in keep)
    return DelegationGraph(roles, edges), removed


def prepare(graph: DelegationGraph) -> tuple[DelegationGraph, tuple[str, ...]]:
    require_valid(graph)
    return preprocess_isolated(graph)


# -- strongly connected components ------------------------------------------


def scc(nodes: Iterable[str], successors: Mapping[str, Iterable[str]]) -> list[frozenset[str]]:
    """Tarjan's algorithm, iterative; components sorted by smallest member."""
    nodes = sorted(nodes)
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    comps: list[frozenset[str]] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(sorted(successors.get(root, ()))))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(successors.get(w, ())))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(frozenset(comp))
    return sorted(comps, key=min)


def graph_scc(graph: DelegationGraph, edges: Iterable[tuple[str, str]] | None = None) -> list[frozenset[str]]:
    """SCCs of ``graph``, optionally restricted to a subset of its edges."""
    succ: dict[str, list[str]] = {v: [] for v in graph.nodes}
    pairs = [(e.source, e.target) for e in graph.edges] if edges is None else edges
    for u, v in pairs:
        succ[u].append(v)
    return scc(graph.nodes, succ)


def reachable(graph: DelegationGraph, start: str) -> set[str]:
    seen = {start}
    stack = [start]
    while stack:
        for w in graph.successors.get(stack.pop(), ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


# -- edits ------------------------------------------------------------------


def apply_permutation(graph: DelegationGraph, sigma: Mapping[str, str]) -> DelegationGraph:
    """Relabel nodes by the bijection ``sigma``; roles and costs follow nodes."""
    nodes = set(graph.nodes)
    if set(sigma) != nodes or set(sigma.values()) != nodes:
        raise NotABijection("sigma must be a bijection on the node set")
    roles = {sigma[v]: r for v, r in graph.roles.items()}
    edges = tuple(Edge(sigma[e.source], sigma[e.target], e.cost) for e in graph.edges)
    return DelegationGraph(roles, edges)


def invert(sigma: Mapping[str, str]) -> dict[str, str]:
    return {b: a for a, b in sigma.items()}


def _require(graph: DelegationGraph, v: str, role: str) -> None:
    if graph.roles.get(v) != role:
        raise NoSuchNode(f"{v!r} is not a {role} of the graph")


def remove_out_edges(graph: DelegationGraph, v: str) -> DelegationGraph:
    """Turn delegator ``v`` into a casting voter."""
    _require(graph, v, DELEGATOR)
    roles = dict(graph.roles)
    roles[v] = SINK
    edges = tuple(e for e in graph.edges if e.source != v)
    return preprocess_isolated(DelegationGraph(roles, edges))[0]


def remove_node(graph: DelegationGraph, v: str) -> DelegationGraph:
    """Delete delegator ``v`` and every voter left without a casting voter."""
    _require(graph, v, DELEGATOR)
    roles = {u: r for u, r in graph.roles.items() if u != v}
    edges = tuple(e for e in graph.edges if v not in (e.source, e.target))
    return preprocess_isolated(DelegationGraph(roles, edges))[0]


def remove_in_edges_of_sink(graph: DelegationGraph, s: str) -> DelegationGraph:
    _require(graph, s, SINK)
    edges = tuple(e for e in graph.edges if e.target != s)
    return preprocess_isolated(DelegationGraph(dict(graph.roles), edges))[0]


def voting_weights(assignment: Assignment) -> dict[str, Fraction]:
    return assignment.weights()


# -- file format ------------------------------------------------------------


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


def graph_from_dict(data: Mapping) -> DelegationGraph:
    try:
        roles: dict[str, str] = {}
        for node in data["nodes"]:
            nid = str(node["id"])
            if nid in roles:
                raise ParseError(f"duplicate node id {nid!r}")
            roles[nid] = node.get("role", DELEGATOR)
        edges = tuple(
            Edge(str(e["from"]), str(e["to"]), _as_int(e["cost"])) for e in data["edges"]
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"graph schema violation: {exc!r}") from exc
    return DelegationGraph(roles, edges)


def _as_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"cost must be an integer, got {x!r}")
    return x


def loads_json(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc


def load_graph(path) -> DelegationGraph:
    with open(path, encoding="utf-8") as fh:
        return graph_from_dict(loads_json(fh.read()))


def dumps_graph(graph: DelegationGraph) -> str:
    return json.dumps(graph.to_dict(), indent=2, sort_keys=False) + "\n"


def save_graph(graph: DelegationGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_graph(graph))
