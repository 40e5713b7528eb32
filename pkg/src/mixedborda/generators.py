"""Seeded random instances for the randomized suites and experiment scripts."""
from __future__ import annotations

import random
from fractions import Fraction

from .chain import AbsorbingChain
from .graph_core import DelegationGraph, Edge, SINK, DELEGATOR, reachable


def _ids(prefix: str, k: int, width: int) -> list[str]:
    return [f"{prefix}{i:0{width}d}" for i in range(k)]


def random_delegation_graph(
    rng: random.Random,
    n_nodes: int | tuple[int, int] = (2, 7),
    costs: tuple[int, ...] = (1, 2, 3),
    edge_prob: float = 0.5,
    n_edges: int | None = None,
    sink_fraction: float = 0.25,
    sink_edge_prob: float | None = None,
    sink_cost_bonus: int = 0,
) -> DelegationGraph:
    """Random delegation graph in which every delegator reaches a sink.

    Each delegator gets out-edges independently, with ``edge_prob`` towards
    delegators and ``sink_edge_prob`` (default half of it) towards sinks, or
    the graph gets exactly ``n_edges`` edges.  A delegator that ends up unable
    to reach a casting voter receives one fallback edge to a random sink.
    ``sink_cost_bonus`` makes edges into sinks dearer (capped at the largest
    palette cost), which favours nested delegation cycles.
    """
    n = n_nodes if isinstance(n_nodes, int) else rng.randint(*n_nodes)
    if n < 2:
        raise ValueError("need at least one delegator and one sink")
    k = max(1 if n < 4 else 2, min(n - 1, round(n * sink_fraction * rng.uniform(0.5, 1.5))))
    width = len(str(n))
    sinks = _ids("s", k, width)
    delegators = _ids("v", n - k, width)
    nodes = delegators + sinks
    pairs: dict[tuple[str, str], int] = {}
    if sink_edge_prob is None:
        sink_edge_prob = edge_prob / 2
    if n_edges is None:
        for u in delegators:
            for w in nodes:
                prob = sink_edge_prob if w in sinks else edge_prob
                if w != u and rng.random() < prob:
                    pairs[(u, w)] = rng.choice(costs)
            if not any(a == u for a, _ in pairs):
                w = rng.choice([x for x in nodes if x != u])
                pairs[(u, w)] = rng.choice(costs)
    else:
        for u in delegators:
            w = rng.choice([x for x in nodes if x != u])
            pairs[(u, w)] = rng.choice(costs)
        capacity = len(delegators) * (n - 1)
        while len(pairs) < min(n_edges, capacity):
            u = rng.choice(delegators)
            w = rng.choice(nodes)
            if w != u:
                pairs.setdefault((u, w), rng.choice(costs))
    top = max(costs)
    for (u, w), c in pairs.items():
        if w in sinks:
            pairs[(u, w)] = min(top, c + sink_cost_bonus)
    roles = {v: DELEGATOR for v in delegators} | {s: SINK for s in sinks}
    graph = DelegationGraph(roles, tuple(Edge(u, w, c) for (u, w), c in pairs.items()))
    sink_set = set(sinks)
    for u in delegators:
        if not (reachable(graph, u) & sink_set):
            pairs[(u, rng.choice(sinks))] = rng.choice(costs)
            graph = DelegationGraph(roles, tuple(Edge(a, b, c) for (a, b), c in pairs.items()))
    return graph


def random_permutation(rng: random.Random, nodes) -> dict[str, str]:
    nodes = list(nodes)
    image = nodes[:]
    rng.shuffle(image)
    return dict(zip(nodes, image))


def random_absorbing_chain(
    rng: random.Random, n_transient: tuple[int, int] = (1, 6), n_absorbing: tuple[int, int] = (1, 3)
) -> AbsorbingChain:
    """Random absorbing chain with rational probabilities.

    Transient state ``i`` always has a move to an absorbing state or to a
    transient state of lower index, so every state is eventually absorbed.
    """
    transient = [f"t{i}" for i in range(rng.randint(*n_transient))]
    absorbing = [f"a{i}" for i in range(rng.randint(*n_absorbing))]
    states = transient + absorbing
    rows = {}
    for i, u in enumerate(transient):
        targets = {v for v in states if v != u and rng.random() < 0.5}
        if not targets & (set(absorbing) | set(transient[:i])):
            targets.add(rng.choice(absorbing + transient[:i]))
        raw = {v: rng.randint(1, 5) for v in sorted(targets)}
        total = sum(raw.values())
        rows[u] = {v: Fraction(w, total) for v, w in raw.items()}
    return AbsorbingChain(tuple(states), rows, tuple(absorbing))


COST_PALETTES = ((1, 2, 3), (1, 2), (1, 1, 2), (1, 1, 1, 2, 3))


def suite_graph(seed: int, n_nodes: tuple[int, int] = (3, 7)) -> DelegationGraph:
    """Instance ``seed`` of the randomized suites.

    The cost palette is drawn per instance; palettes heavy in cost 1 create
    ties between branchings and hence fractional assignments.
    """
    rng = random.Random(seed)
    costs = rng.choice(COST_PALETTES)
    return random_delegation_graph(rng, n_nodes, costs=costs, sink_cost_bonus=rng.choice((0, 0, 1)))
