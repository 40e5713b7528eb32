"""Absorbing Markov chains with exact rational transition probabilities."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Mapping

from .linalg import Number, SingularSystem, solve_exact

__all__ = [
    "AbsorbingChain",
    "SingularSystem",
    "absorbing_probabilities",
    "chain_from_weights",
    "with_self_loop",
]


@dataclass(frozen=True, eq=False)
class AbsorbingChain:
    """``transitions[u][v]`` is the probability of moving from ``u`` to ``v``.

    Absorbing states have no entry (their identity row is implicit).
    """

    states: tuple[Hashable, ...]
    transitions: Mapping[Hashable, Mapping[Hashable, Fraction]]
    absorbing: tuple[Hashable, ...]

    @property
    def transient(self) -> tuple[Hashable, ...]:
        keep = set(self.absorbing)
        return tuple(s for s in self.states if s not in keep)

    def row_sums(self) -> dict[Hashable, Fraction]:
        return {u: sum(self.transitions.get(u, {}).values(), Fraction(0)) for u in self.transient}

    def check(self) -> None:
        for u, total in self.row_sums().items():
            if total != 1:
                raise ValueError(f"row of {u!r} sums to {total}, not 1")
            if any(p < 0 for p in self.transitions[u].values()):
                raise ValueError(f"negative transition probability out of {u!r}")


def chain_from_weights(
    states: tuple[Hashable, ...],
    weights: Mapping[tuple[Hashable, Hashable], Number],
    absorbing: tuple[Hashable, ...],
) -> AbsorbingChain:
    """Markov chain of a weighted digraph, normalised by the largest out-degree.

    Transient state ``u`` moves along ``(u, v)`` with probability
    ``w(u, v) / Delta`` and stays put with the remaining probability.
    """
    absorbing_set = set(absorbing)
    degree: dict[Hashable, Number] = {s: 0 for s in states if s not in absorbing_set}
    for (u, v), w in weights.items():
        if u in absorbing_set:
            raise ValueError(f"absorbing state {u!r} has an outgoing edge")
        degree[u] += w
    delta = max(degree.values(), default=1) or 1
    out: dict[Hashable, dict[Hashable, Fraction]] = {u: {} for u in degree}
    for (u, v), w in weights.items():
        out[u][v] = Fraction(w) / delta
    for u, row in out.items():
        stay = 1 - Fraction(degree[u]) / delta
        if stay:
            row[u] = row.get(u, Fraction(0)) + stay
    return AbsorbingChain(tuple(states), out, tuple(absorbing))


def with_self_loop(chain: AbsorbingChain, state: Hashable, p: Fraction) -> AbsorbingChain:
    """Add probability ``p`` of staying at transient ``state``, scaling the rest by ``1 - p``."""
    if state in chain.absorbing:
        raise ValueError("self-loops are only added to transient states")
    p = Fraction(p)
    rows = {u: dict(r) for u, r in chain.transitions.items()}
    row = {v: (1 - p) * q for v, q in rows[state].items()}
    row[state] = row.get(state, Fraction(0)) + p
    rows[state] = row
    return AbsorbingChain(chain.states, rows, chain.absorbing)


def absorbing_probabilities(chain: AbsorbingChain) -> dict[Hashable, dict[Hashable, Fraction]]:
    """Absorption probabilities ``(I - D)^{-1} C`` for every transient state.

    Raises :class:`SingularSystem` if some transient state cannot reach an
    absorbing state.
    """
    transient = chain.transient
    absorbing = chain.absorbing
    t_index = {u: i for i, u in enumerate(transient)}
    a_index = {s: j for j, s in enumerate(absorbing)}
    n, k = len(transient), len(absorbing)
    if n == 0:
        return {}
    lhs = [[Fraction(0)] * n for _ in range(n)]
    rhs = [[Fraction(0)] * k for _ in range(n)]
    for u in transient:
        i = t_index[u]
        lhs[i][i] += 1
        for v, p in chain.transitions.get(u, {}).items():
            if v in t_index:
                lhs[i][t_index[v]] -= p
            else:
                rhs[i][a_index[v]] += p
    try:
        sol = solve_exact(lhs, rhs)
    except SingularSystem as exc:
        raise SingularSystem("some transient state cannot reach an absorbing state") from exc
    return {u: {s: sol[t_index[u]][a_index[s]] for s in absorbing} for u in transient}
