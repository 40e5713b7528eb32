import random

import pytest
from hypothesis import given

from conftest import delegation_graphs
from mixedborda.fixtures import two_cycle, impossibility_g2, single_edge
from mixedborda.fulkerson import (
    NotABranching,
    check_branching_optimal,
    is_laminar,
    is_tight,
    run_fulkerson,
)
from mixedborda.oracle import enumerate_branchings

F = frozenset


def test_fig1_certificate():
    cert = run_fulkerson(two_cycle())
    assert set(cert.family) == {F({"v1"}), F({"v2"}), F({"s1"}), F({"s2"}), F({"v1", "v2"})}
    assert all(y == 1 for y in cert.dual.values())
    assert cert.tight_edges == {("v1", "v2"), ("v2", "v1"), ("v1", "s1"), ("v2", "s2")}
    assert cert.delegator_dual_total() == 3
    assert cert.to_dict()["sets"][-1] == {"members": ["v1", "v2"], "y": 1}


def test_single_edge_certificate():
    cert = run_fulkerson(single_edge(3))
    assert set(cert.family) == {F({"v"}), F({"s"})}
    assert cert.dual[F({"v"})] == 3
    assert cert.tight_edges == {("v", "s")}


def test_fig3_g2_certificate():
    cert = run_fulkerson(impossibility_g2())
    assert cert.nonsingletons == []
    assert cert.dual[F({"v1"})] == 1 and cert.dual[F({"v3"})] == 1
    assert cert.tight_edges == {("v1", "v2"), ("v3", "v4")}


def test_tightness_examples():
    assert is_tight(run_fulkerson(two_cycle()), ("v1", "s1"))
    assert not is_tight(run_fulkerson(impossibility_g2()), ("v1", "v3"))


def test_branching_optimality_examples():
    cert = run_fulkerson(two_cycle())
    assert check_branching_optimal(cert, {("v1", "v2"), ("v2", "s2")})
    assert not check_branching_optimal(cert, {("v1", "s1"), ("v2", "s2")})
    assert check_branching_optimal(run_fulkerson(impossibility_g2()), {("v1", "v2"), ("v3", "v4")})
    with pytest.raises(NotABranching):
        check_branching_optimal(cert, {("v1", "v2"), ("v2", "v1")})
    with pytest.raises(NotABranching):
        check_branching_optimal(cert, {("v1", "v2")})


@given(delegation_graphs(n_nodes=(2, 8)))
def test_certificate_invariants(g):
    cert = run_fulkerson(g)
    assert is_laminar(cert.family)
    assert len(cert.family) <= 2 * len(g.nodes) - 1
    assert all(F({v}) in cert.dual for v in g.nodes if g.is_sink(v))
    for x in cert.nonsingletons:
        assert not any(g.is_sink(v) for v in x)
    for e in g.cost:
        assert (e in cert.tight_edges) == is_tight(cert, e)
        assert cert.covering(*e) <= g.cost[e]


@given(delegation_graphs(n_nodes=(2, 8)))
def test_order_independence(g):
    base = run_fulkerson(g)
    rng = random.Random(len(g.edges))
    for _ in range(20):
        assert run_fulkerson(g, rng) == base


@given(delegation_graphs(n_nodes=(2, 8)))
def test_predicate_characterizes_min_cost_branchings(g):
    cert = run_fulkerson(g)
    found = enumerate_branchings(g)
    optimal = set(found.optimal())
    assert {b for b in found.branchings if check_branching_optimal(cert, b)} == optimal
    assert cert.delegator_dual_total() == found.min_cost


def test_laminar_helper():
    assert is_laminar([F("ab"), F("a"), F("c")])
    assert not is_laminar([F("ab"), F("bc")])
