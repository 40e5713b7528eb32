from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from conftest import delegation_graphs
from mixedborda.axioms import (
    FAIL,
    PASS,
    VACUOUS,
    check_anonymity,
    check_confluence_factorization,
    check_copy_robustness,
    check_guru_participation,
    check_nonfractional_confluence,
    check_sink_inedge_monotonicity,
    copy_robustness_sides,
    impossibility_demo,
)
from mixedborda.fixtures import two_cycle, impossibility_g1, single_edge
from mixedborda.generators import random_permutation
from mixedborda.graph_core import DelegationGraph, make_assignment, remove_out_edges
from mixedborda.mbb_solver import solve


def test_anonymity_examples():
    sigma = {"v1": "v2", "v2": "v1", "v3": "v4", "v4": "v3"}
    assert check_anonymity(impossibility_g1(), sigma).status == PASS
    assert check_anonymity(two_cycle(), {v: v for v in two_cycle().nodes}).status == PASS


def test_copy_robustness_fig1():
    g = two_cycle()
    lhs, rhs = copy_robustness_sides(solve(g), solve(remove_out_edges(g, "v2")), "v2")
    assert lhs == rhs == 4
    assert check_copy_robustness(g, "v2").status == PASS
    assert check_copy_robustness(single_edge(), "v").status == PASS


def test_copy_robustness_detects_a_bad_rule():
    # sends everything to one sink, but which one depends on the sink count
    def erratic(g):
        target = g.sinks[0] if len(g.sinks) == 2 else g.sinks[1]
        return make_assignment(g.delegators, g.sinks, {v: {target: Fraction(1)} for v in g.delegators})

    report = check_copy_robustness(two_cycle(), "v2", rule=erratic)
    assert report.status == FAIL
    assert report.witness["lhs"] != report.witness["rhs"]


def test_guru_participation_example():
    g = DelegationGraph.from_edges([("v1", "s1", 1), ("v1", "s2", 2), ("v2", "v1", 1)])
    report = check_guru_participation(g, "v2")
    assert report.status == PASS and report.witness["offending_sinks"] == []


def test_sink_monotonicity_fig1():
    assert check_sink_inedge_monotonicity(two_cycle(), "s1").status == PASS
    g = DelegationGraph.from_edges([("v", "s", 1)], sinks=["t"])
    assert check_sink_inedge_monotonicity(g, "t").status == PASS


def test_confluence_trivial_cases():
    # every walk from u passes v
    g = DelegationGraph.from_edges([("u", "v", 1), ("v", "s", 1), ("v", "t", 1)])
    r = check_confluence_factorization(g, "u", "v")
    assert r.status == PASS and r.witness["hit"] == 1
    # v unreachable from u
    g = DelegationGraph.from_edges([("u", "s", 1), ("v", "t", 1)])
    r = check_confluence_factorization(g, "u", "v")
    assert r.status == PASS and r.witness["hit"] == 0
    assert check_confluence_factorization(two_cycle(), "v1", "v2").status == VACUOUS


def test_nonfractional_confluence_examples():
    g1 = impossibility_g1()
    assert check_nonfractional_confluence(g1, {"v1": "v3", "v2": "v4"})
    assert not check_nonfractional_confluence(g1, {"v1": "v4", "v2": "v3"})
    assert check_nonfractional_confluence(two_cycle(), {"v1": "s2", "v2": "s2"})


def test_impossibility():
    report = impossibility_demo()
    assert len(report.rows) == 32 and report.survivors == 0
    by_choice = {
        tuple(tuple(sorted(c.items())) for c in r.choices): r.failures for r in report.rows
    }
    key = (
        (("v1", "v3"), ("v2", "v4")),
        (("v1", "v2"), ("v3", "v4")),
        (("v1", "v3"),),
    )
    assert "copy-robustness on G2->G3" in by_choice[key]
    assert any(
        "anonymity on G1" in r.failures for r in report.rows if r.choices[0] == {"v1": "v3", "v2": "v3"}
    )
    assert "0 rules survive out of 32" in report.table()


@given(delegation_graphs(n_nodes=(2, 8)), st.randoms(use_true_random=False))
def test_axioms_hold_on_random_graphs(g, rnd):
    assert check_anonymity(g, random_permutation(rnd, g.nodes)).passed
    for v in g.delegators:
        assert check_copy_robustness(g, v).passed
        assert check_guru_participation(g, v).passed
    for s in g.sinks:
        assert check_sink_inedge_monotonicity(g, s).passed
    for u in g.delegators:
        for v in g.delegators:
            if u != v:
                assert check_confluence_factorization(g, u, v).passed
