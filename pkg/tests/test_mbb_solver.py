from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from conftest import delegation_graphs
from mixedborda.chain import AbsorbingChain, absorbing_probabilities, chain_from_weights, with_self_loop
from mixedborda.fixtures import two_cycle, nested_cycles, impossibility_g1, impossibility_g2, impossibility_g3, single_edge
from mixedborda.fulkerson import run_fulkerson
from mixedborda.generators import random_absorbing_chain
from mixedborda.graph_core import DelegationGraph
from mixedborda.mbb_solver import (
    build_hierarchy,
    contracted_weights,
    count_min_branchings,
    min_branching_cost,
    propagate_counts,
    root_chain,
    solve,
    solve_detailed,
)
from mixedborda.oracle import min_cost_tree_count, oracle_assignment

F = frozenset
HALF = Fraction(1, 2)


def test_fixture_assignments():
    for g in (two_cycle(), impossibility_g1()):
        a = solve(g)
        assert all(p == HALF for _, _, p in a.items())
    a = solve(impossibility_g2())
    assert a["v1", "v2"] == 1 and a["v3", "v4"] == 1
    a = solve(impossibility_g3())
    assert a["v1", "v2"] == 1 and a.cols == ("v2", "v3", "v4")
    assert solve(single_edge(5))["v", "s"] == 1


def test_fixture_cost_and_count():
    assert (min_branching_cost(two_cycle()), count_min_branchings(two_cycle())) == (3, 2)
    assert (min_branching_cost(impossibility_g2()), count_min_branchings(impossibility_g2())) == (2, 1)
    assert (min_branching_cost(single_edge(5)), count_min_branchings(single_edge(5))) == (5, 1)


def test_fig1_hierarchy():
    g = two_cycle()
    h = build_hierarchy(g, run_fulkerson(g))
    y1 = F({"v1", "v2"})
    assert set(h.children[h.root]) == {y1, F({"s1"}), F({"s2"})}
    assert contracted_weights(h, y1) == {(F({'v1'}), F({'v2'})): 1, (F({'v2'}), F({'v1'})): 1}
    propagate_counts(h, y1)
    assert h.t[y1] == {"v1": 1, "v2": 1}
    w = contracted_weights(h, h.root)
    assert w == {(y1, F({"s1"})): 1, (y1, F({"s2"})): 1}
    q = absorbing_probabilities(root_chain(h))
    assert q[y1][F({"s1"})] == HALF


def test_hierarchy_shapes():
    g = impossibility_g2()
    h = build_hierarchy(g, run_fulkerson(g))
    assert h.children[h.root] == tuple(F({v}) for v in ("v1", "v2", "v3", "v4"))
    g = single_edge()
    h = build_hierarchy(g, run_fulkerson(g))
    assert set(h.children[h.root]) == {F({"v"}), F({"s"})}


def test_contracted_weight_sums_parallel_crossings():
    # {a,b} is contracted; both a and b have tight unit edges to s
    g = DelegationGraph.from_edges([("a", "b", 1), ("b", "a", 1), ("a", "s", 2), ("b", "s", 2)])
    r = solve_detailed(g)
    ab = F({"a", "b"})
    assert r.hierarchy.weights[r.hierarchy.root] == {(ab, F({"s"})): 2}
    assert r.num_min_branchings == 2


def test_three_child_cycle_triples_counts():
    g = DelegationGraph.from_edges(
        [(u, v, 1) for u in "abc" for v in "abc" if u != v] + [(u, "s", 2) for u in "abc"]
    )
    h = solve_detailed(g).hierarchy
    x = F("abc")
    assert h.t[x] == {"a": 3, "b": 3, "c": 3}


@given(delegation_graphs())
def test_solve_equals_oracle(g):
    r = solve_detailed(g)
    assert r.assignment == oracle_assignment(g)
    assert r.min_cost == min_branching_cost(g)


@given(delegation_graphs(n_nodes=(2, 8)))
def test_t_values_count_min_cost_trees(g):
    h = solve_detailed(g).hierarchy
    for x, t in h.t.items():
        if 1 < len(x) <= 6:
            for v, tv in t.items():
                assert tv == min_cost_tree_count(g, x, v)


@given(delegation_graphs())
def test_rows_are_stochastic(g):
    a = solve(g)
    for v in a.rows:
        row = a.row(v)
        assert sum(row.values()) == 1 and all(0 <= p <= 1 for p in row.values())


def test_chain_examples():
    one = AbsorbingChain(("n", "s"), {"n": {"s": Fraction(1)}}, ("s",))
    assert absorbing_probabilities(one) == {"n": {"s": 1}}
    lazy = AbsorbingChain(("n", "s"), {"n": {"n": HALF, "s": HALF}}, ("s",))
    assert absorbing_probabilities(lazy) == {"n": {"s": 1}}


@given(st.randoms(use_true_random=False), st.sampled_from([Fraction(1, 4), HALF, Fraction(3, 4)]))
def test_self_loop_invariance(rnd, p):
    chain = random_absorbing_chain(rnd)
    chain.check()
    q = absorbing_probabilities(chain)
    for state in chain.transient:
        assert absorbing_probabilities(with_self_loop(chain, state, p)) == q


@given(delegation_graphs(), st.integers(2, 9))
def test_root_chain_scale_invariance(g, k):
    h = solve_detailed(g).hierarchy
    kids = h.children[h.root]
    absorbing = tuple(y for y in kids if len(y) == 1 and g.is_sink(min(y)))
    w = h.weights[h.root]
    scaled = chain_from_weights(kids, {e: k * x for e, x in w.items()}, absorbing)
    assert absorbing_probabilities(scaled) == absorbing_probabilities(chain_from_weights(kids, w, absorbing))


def test_nested_cycle_reconstruction():
    # every value labeled in the worked example of the contraction step
    g = nested_cycles()
    h = solve_detailed(g).hierarchy
    y1, y2 = F({"v1", "v2", "v3"}), F({"v4", "v5"})
    x1 = y1 | y2
    assert {y1, y2, x1} <= set(h.cert.family)
    assert h.t[y1] == {"v1": 2, "v2": 2, "v3": 1}
    assert h.t[y2] == {"v4": 1, "v5": 1}
    assert h.weights[x1] == {(y1, y2): 3, (y2, y1): 1}
    assert h.tree_weight[x1] == {y1: 1, y2: 3}
    assert h.t[x1] == {"v1": 2, "v2": 2, "v3": 1, "v4": 3, "v5": 3}
    assert h.weights[h.root][(x1, F({"s1"}))] == 2
    assert solve(g) == oracle_assignment(g)
