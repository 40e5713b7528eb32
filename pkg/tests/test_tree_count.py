import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mixedborda.linalg import SingularSystem, det_exact, matmul, solve_exact
from mixedborda.oracle import weighted_tree_total
from mixedborda.tree_count import WeightedDigraph, count_all_roots, count_v_trees, laplacian


def cofactor_det(m):
    if not m:
        return 1
    return sum(
        (-1) ** j * m[0][j] * cofactor_det([row[:j] + row[j + 1:] for row in m[1:]])
        for j in range(len(m))
        if m[0][j]
    )


def parity(perm):
    inversions = sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def bidirected(nodes, w=1):
    return WeightedDigraph(tuple(nodes), {(u, v): w for u in nodes for v in nodes if u != v})


square = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)
)


@st.composite
def weighted_digraphs(draw, max_nodes=6, max_weight=3):
    n = draw(st.integers(1, max_nodes))
    nodes = tuple(f"n{i}" for i in range(n))
    pairs = [(u, v) for u in nodes for v in nodes if u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return WeightedDigraph(nodes, {e: draw(st.integers(1, max_weight)) for e in chosen})


def test_det_examples():
    assert det_exact([]) == 1
    assert det_exact([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert det_exact([[2, 1], [1, 2]]) == 3
    assert det_exact([[0, 1], [1, 0]]) == -1
    assert det_exact([[1, 2], [2, 4]]) == 0


@given(square)
def test_det_matches_cofactor_expansion(m):
    assert det_exact(m) == cofactor_det(m)


@given(square, st.randoms(use_true_random=False))
def test_det_sign_follows_row_permutation_parity(m, rnd):
    perm = list(range(len(m)))
    rnd.shuffle(perm)
    assert det_exact([m[i] for i in perm]) == parity(perm) * det_exact(m)


@given(square)
def test_solve_exact_inverts(m):
    if det_exact(m) == 0:
        with pytest.raises(SingularSystem):
            solve_exact(m, [[1] for _ in m])
        return
    b = [[Fraction(i + 1, 3), -i] for i in range(len(m))]
    x = solve_exact(m, b)
    assert matmul(m, x) == b


def test_laplacian_examples():
    assert laplacian(WeightedDigraph(("a",), {})) == [[0]]
    assert laplacian(WeightedDigraph(("a", "b"), {("a", "b"): 3})) == [[3, -3], [0, 0]]
    tri = laplacian(bidirected("abc"))
    assert [tri[i][i] for i in range(3)] == [2, 2, 2]
    assert all(tri[i][j] == -1 for i in range(3) for j in range(3) if i != j)


def test_tree_count_examples():
    assert count_v_trees(bidirected("abc"), "a") == 3
    w = {(u, v): 1 for u in "abc" for v in "abc" if u != v}
    w[("b", "a")] = 2
    assert count_v_trees(WeightedDigraph(tuple("abc"), w), "a") == 5
    k4 = bidirected("abcd")
    assert all(count_v_trees(k4, v) == 16 for v in k4.nodes)
    assert count_all_roots(k4) == {v: 16 for v in k4.nodes}
    path = WeightedDigraph(("a", "b"), {("a", "b"): 1})
    assert count_v_trees(path, "a") == 0
    assert count_v_trees(WeightedDigraph(("a",), {}), "a") == 1


def test_bridge_weight_scales_count():
    # b's only way to a is the bridge b -> a
    base = {("b", "a"): 1, ("c", "a"): 1, ("c", "b"): 1, ("a", "c"): 1}
    heavy = dict(base)
    heavy[("b", "a")] = 4
    nodes = tuple("abc")
    assert count_v_trees(WeightedDigraph(nodes, heavy), "a") == 4 * count_v_trees(WeightedDigraph(nodes, base), "a")


@given(weighted_digraphs())
def test_matrix_tree_matches_enumeration(g):
    for v in g.nodes:
        assert count_v_trees(g, v) == weighted_tree_total(g.nodes, g.weights, v)


@given(weighted_digraphs())
def test_all_roots_agrees_with_single_root(g):
    assert count_all_roots(g) == {v: count_v_trees(g, v) for v in g.nodes}


@given(weighted_digraphs(max_nodes=5), st.integers(2, 6))
def test_rational_weights(g, k):
    scaled = WeightedDigraph(g.nodes, {e: Fraction(w, k) for e, w in g.weights.items()})
    for v in g.nodes:
        assert count_v_trees(scaled, v) == Fraction(count_v_trees(g, v), k ** (len(g.nodes) - 1))


def test_rejects_bad_weights():
    with pytest.raises(ValueError):
        WeightedDigraph(("a", "b"), {("a", "b"): 0})
    with pytest.raises(ValueError):
        WeightedDigraph(("a",), {("a", "a"): 1})
