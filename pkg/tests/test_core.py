import random
from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fracdecomp.core import (
    Graph,
    ScaledCopy,
    WeightedGraph,
    complete_graph,
    complete_multipartite_graph,
    cycle_graph,
    degree_gcd,
    disjoint_union,
    is_divisible,
    is_scaled_copy,
    path_graph,
    random_graph_min_degree,
    total_weight,
    verify_fractional_decomposition,
    weighted_triangle,
)

pos_rationals = st.fractions(min_value=Fraction(1, 30), max_value=50, max_denominator=30)


def test_graph_rejects_loops_and_out_of_range():
    with pytest.raises(ValueError):
        Graph(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 3)])


def test_graph_normalises_edge_orientation():
    assert Graph(3, [(2, 0)]) == Graph(3, [(0, 2)])


def test_weighted_graph_rejects_floats_and_nonpositive():
    with pytest.raises(TypeError):
        WeightedGraph(2, {(0, 1): 0.5})
    with pytest.raises(ValueError):
        WeightedGraph(2, {(0, 1): 0})
    with pytest.raises(ValueError):
        WeightedGraph(2, {(0, 1): -1})


def test_named_graph_sizes():
    assert cycle_graph(5).num_edges() == 5
    assert path_graph(4).num_edges() == 3
    assert complete_graph(6).num_edges() == 15
    K = complete_multipartite_graph(2, 1, 1)
    assert K.num_edges() == 5 and not K.has_edge(0, 1)


def test_total_weight_of_triangle():
    assert total_weight(weighted_triangle(3, 1, 1)) == 5


@pytest.mark.parametrize(
    "G, F, expected",
    [
        # 20 edges, all degrees 4; C5 has 5 edges, gcd 2
        (complete_graph(5).as_weighted().underlying, cycle_graph(5), True),
        # 21 edges is not a multiple of 5
        (complete_graph(7), cycle_graph(5), False),
        # K6: 15 edges (multiple of 3), degrees 5 and gcd(K3) = 2 does not divide 5
        (complete_graph(6), complete_graph(3), False),
        (complete_graph(7), complete_graph(3), True),
    ],
)
def test_divisibility_cases(G, F, expected):
    m_ok = G.num_edges() % F.num_edges() == 0
    d_ok = gcd(*G.degrees()) % gcd(*F.degrees()) == 0
    assert (m_ok and d_ok) == expected
    assert is_divisible(G, F) == expected


def test_divisibility_needs_edges_in_template():
    with pytest.raises(ValueError):
        is_divisible(complete_graph(4), Graph(3))


@given(st.integers(0, 10_000))
def test_divisibility_is_transitive(seed):
    rng = random.Random(seed)
    graphs = [random_graph_min_degree(rng.randint(3, 9), 1, rng) for _ in range(3)]
    graphs += [cycle_graph(rng.choice([3, 4, 6])), complete_graph(rng.randint(2, 4))]
    for a in graphs:
        for b in graphs:
            for c in graphs:
                if is_divisible(a, b) and is_divisible(b, c):
                    assert is_divisible(a, c)


def test_degree_gcd():
    assert degree_gcd(cycle_graph(7)) == 2
    assert degree_gcd(Graph(4)) == 0


def test_scaled_copy_of_triangle():
    assert is_scaled_copy(weighted_triangle(2, 2, 6), weighted_triangle(3, 1, 1)) == 2
    assert is_scaled_copy(weighted_triangle(2, 2, 5), weighted_triangle(3, 1, 1)) is None


def test_scaled_copy_respects_structure():
    # P4 with weights 1,2,1 versus 2,1,1: same multiset, different placement
    a = WeightedGraph(4, {(0, 1): 1, (1, 2): 2, (2, 3): 1})
    b = WeightedGraph(4, {(0, 1): 2, (1, 2): 1, (2, 3): 1})
    assert is_scaled_copy(a, b) is None
    assert is_scaled_copy(a, a) == 1


def test_scaled_copy_different_shapes():
    assert is_scaled_copy(cycle_graph(4), complete_multipartite_graph(1, 3).as_weighted()) is None
    assert is_scaled_copy(cycle_graph(4), path_graph(5)) is None


@given(st.integers(3, 7), st.data())
def test_scaled_copy_inverse(n, data):
    pairs = list(combinations(range(n), 2))
    chosen = data.draw(st.lists(st.sampled_from(pairs), min_size=1, unique=True))
    ws = {e: data.draw(pos_rationals) for e in chosen}
    W = WeightedGraph(n, ws)
    perm = data.draw(st.permutations(range(n)))
    alpha = data.draw(pos_rationals)
    W2 = WeightedGraph(n, {(perm[u], perm[v]): alpha * w for (u, v), w in ws.items()})
    assert is_scaled_copy(W2, W) == alpha
    assert is_scaled_copy(W, W2) == 1 / alpha


def test_scaled_copy_validation():
    T = weighted_triangle(1, 1, 1)
    with pytest.raises(ValueError):
        ScaledCopy(T, (0, 0, 1), Fraction(1))
    with pytest.raises(ValueError):
        ScaledCopy(T, (0, 1), Fraction(1))
    with pytest.raises(ValueError):
        ScaledCopy(T, (0, 1, 2), Fraction(0))


def test_verify_exact_leftover_violation():
    K4 = complete_graph(4)
    T = weighted_triangle(1, 1, 1)
    half = Fraction(1, 2)
    tris = list(combinations(range(4), 3))
    exact = [ScaledCopy(T, t, half) for t in tris]
    assert verify_fractional_decomposition(K4, exact).status == "exact"

    partial = exact[:3]
    v = verify_fractional_decomposition(K4, partial)
    assert v.status == "leftover"
    # the triangle 123 is missing: its three edges keep 1/2 each
    assert v.leftover.weights == {(1, 2): half, (1, 3): half, (2, 3): half}

    over = exact + [ScaledCopy(T, (0, 1, 2), Fraction(1, 4))]
    v = verify_fractional_decomposition(K4, over)
    assert v.status == "violation"
    assert v.first_violation == ((0, 1), Fraction(1, 4))
    assert [e for e, _ in v.violations] == [(0, 1), (0, 2), (1, 2)]


def test_verify_rejects_non_host_edges():
    with pytest.raises(ValueError):
        verify_fractional_decomposition(path_graph(3), [ScaledCopy(weighted_triangle(1, 1, 1), (0, 1, 2), 1)])


@given(st.integers(0, 10_000))
def test_verify_matches_independent_resummation(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 7)
    host_edges = list(combinations(range(n), 2))
    T = weighted_triangle(*(Fraction(rng.randint(1, 5), rng.randint(1, 5)) for _ in range(3)))
    copies = [
        ScaledCopy(T, tuple(rng.sample(range(n), 3)), Fraction(rng.randint(1, 9), rng.randint(1, 9)))
        for _ in range(rng.randint(0, 6))
    ]
    host = WeightedGraph(n, {e: Fraction(rng.randint(1, 20), rng.randint(1, 4)) for e in host_edges})
    sums = {e: Fraction(0) for e in host_edges}
    for c in copies:
        for (u, v), w in c.template.weights.items():
            a, b = sorted((c.embedding[u], c.embedding[v]))
            sums[(a, b)] += c.alpha * w
    diff = {e: host.weights[e] - sums[e] for e in host_edges}
    v = verify_fractional_decomposition(host, copies)
    if any(d < 0 for d in diff.values()):
        assert v.status == "violation"
        assert dict(v.violations) == {e: -d for e, d in diff.items() if d < 0}
    elif any(d > 0 for d in diff.values()):
        assert v.status == "leftover"
    else:
        assert v.status == "exact"
    # leftover plus used weight always recovers the host on non-violated edges
    for e, d in diff.items():
        if d >= 0:
            assert v.leftover.weights.get(e, 0) == d


def test_random_graph_min_degree_floor():
    rng = random.Random(7)
    for n in (10, 25):
        for d in (0, n // 2, n - 1):
            G = random_graph_min_degree(n, d, rng)
            assert G.min_degree() >= d


def test_disjoint_union():
    G = disjoint_union(complete_graph(3), path_graph(2))
    assert G.n == 5 and G.num_edges() == 4 and G.has_edge(3, 4)
