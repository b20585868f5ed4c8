import pytest
from hypothesis import given
from hypothesis import strategies as st

from fracdecomp.condense import IndexedPartition, PartitionError, canonical_tripartition_of_cycle, condense
from fracdecomp.core import Graph, complete_multipartite_graph, cycle_graph, is_scaled_copy, total_weight, weighted_triangle


def _crossing_counts(F, parts):
    lab = {v: i for i, p in enumerate(parts) for v in p}
    out = {}
    for u, v in F.edges:
        key = tuple(sorted((lab[u], lab[v])))
        out[key] = out.get(key, 0) + 1
    return out


def test_five_cycle_condenses_to_three_one_one():
    parts = [[0, 2], [1, 4], [3]]
    W = condense(cycle_graph(5), parts)
    # edges 01, 12, 04 go between parts 0 and 1; 23 and 34 each touch part 2 once
    assert W.weights == {(0, 1): 3, (0, 2): 1, (1, 2): 1}
    assert is_scaled_copy(W, weighted_triangle(3, 1, 1)) == 1


def test_k211_condenses_to_two_two_one():
    F = complete_multipartite_graph(2, 1, 1)  # parts {0,1}, {2}, {3}
    W = condense(F, [[0, 1], [2], [3]])
    assert W.weights == _crossing_counts(F, [[0, 1], [2], [3]])
    assert sorted(W.weights.values()) == [1, 2, 2]


def test_single_edge():
    W = condense(Graph(2, [(0, 1)]), [[0], [1]])
    assert W.n == 2 and W.weights == {(0, 1): 1}


@pytest.mark.parametrize("length", [3, 5, 7, 9, 11])
def test_canonical_cycle_partition(length):
    P = canonical_tripartition_of_cycle(length)
    W = condense(cycle_graph(length), P)
    assert is_scaled_copy(W, weighted_triangle(length - 2, 1, 1)) == 1
    assert W.weights[(0, 1)] == length - 2


def test_canonical_rejects_even():
    with pytest.raises(ValueError):
        canonical_tripartition_of_cycle(6)


def test_partition_errors():
    C5 = cycle_graph(5)
    with pytest.raises(PartitionError, match="not independent"):
        condense(C5, [[0, 1], [2, 4], [3]])
    with pytest.raises(PartitionError, match="not covered"):
        condense(C5, [[0, 2], [1], [3]])
    with pytest.raises(PartitionError, match="more than one part"):
        IndexedPartition([[0, 2], [2, 4]])
    with pytest.raises(PartitionError, match="empty"):
        IndexedPartition([[0], []])
    with pytest.raises(PartitionError, match="outside"):
        condense(C5, [[0, 2], [1, 4], [3, 7]])


@given(st.integers(2, 5), st.integers(1, 4), st.data())
def test_condensation_preserves_edge_count(parts_n, size_cap, data):
    sizes = [data.draw(st.integers(1, size_cap)) for _ in range(parts_n)]
    F_full = complete_multipartite_graph(*sizes)
    keep = data.draw(st.lists(st.sampled_from(sorted(F_full.edges)), min_size=1, unique=True))
    F = Graph(F_full.n, keep)
    start = 0
    parts = []
    for s in sizes:
        parts.append(list(range(start, start + s)))
        start += s
    W = condense(F, parts)
    assert total_weight(W) == F.num_edges()
    assert W.weights == _crossing_counts(F, parts)
