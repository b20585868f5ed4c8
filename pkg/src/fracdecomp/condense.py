"""Condensation of a graph with respect to an indexed partition into independent sets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import AnyGraph, WeightedGraph, as_graph, edge


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class IndexedPartition:
    """Ordered, pairwise disjoint, nonempty vertex sets ``U_0, ..., U_{k-1}``.

    Vertices inside each part are kept sorted so that equal partitions
    compare equal regardless of input order.
    """

    parts: tuple[tuple[int, ...], ...]

    def __init__(self, parts: Iterable[Iterable[int]]):
        canon = tuple(tuple(sorted(p)) for p in parts)
        seen: set[int] = set()
        for i, p in enumerate(canon):
            if not p:
                raise PartitionError(f"part {i} is empty")
            if len(set(p)) != len(p):
                raise PartitionError(f"part {i} repeats a vertex")
            clash = seen.intersection(p)
            if clash:
                raise PartitionError(f"vertex {min(clash)} lies in more than one part")
            seen.update(p)
        object.__setattr__(self, "parts", canon)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.parts)

    def labels(self, n: int) -> list[int]:
        """``labels[v]`` is the index of the part containing ``v``."""
        lab = [-1] * n
        for i, p in enumerate(self.parts):
            for v in p:
                if v < 0 or v >= n:
                    raise PartitionError(f"vertex {v} is outside 0..{n - 1}")
                lab[v] = i
        missing = [v for v, l in enumerate(lab) if l < 0]
        if missing:
            raise PartitionError(f"vertex {missing[0]} is not covered by the partition")
        return lab

    def validate_for(self, F: AnyGraph) -> list[int]:
        """Check that the partition covers ``V(F)`` with independent parts."""
        F = as_graph(F)
        lab = self.labels(F.n)
        for u, v in F.sorted_edges:
            if lab[u] == lab[v]:
                raise PartitionError(f"part {lab[u]} is not independent: it contains edge {u} {v}")
        return lab


def condense(F: AnyGraph, P: IndexedPartition | Sequence[Sequence[int]]) -> WeightedGraph:
    """Weighted graph on ``{0..k-1}`` whose edge ``ij`` counts F-edges between ``U_i`` and ``U_j``."""
    if not isinstance(P, IndexedPartition):
        P = IndexedPartition(P)
    F = as_graph(F)
    lab = P.validate_for(F)
    counts: dict[tuple[int, int], int] = {}
    for u, v in F.edges:
        e = edge(lab[u], lab[v])
        counts[e] = counts.get(e, 0) + 1
    return WeightedGraph(len(P), counts)


def canonical_tripartition_of_cycle(length: int) -> IndexedPartition:
    """Tripartition of ``C_l`` (vertices ``0..l-1`` in cyclic order) condensing to ``T_{l-2,1,1}``.

    The path ``0, 1, ..., l-2`` alternates between the first two parts and
    vertex ``l-1`` forms the third part on its own.
    """
    if length < 3 or length % 2 == 0:
        raise ValueError("cycle length must be odd and at least 3")
    evens = range(0, length - 1, 2)
    odds = range(1, length - 1, 2)
    return IndexedPartition([evens, odds, [length - 1]])

