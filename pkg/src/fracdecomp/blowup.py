"""q-blow-ups of weighted graphs and the fractional F-decomposition of a blown-up condensation.

Vertex ``(x, j)`` of the blow-up (``x`` a base vertex, ``0 <= j < q``) is
numbered ``x * q + j``.
"""

from __future__ import annotations

from fractions import Fraction
from math import perm, prod
from typing import Iterator

from .condense import IndexedPartition, PartitionError, condense
from .core import AnyGraph, Edge, FractionalDecomposition, ScaledCopy, WeightedGraph, as_graph, as_weighted, edge

DEFAULT_MAX_COPIES = 10**6


class TooManyCopiesError(ValueError):
    pass


def blow_up(W: AnyGraph, q: int) -> WeightedGraph:
    """Replace each vertex by ``q`` clones and each edge by a weighted ``K_{q,q}``."""
    if q < 1:
        raise ValueError("q must be a positive integer")
    W = as_weighted(W)
    weights = {}
    for (x, y), w in W.weights.items():
        for i in range(q):
            for j in range(q):
                weights[(x * q + i, y * q + j)] = w
    return WeightedGraph(W.n * q, weights)


def _partition(P) -> IndexedPartition:
    return P if isinstance(P, IndexedPartition) else IndexedPartition(P)


def _check_q(P: IndexedPartition, q: int) -> None:
    if q < max(P.sizes()):
        raise PartitionError(f"q = {q} is smaller than the largest part ({max(P.sizes())})")


def count_injections(F: AnyGraph, P, q: int) -> int:
    """Number of partition-respecting injections ``V(F) -> V(Q)``: a product of falling factorials."""
    P = _partition(P)
    P.labels(as_graph(F).n)
    _check_q(P, q)
    return prod(perm(q, s) for s in P.sizes())


def partition_respecting_injections(F: AnyGraph, P, q: int) -> Iterator[tuple[int, ...]]:
    """Yield every injection ``a`` as the tuple ``(a(0), ..., a(n_F - 1))``, lexicographically.

    Vertex ``x`` in part ``i`` goes to some ``i * q + j``; distinct vertices of
    the same part get distinct ``j``.
    """
    F = as_graph(F)
    P = _partition(P)
    lab = P.labels(F.n)
    _check_q(P, q)
    n = F.n
    used = [[False] * q for _ in range(len(P))]
    current = [0] * n

    def rec(x: int):
        if x == n:
            yield tuple(current)
            return
        part = lab[x]
        row = used[part]
        for j in range(q):
            if not row[j]:
                row[j] = True
                current[x] = part * q + j
                yield from rec(x + 1)
                row[j] = False

    yield from rec(0)


def copy_weight(F: AnyGraph, P, q: int) -> Fraction:
    """Weight ``q**2 / |A|`` carried by every edge of every copy."""
    return Fraction(q * q, count_injections(F, P, q))


def blowup_decomposition(F: AnyGraph, P, q: int, max_copies: int = DEFAULT_MAX_COPIES) -> FractionalDecomposition:
    """One scaled copy of ``F`` per partition-respecting injection, each edge at ``q**2 / |A|``.

    The host is ``blow_up(condense(F, P), q)``. Copies from distinct
    injections are never merged, even when they cover the same edges.
    """
    F = as_graph(F)
    P = _partition(P)
    W = condense(F, P)
    size = count_injections(F, P, q)
    if size > max_copies:
        raise TooManyCopiesError(
            f"|A| = {size} exceeds the materialisation cap {max_copies}; use blowup_identity_check"
        )
    alpha = Fraction(q * q, size)
    template = F.as_weighted()
    copies = [ScaledCopy(template, a, alpha, "F") for a in partition_respecting_injections(F, P, q)]
    return FractionalDecomposition(blow_up(W, q), copies)


def edge_usage_enumerated(F: AnyGraph, P, q: int) -> dict[Edge, int]:
    """``|A_e|`` for every blow-up edge, by walking all injections."""
    F = as_graph(F)
    counts: dict[Edge, int] = {}
    for a in partition_respecting_injections(F, P, q):
        for u, v in F.edges:
            e = edge(a[u], a[v])
            counts[e] = counts.get(e, 0) + 1
    return dict(sorted(counts.items()))


def edge_usage_counted(F: AnyGraph, P, q: int) -> dict[Edge, int]:
    """``|A_e|`` for every blow-up edge, by counting without enumeration.

    For an F-edge ``xy`` between parts ``i`` and ``i'``, the injections with
    ``a(x) = (i, j)`` and ``a(y) = (i', j')`` number
    ``perm(q-1, s_i - 1) * perm(q-1, s_i' - 1) * prod_{other parts} perm(q, s)``.
    Distinct F-edges land on distinct blow-up edges under one injection, so
    these counts add.
    """
    F = as_graph(F)
    P = _partition(P)
    lab = P.validate_for(F)
    _check_q(P, q)
    sizes = P.sizes()
    full = [perm(q, s) for s in sizes]
    per_pair: dict[tuple[int, int], int] = {}
    for u, v in F.edges:
        i, k = sorted((lab[u], lab[v]))
        rest = prod(full[p] for p in range(len(sizes)) if p not in (i, k))
        c = perm(q - 1, sizes[i] - 1) * perm(q - 1, sizes[k] - 1) * rest
        per_pair[(i, k)] = per_pair.get((i, k), 0) + c
    counts = {}
    for (i, k), c in per_pair.items():
        for j in range(q):
            for jj in range(q):
                counts[edge(i * q + j, k * q + jj)] = c
    return dict(sorted(counts.items()))


def blowup_identity_check(F: AnyGraph, P, q: int, enumerate_all: bool = False) -> bool:
    """Check ``|A_e| * q**2 / |A| == w_Q(e)`` for every blow-up edge ``e``.

    Counts come from :func:`edge_usage_counted` unless ``enumerate_all``.
    """
    F = as_graph(F)
    P = _partition(P)
    Q = blow_up(condense(F, P), q)
    size = count_injections(F, P, q)
    usage = edge_usage_enumerated(F, P, q) if enumerate_all else edge_usage_counted(F, P, q)
    if set(usage) != set(Q.weights):
        return False
    return all(Fraction(usage[e] * q * q, size) == w for e, w in Q.weights.items())
