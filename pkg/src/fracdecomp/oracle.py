"""Ground truth for small hosts: exact LP over every embedding of the template."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import AnyGraph, Edge, FractionalDecomposition, ScaledCopy, as_weighted, edge
from .lp import solve_feasibility

MAX_HOST_VERTICES = 12


class HostTooLargeError(ValueError):
    pass


def enumerate_embeddings(W: AnyGraph, G: AnyGraph, max_vertices: int = MAX_HOST_VERTICES) -> list[tuple[int, ...]]:
    """Edge-valid injections ``V(W) -> V(G)``, one per distinct weighted image.

    Two embeddings that put the same weights on the same host edges (they
    differ by a weighted automorphism of W) are collapsed; the
    lexicographically first is kept.
    """
    W, G = as_weighted(W), as_weighted(G)
    if G.n > max_vertices:
        raise HostTooLargeError(f"host has {G.n} vertices; the oracle is limited to {max_vertices}")
    k = W.n
    host_adj = G.underlying.adjacency
    tmpl_adj = W.underlying.adjacency
    # earlier neighbours of each template vertex, checked as soon as it is placed
    back = [[u for u in tmpl_adj[x] if u < x] for x in range(k)]

    found: list[tuple[int, ...]] = []
    seen: set[frozenset] = set()
    phi = [0] * k
    used = [False] * G.n

    def rec(x: int) -> None:
        if x == k:
            pattern = frozenset((edge(phi[u], phi[v]), w) for (u, v), w in W.weights.items())
            if pattern not in seen:
                seen.add(pattern)
                found.append(tuple(phi))
            return
        for y in range(G.n):
            if used[y] or any(phi[u] not in host_adj[y] for u in back[x]):
                continue
            phi[x] = y
            used[y] = True
            rec(x + 1)
            used[y] = False

    if k <= G.n:
        rec(0)
    return found


@dataclass(frozen=True)
class OracleResult:
    feasible: bool
    witness: FractionalDecomposition | None = None
    # edge potentials y: sum over any copy of y(e) * weight >= 0, yet sum of y(e) * host weight < 0
    dual: dict[Edge, Fraction] | None = None
    embeddings: int = 0


def fractional_decomposition_exists(
    W: AnyGraph, G: AnyGraph, max_vertices: int = MAX_HOST_VERTICES, name: str = "W"
) -> OracleResult:
    """Decide whether ``G`` has a fractional W-decomposition by Phase-I simplex.

    Variables are the scale factors of the embeddings; there is one equality
    per host edge.
    """
    W, G = as_weighted(W), as_weighted(G)
    embeddings = enumerate_embeddings(W, G, max_vertices)
    rows = list(G.weights)
    if not rows:
        return OracleResult(True, FractionalDecomposition(G, ()), embeddings=len(embeddings))
    index = {e: i for i, e in enumerate(rows)}
    A = [[Fraction(0)] * len(embeddings) for _ in rows]
    for j, phi in enumerate(embeddings):
        for (u, v), w in W.weights.items():
            A[index[edge(phi[u], phi[v])]][j] += w
    b = [G.weights[e] for e in rows]

    if not embeddings:
        dual = {e: Fraction(-1) for e in rows}
        return OracleResult(False, dual=dual, embeddings=0)
    res = solve_feasibility(A, b)
    if not res.feasible:
        return OracleResult(False, dual=dict(zip(rows, res.farkas)), embeddings=len(embeddings))
    copies = [ScaledCopy(W, phi, x, name) for phi, x in zip(embeddings, res.x) if x > 0]
    return OracleResult(True, FractionalDecomposition(G, copies), embeddings=len(embeddings))


def check_dual(W: AnyGraph, G: AnyGraph, dual: dict[Edge, Fraction]) -> bool:
    """Independently confirm a Farkas certificate against every embedding."""
    W, G = as_weighted(W), as_weighted(G)
    if sum(dual.get(e, 0) * w for e, w in G.weights.items()) >= 0:
        return False
    for phi in enumerate_embeddings(W, G, max_vertices=G.n):
        if sum(dual.get(edge(phi[u], phi[v]), 0) * w for (u, v), w in W.weights.items()) < 0:
            return False
    return True

