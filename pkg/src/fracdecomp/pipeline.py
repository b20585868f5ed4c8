"""Fractional decomposition of a host graph into weighted triangles.

Every triangle ``K`` of the host gets weight ``1 / t_e`` on each of its edges,
where ``t_e`` counts common neighbours of the endpoints of ``e``. Those weighted
triangles exactly cover the host; each one is then split into scaled copies of
the template with :func:`fracdecomp.triangle.decompose_triangle`.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .core import (
    AnyGraph,
    Edge,
    FractionalDecomposition,
    ScaledCopy,
    as_graph,
    weighted_triangle,
)
from .triangle import TriangleTemplate, decompose_triangle, eq2_feasible


class DecompositionError(Exception):
    """The construction cannot be completed on this host."""


class UncoveredEdgeError(DecompositionError):
    def __init__(self, e: Edge):
        self.edge = e
        super().__init__(f"uncovered edge {e[0]} {e[1]}: it lies in no triangle")


class InfeasibleTriangleError(DecompositionError):
    def __init__(self, triangle: tuple[int, int, int], weights: tuple[Fraction, ...]):
        self.triangle = triangle
        self.weights = weights
        w = " ".join(str(x) for x in weights)
        super().__init__(f"infeasible triangle {triangle[0]} {triangle[1]} {triangle[2]} with weights {w}")


class PreconditionError(ValueError):
    pass


def delta_threshold(e) -> Fraction:
    """``1/2 + max(e3 / (2e1 + 2e2 - 2e3), (e2 + e3) / (8e1 - 2e2 - 2e3))``."""
    e1, e2, e3 = e.weights if isinstance(e, TriangleTemplate) else _template_triple(e)
    a = Fraction(e3, 2 * (e1 + e2 - e3))
    b = Fraction(e2 + e3, 2 * (4 * e1 - e2 - e3))
    return Fraction(1, 2) + (a if a >= b else b)


def _template_triple(e):
    # cheap path for plain integer triples; anything else goes through full validation
    if len(e) == 3 and all(type(x) is int for x in e) and e[0] >= e[1] >= e[2] > 0:
        return e
    return TriangleTemplate.of(e).weights


def triangle_counts(G: AnyGraph) -> dict[Edge, int]:
    """Number of common neighbours of the endpoints of every edge, in edge order."""
    G = as_graph(G)
    adj = G.adjacency
    return {(u, v): len(adj[u] & adj[v]) for u, v in G.sorted_edges}


def triangles(G: AnyGraph) -> Iterator[tuple[int, int, int]]:
    """All triangles ``(x, y, z)`` with ``x < y < z``, in lexicographic order."""
    G = as_graph(G)
    adj = G.adjacency
    for u, v in G.sorted_edges:
        for w in sorted(adj[u] & adj[v]):
            if w > v:
                yield (u, v, w)


def _template_copy_embedding(pi, order, opposite) -> tuple[int, int, int]:
    # Template edge k (weights e1, e2, e3 on 01, 02, 12) is opposite vertex 2 - k.
    phi = [0, 0, 0]
    for slot in range(3):
        phi[2 - pi[slot]] = opposite[order[slot]]
    return tuple(phi)  # type: ignore[return-value]


def _decompose_many(args):
    w, e = args
    return decompose_triangle(w, e).coefficients


def fractional_triangle_decomposition(G: AnyGraph, e, jobs: int = 1) -> FractionalDecomposition:
    """Build an exact fractional ``T_e``-decomposition of ``G`` triangle by triangle.

    Raises:
        UncoveredEdgeError: some edge lies in no triangle.
        InfeasibleTriangleError: the first triangle (in ascending order) whose
            weight triple fails the feasibility test against ``e``.
    """
    G = as_graph(G)
    e = TriangleTemplate.of(e)
    t = triangle_counts(G)
    for ed, count in t.items():
        if count == 0:
            raise UncoveredEdgeError(ed)

    inverse = {k: Fraction(1, k) for k in set(t.values())}
    plan = []
    for x, y, z in triangles(G):
        sides = ((x, y), (x, z), (y, z))
        w = [inverse[t[s]] for s in sides]
        order = tuple(sorted(range(3), key=lambda i: (-w[i], i)))
        plan.append((tuple(w[i] for i in order), order, (z, y, x), (x, y, z)))

    unique = sorted({p[0] for p in plan})
    feasible = {ws: eq2_feasible(ws, e) for ws in unique}
    for ws, _, _, tri in plan:
        if not feasible[ws]:
            raise InfeasibleTriangleError(tri, ws)

    if jobs > 1 and len(unique) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            solved = dict(zip(unique, pool.map(_decompose_many, [(w, e) for w in unique], chunksize=64)))
    else:
        solved = {w: decompose_triangle(w, e).coefficients for w in unique}

    template = weighted_triangle(*e.weights)
    copies = []
    for ws, order, opposite, _ in plan:
        for pi, c in solved[ws].items():
            copies.append(ScaledCopy(template, _template_copy_embedding(pi, order, opposite), c, e.name))
    return FractionalDecomposition(G, copies)


# ---------------------------------------------------------------------------
# Diagnostics on common-neighbour counts
# ---------------------------------------------------------------------------

@dataclass
class TRatioReport:
    gamma: Fraction
    pair_violations: list[tuple[Edge, Edge]] = field(default_factory=list)
    triangle_violations: list[tuple[tuple[int, int, int], str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.pair_violations and not self.triangle_violations


def diagnose_t_ratios(G: AnyGraph, gamma) -> TRatioReport:
    """Check the ratio bounds on ``t`` implied by minimum degree ``>= (1 - gamma) n``.

    For adjacent edges ``e, e'`` the ratio ``t_e / t_e'`` must lie in
    ``[(1-2g)/(1-g), (1-g)/(1-2g)]``; for every triangle with
    ``t_xy <= t_xz <= t_yz`` both reciprocal inequalities are checked.
    Any violation signals that the degree hypothesis failed or a bug.
    """
    G = as_graph(G)
    gamma = Fraction(gamma)
    if not 0 < gamma < Fraction(1, 2):
        raise PreconditionError("gamma must lie strictly between 0 and 1/2")
    n = G.n
    if G.min_degree() < (1 - gamma) * n:
        raise PreconditionError(f"minimum degree {G.min_degree()} is below (1 - {gamma}) * {n}")

    report = TRatioReport(gamma)
    t = triangle_counts(G)
    hi = (1 - gamma) / (1 - 2 * gamma)

    incident: list[list[Edge]] = [[] for _ in range(n)]
    for ed in G.sorted_edges:
        incident[ed[0]].append(ed)
        incident[ed[1]].append(ed)
    # All adjacent pairs are within bounds iff the extreme pair at each vertex is.
    for v in range(n):
        if len(incident[v]) < 2:
            continue
        lo_e = min(incident[v], key=lambda s: (t[s], s))
        hi_e = max(incident[v], key=lambda s: (t[s], s))
        if t[lo_e] == 0 or Fraction(t[hi_e], t[lo_e]) > hi:
            report.pair_violations.append((lo_e, hi_e))

    c1 = (1 - 2 * gamma) / (2 - 2 * gamma)
    c2 = (1 - gamma) / (2 - 4 * gamma)
    for x, y, z in triangles(G):
        a, b, c = sorted((t[(x, y)], t[(x, z)], t[(y, z)]))
        if a == 0:
            report.triangle_violations.append(((x, y, z), "zero count"))
            continue
        if Fraction(1, c) < c1 * (Fraction(1, a) + Fraction(1, b)):
            report.triangle_violations.append(((x, y, z), "largest-count edge too light"))
        if Fraction(1, a) > c2 * (Fraction(1, b) + Fraction(1, c)):
            report.triangle_violations.append(((x, y, z), "smallest-count edge too heavy"))
    return report
