"""Lower-bound host graphs for fractional decomposition thresholds.

Two families of hosts are built here. Each comes with an edge bipartition
``(G0, G1)`` of the host and a density parameter ``rho``; the ratio
``|E(G0)| / |E(G1)|`` then rules out any fractional W-decomposition.

``internal-heavy``: every scaled copy of W puts at least a ``rho`` share of its
weight inside the two halves of a vertex bipartition, while the host has
``|E(G0)| / |E(G1)| < rho / (1 - rho)``.

``crossing-light``: the host is 4-partite and every scaled copy puts at most a
``rho`` share on the matched part pairs, while the host has
``|E(G0)| / |E(G1)| > rho / (1 - rho)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Sequence

from .core import AnyGraph, Edge, Graph, WeightedGraph, as_graph, as_weighted, degree_gcd, total_weight
from .pipeline import delta_threshold

INTERNAL_HEAVY = "internal-heavy"
CROSSING_LIGHT = "crossing-light"
DIRECTIONS = (INTERNAL_HEAVY, CROSSING_LIGHT)

MAX_BIPARTITION_VERTICES = 20
MAX_FOURPART_VERTICES = 16
DIGITS = 60


def _integer_weights(W: WeightedGraph) -> tuple[dict[Edge, int], int]:
    scale = math.lcm(*(w.denominator for w in W.weights.values())) if W.weights else 1
    return {e: int(w * scale) for e, w in W.weights.items()}, scale


def _side_weight(W: WeightedGraph) -> Iterable[tuple[int, int]]:
    """Yield ``(mask, same_side_weight)`` over all bipartitions, scaled to integers.

    Vertex ``n - 1`` stays on side 0; the other vertices follow a Gray code so
    each step moves one vertex and costs only its degree.
    """
    n = W.n
    iw, _ = _integer_weights(W)
    nbrs: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for (u, v), w in iw.items():
        nbrs[u].append((v, w))
        nbrs[v].append((u, w))
    mask = 0
    same = sum(iw.values())
    yield mask, same
    for k in range(1, 1 << max(n - 1, 0)):
        v = (k & -k).bit_length() - 1
        side = (mask >> v) & 1
        for u, w in nbrs[v]:
            # before the move, u on the same side as v means this edge stops being internal
            same += -w if ((mask >> u) & 1) == side else w
        mask ^= 1 << v
        yield mask, same


def rho_bipartite_min(W: AnyGraph) -> Fraction:
    """Minimum over vertex bipartitions of the internal share of total weight."""
    W = as_weighted(W)
    if not W.weights:
        raise ValueError("W must have at least one edge")
    if W.n > MAX_BIPARTITION_VERTICES:
        raise ValueError(f"exhaustive bipartition search is limited to {MAX_BIPARTITION_VERTICES} vertices")
    _, scale = _integer_weights(W)
    best = min(same for _, same in _side_weight(W))
    return Fraction(best, scale) / total_weight(W)


def _is_bipartite_mask(adj: list[int], mask: int) -> bool:
    colour: dict[int, int] = {}
    rest = mask
    while rest:
        s = (rest & -rest).bit_length() - 1
        colour[s] = 0
        stack = [s]
        rest &= ~(1 << s)
        while stack:
            v = stack.pop()
            nb = adj[v] & mask
            while nb:
                u = (nb & -nb).bit_length() - 1
                nb &= nb - 1
                if u in colour:
                    if colour[u] == colour[v]:
                        return False
                else:
                    colour[u] = 1 - colour[v]
                    rest &= ~(1 << u)
                    stack.append(u)
    return True


def rho_fourpart_max(W: AnyGraph) -> Fraction | None:
    """Maximum matched-pair share over partitions into four independent sets.

    A partition ``{U1, U2, U3, U4}`` with pairing ``(U1,U2), (U3,U4)`` is the
    same as a vertex bipartition ``{A, B}`` whose two sides each induce a
    bipartite graph; the matched-pair weight is then the weight inside ``A``
    plus the weight inside ``B``. Empty parts are allowed. Returns ``None``
    if W has no proper 4-colouring.
    """
    W = as_weighted(W)
    if not W.weights:
        raise ValueError("W must have at least one edge")
    if W.n > MAX_FOURPART_VERTICES:
        raise ValueError(f"exhaustive four-part search is limited to {MAX_FOURPART_VERTICES} vertices")
    n = W.n
    adj = [0] * n
    for u, v in W.weights:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    full = (1 << n) - 1
    _, scale = _integer_weights(W)
    best = None
    for mask, same in _side_weight(W):
        if best is not None and same <= best:
            continue
        if _is_bipartite_mask(adj, mask) and _is_bipartite_mask(adj, full & ~mask):
            best = same
    if best is None:
        return None
    return Fraction(best, scale) / total_weight(W)


def lemma7_bound(rho) -> Fraction:
    """``1/2 + rho / (2 - 2 rho)``."""
    rho = Fraction(rho)
    if not 0 < rho < 1:
        raise ValueError("rho must lie strictly between 0 and 1")
    return Fraction(1, 2) + rho / (2 - 2 * rho)


@dataclass(frozen=True)
class FourPartBound:
    strong: Decimal
    weak: Fraction


def lemma8_bound(rho, digits: int = DIGITS) -> FourPartBound:
    """Strong bound ``(3 - sqrt((3 rho - 1) / (1 + rho))) / 4`` and the rational weak bound.

    The strong value is computed with ``digits`` significant digits; the weak
    value ``1/2 + (1 - rho) / (2 + 6 rho)`` is exact.
    """
    rho = Fraction(rho)
    if not Fraction(1, 3) <= rho < 1:
        raise ValueError("rho must lie in [1/3, 1)")
    r = (3 * rho - 1) / (1 + rho)
    with localcontext() as ctx:
        ctx.prec = digits
        root = (Decimal(r.numerator) / Decimal(r.denominator)).sqrt()
        strong = (3 - root) / 4
    weak = Fraction(1, 2) + (1 - rho) / (2 + 6 * rho)
    return FourPartBound(strong, weak)


def fourpart_gamma(rho, digits: int = DIGITS) -> Decimal:
    """``(1 + sqrt((3 rho - 1) / (1 + rho))) / 4``; equals one minus the strong bound."""
    rho = Fraction(rho)
    r = (3 * rho - 1) / (1 + rho)
    with localcontext() as ctx:
        ctx.prec = digits
        return (1 + (Decimal(r.numerator) / Decimal(r.denominator)).sqrt()) / 4


def divisibility_modulus(W: AnyGraph) -> int:
    """``gcd(W) * |E(W)|`` for a plain graph, 1 for a properly weighted one."""
    Wt = as_weighted(W)
    if isinstance(W, Graph) or Wt.is_plain():
        return degree_gcd(Wt) * Wt.num_edges()
    return 1


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EdgeBipartitionCertificate:
    """Vertex parts of the host, the induced edge split and ``rho``.

    For ``internal-heavy`` G0 is the set of host edges inside a part. For
    ``crossing-light`` there are four independent parts and G0 is the union
    of the edges between parts 0-1 and parts 2-3.
    """

    parts: tuple[tuple[int, ...], ...]
    g0: frozenset[Edge]
    g1: frozenset[Edge]
    rho: Fraction
    direction: str


def split_edges(G: AnyGraph, parts: Sequence[Sequence[int]], direction: str) -> tuple[frozenset[Edge], frozenset[Edge]]:
    G = as_graph(G)
    lab = {v: i for i, p in enumerate(parts) for v in p}
    g0, g1 = set(), set()
    for u, v in G.edges:
        a, b = lab.get(u), lab.get(v)
        if direction == INTERNAL_HEAVY:
            inside = a == b
        elif direction == CROSSING_LIGHT:
            inside = {a, b} in ({0, 1}, {2, 3})
        else:
            raise ValueError(f"unknown direction {direction!r}")
        (g0 if inside else g1).add((u, v))
    return frozenset(g0), frozenset(g1)


def make_certificate(G: AnyGraph, parts: Sequence[Sequence[int]], rho, direction: str) -> EdgeBipartitionCertificate:
    g0, g1 = split_edges(G, parts, direction)
    return EdgeBipartitionCertificate(tuple(tuple(sorted(p)) for p in parts), g0, g1, Fraction(rho), direction)


def certificate_problems(G: AnyGraph, cert: EdgeBipartitionCertificate, W: AnyGraph) -> list[str]:
    """Every reason the certificate fails to rule out a fractional W-decomposition of G."""
    G = as_graph(G)
    problems = []
    rho = cert.rho
    if cert.direction not in DIRECTIONS:
        return [f"unknown direction {cert.direction!r}"]
    if not 0 < rho < 1:
        problems.append("rho must lie strictly between 0 and 1")
        return problems
    if cert.g0 & cert.g1 or (cert.g0 | cert.g1) != G.edges:
        problems.append("G0 and G1 do not partition E(G)")
    seen = [v for p in cert.parts for v in p]
    if sorted(seen) != list(range(G.n)):
        problems.append("parts do not partition V(G)")
        return problems
    if cert.direction == CROSSING_LIGHT:
        if len(cert.parts) != 4:
            problems.append("crossing-light certificates need exactly four parts")
            return problems
        for i, p in enumerate(cert.parts):
            ps = set(p)
            if any(G.has_edge(u, v) for u in p for v in G.adjacency[u] if v in ps):
                problems.append(f"part {i} is not independent in G")
    g0, g1 = split_edges(G, cert.parts, cert.direction)
    if (g0, g1) != (cert.g0, cert.g1):
        problems.append("G0 is not the edge set induced by the parts")

    m0, m1 = len(cert.g0), len(cert.g1)
    if cert.direction == INTERNAL_HEAVY:
        if rho_bipartite_min(W) < rho:
            problems.append("some bipartition of W has internal share below rho")
        if not m0 * (1 - rho) < rho * m1:
            problems.append("|E(G0)| / |E(G1)| is not below rho / (1 - rho)")
    else:
        best = rho_fourpart_max(W)
        if best is not None and best > rho:
            problems.append("some four-part partition of W has matched share above rho")
        if not m0 * (1 - rho) > rho * m1:
            problems.append("|E(G0)| / |E(G1)| is not above rho / (1 - rho)")
    return problems


def verify_certificate(G: AnyGraph, cert: EdgeBipartitionCertificate, W: AnyGraph) -> bool:
    """True when the certificate proves G has no fractional W-decomposition."""
    return not certificate_problems(G, cert, W)


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def circulant_edges(vertices: Sequence[int], degree: int) -> list[Edge]:
    """Edges of the circulant joining each vertex to the ``degree / 2`` nearest on each side."""
    m = len(vertices)
    if degree % 2 or degree >= m:
        raise ValueError("circulant degree must be even and below the vertex count")
    out = []
    for i in range(m):
        for d in range(1, degree // 2 + 1):
            u, v = vertices[i], vertices[(i + d) % m]
            out.append((min(u, v), max(u, v)))
    return out


def _check_n(n: int, g: int) -> None:
    if n <= 0 or n % (4 * g):
        raise ValueError(f"n must be a positive multiple of 4g = {4 * g}")


def build_lemma7_graph(W: AnyGraph, n: int) -> tuple[Graph, EdgeBipartitionCertificate]:
    """Two ``h``-regular circulants on halves of size ``n/2`` plus the complete bipartite graph between them."""
    rho = rho_bipartite_min(W)
    if rho == 0:
        raise ValueError("W is bipartite; the bipartition bound is vacuous")
    g = divisibility_modulus(W)
    _check_n(n, g)
    bound = rho * n / (2 - 2 * rho)
    step = 2 * g
    h = (math.ceil(bound / step) - 1) * step
    if h < 0:
        raise ValueError("no admissible h")
    half = n // 2
    V1, V2 = list(range(half)), list(range(half, n))
    edges = circulant_edges(V1, h) + circulant_edges(V2, h) if h else []
    edges += [(u, v) for u in V1 for v in V2]
    G = Graph(n, edges)
    return G, make_certificate(G, [V1, V2], rho, INTERNAL_HEAVY)


def fourpart_part_size(n: int, rho: Fraction, g: int) -> int | None:
    """Smallest multiple of ``2g`` strictly above ``gamma * n``, compared exactly."""
    r = (3 * rho - 1) / (1 + rho)
    step = 2 * g
    for h in range(0, n + 1, step):
        d = 4 * h - n
        if d > 0 and d * d > n * n * r:
            return h
    return None


def build_lemma8_graph(W: AnyGraph, n: int) -> tuple[Graph, EdgeBipartitionCertificate]:
    """Complete 4-partite graph with parts of sizes ``h, h, n/2 - h, n/2 - h``."""
    rho = rho_fourpart_max(W)
    if rho is None:
        raise ValueError("W has no partition into four independent sets")
    if rho >= 1:
        raise ValueError("rho = 1; the four-part bound is vacuous")
    g = divisibility_modulus(W)
    _check_n(n, g)
    h = fourpart_part_size(n, rho, g)
    half = n // 2
    if h is None or h >= half:
        raise ValueError(f"n = {n} is too small: need h < n/2")
    sizes = (h, h, half - h, half - h)
    starts = [0, h, 2 * h, 2 * h + half - h]
    parts = [list(range(s, s + k)) for s, k in zip(starts, sizes)]
    lab = [i for i, k in enumerate(sizes) for _ in range(k)]
    G = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if lab[u] != lab[v]])
    return G, make_certificate(G, parts, rho, CROSSING_LIGHT)


def smallest_fourpart_n(W: AnyGraph, limit: int = 10**5) -> int:
    g = divisibility_modulus(W)
    rho = rho_fourpart_max(W)
    if rho is None or rho >= 1:
        raise ValueError("the four-part bound does not apply to W")
    for n in range(4 * g, limit + 1, 4 * g):
        h = fourpart_part_size(n, rho, g)
        if h is not None and h < n // 2:
            return n
    raise ValueError(f"no valid n up to {limit}")


# ---------------------------------------------------------------------------
# Threshold table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThresholdRow:
    param: int
    lower: Fraction | Decimal
    lower_source: str
    upper: Fraction


def tripartite_upper_bound(e) -> Fraction:
    """``max(delta(e1, e2, e3), 3/4)`` for a tripartite graph with part-pair edge counts ``e``."""
    return max(delta_threshold(e), Fraction(3, 4))


def _best_lower(rho7: Fraction | None, rho8: Fraction | None) -> tuple[Fraction | Decimal, str]:
    options: list[tuple[Fraction | Decimal, str]] = []
    if rho7 is not None and 0 < rho7 < 1:
        options.append((lemma7_bound(rho7), "bipartition"))
    if rho8 is not None and Fraction(1, 3) <= rho8 < 1:
        options.append((lemma8_bound(rho8).strong, "four-part"))
    return max(options, key=lambda o: Decimal(o[0].numerator) / Decimal(o[0].denominator)
               if isinstance(o[0], Fraction) else o[0])


def threshold_table(family: str, maximum: int) -> list[ThresholdRow]:
    """Lower and upper bounds for ``cycle`` (odd l >= 5), ``K_a11`` and ``K_aa1`` (a >= 2)."""
    rows = []
    if family == "cycle":
        for length in range(5, maximum + 1, 2):
            rows.append(ThresholdRow(length, lemma7_bound(Fraction(1, length)), "bipartition",
                                     delta_threshold((length - 2, 1, 1))))
    elif family == "K_a11":
        for a in range(2, maximum + 1):
            # |E| = 2a + 1; the lightest bipartition keeps the single c-d edge
            lower, src = _best_lower(Fraction(1, 2 * a + 1), Fraction(a, 2 * a + 1))
            rows.append(ThresholdRow(a, lower, src, tripartite_upper_bound((a, a, 1))))
    elif family == "K_aa1":
        for a in range(2, maximum + 1):
            lower, src = _best_lower(Fraction(1, a + 2), Fraction(a, a + 2))
            rows.append(ThresholdRow(a, lower, src, tripartite_upper_bound((a * a, a, a))))
    else:
        raise ValueError(f"unknown family {family!r}")
    return rows
