"""Weighted graphs, scaled copies and the exact fractional-decomposition verifier.

Every weight is a :class:`fractions.Fraction`. Edges are stored as ordered
pairs ``(u, v)`` with ``u < v``; vertices are ``0, ..., n - 1``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Mapping, Union

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    """Return the canonical form of the unordered pair ``{u, v}``."""
    if u == v:
        raise ValueError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floating-point weights are not accepted; use Fraction or int")
    return Fraction(x)


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset[Edge]

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        canon = set()
        for u, v in edges:
            e = edge(u, v)
            if e[0] < 0 or e[1] >= n:
                raise ValueError(f"edge {e} has an endpoint outside 0..{n - 1}")
            if e in canon:
                raise ValueError(f"parallel edge {e}")
            canon.add(e)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(canon))

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and edge(u, v) in self.edges

    def num_edges(self) -> int:
        return len(self.edges)

    def as_weighted(self) -> WeightedGraph:
        return WeightedGraph(self.n, {e: 1 for e in self.edges})

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"


@dataclass(frozen=True)
class WeightedGraph:
    """A simple graph with strictly positive rational edge weights.

    Absent pairs are non-edges; a weight of zero is never stored.
    """

    n: int
    weights: Mapping[Edge, Fraction] = field(hash=False)

    def __init__(self, n: int, weights: Mapping[tuple[int, int], object] | Iterable = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        items = weights.items() if isinstance(weights, Mapping) else weights
        canon: dict[Edge, Fraction] = {}
        for (u, v), w in items:
            e = edge(u, v)
            if e[0] < 0 or e[1] >= n:
                raise ValueError(f"edge {e} has an endpoint outside 0..{n - 1}")
            if e in canon:
                raise ValueError(f"parallel edge {e}")
            w = _as_fraction(w)
            if w <= 0:
                raise ValueError(f"edge {e} has non-positive weight {w}")
            canon[e] = w
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "weights", dict(sorted(canon.items())))

    def __hash__(self):
        return hash((self.n, tuple(self.weights.items())))

    @cached_property
    def underlying(self) -> Graph:
        return Graph(self.n, self.weights.keys())

    @property
    def edges(self) -> frozenset[Edge]:
        return self.underlying.edges

    def weight(self, u: int, v: int) -> Fraction:
        """Weight of ``uv``, or 0 if the pair is not an edge."""
        return self.weights.get(edge(u, v), Fraction(0))

    def num_edges(self) -> int:
        return len(self.weights)

    def is_plain(self) -> bool:
        return all(w == 1 for w in self.weights.values())

    def scaled(self, alpha) -> WeightedGraph:
        alpha = _as_fraction(alpha)
        return WeightedGraph(self.n, {e: alpha * w for e, w in self.weights.items()})

    def __repr__(self) -> str:
        body = ", ".join(f"{u}-{v}:{w}" for (u, v), w in self.weights.items())
        return f"WeightedGraph(n={self.n}, {{{body}}})"


AnyGraph = Union[Graph, WeightedGraph]


def as_weighted(G: AnyGraph) -> WeightedGraph:
    return G if isinstance(G, WeightedGraph) else G.as_weighted()


def as_graph(G: AnyGraph) -> Graph:
    return G.underlying if isinstance(G, WeightedGraph) else G


# ---------------------------------------------------------------------------
# Named graphs
# ---------------------------------------------------------------------------

def cycle_graph(length: int) -> Graph:
    if length < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(length, [(i, (i + 1) % length) for i in range(length)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_multipartite_graph(*sizes: int) -> Graph:
    """Complete multipartite graph; parts are consecutive vertex blocks."""
    labels = [i for i, s in enumerate(sizes) for _ in range(s)]
    n = len(labels)
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if labels[u] != labels[v]])


def weighted_triangle(a, b, c) -> WeightedGraph:
    """``T_{a,b,c}``: weight ``a`` on 01, ``b`` on 02, ``c`` on 12."""
    return WeightedGraph(3, {(0, 1): a, (0, 2): b, (1, 2): c})


def random_graph_min_degree(n: int, min_degree: int, rng: random.Random) -> Graph:
    """Random graph with minimum degree at least ``min_degree``.

    Starts from ``K_n`` and visits the edges in random order, deleting each
    one whose removal keeps both endpoints at ``min_degree`` or more. The
    result sits close to the degree bound.
    """
    if not 0 <= min_degree <= n - 1:
        raise ValueError("min_degree must lie in 0..n-1")
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    deg = [n - 1] * n
    keep = []
    for u, v in pairs:
        if deg[u] > min_degree and deg[v] > min_degree:
            deg[u] -= 1
            deg[v] -= 1
        else:
            keep.append((u, v))
    return Graph(n, keep)


def disjoint_union(G: Graph, H: Graph) -> Graph:
    shift = G.n
    return Graph(G.n + H.n, list(G.edges) + [(u + shift, v + shift) for u, v in H.edges])


# ---------------------------------------------------------------------------
# Basic measures
# ---------------------------------------------------------------------------

def total_weight(W: AnyGraph) -> Fraction:
    """Sum of all edge weights (the edge count for a plain graph)."""
    if isinstance(W, Graph):
        return Fraction(len(W.edges))
    return sum(W.weights.values(), Fraction(0))


def degree_gcd(G: AnyGraph) -> int:
    """gcd of the vertex degrees; 0 when ``G`` has no edges."""
    return reduce(math.gcd, as_graph(G).degrees(), 0)


def is_divisible(G: AnyGraph, F: AnyGraph) -> bool:
    """True iff ``|E(F)|`` divides ``|E(G)|`` and ``gcd(F)`` divides ``gcd(G)``."""
    G, F = as_graph(G), as_graph(F)
    if not F.edges:
        raise ValueError("divisibility is undefined for an edgeless F")
    return G.num_edges() % F.num_edges() == 0 and degree_gcd(G) % degree_gcd(F) == 0


# ---------------------------------------------------------------------------
# Scaled copies
# ---------------------------------------------------------------------------

def is_scaled_copy(W1: AnyGraph, W2: AnyGraph) -> Fraction | None:
    """Return ``alpha`` if ``W1`` is similar to ``W2`` with scale factor ``alpha``.

    That is, some isomorphism ``f`` of the underlying graphs satisfies
    ``w1(e) == alpha * w2(f(e))`` for every edge. Returns ``None`` otherwise.
    Brute-force backtracking; meant for templates with a handful of vertices.
    """
    W1, W2 = as_weighted(W1), as_weighted(W2)
    if W1.n != W2.n or W1.num_edges() != W2.num_edges():
        return None
    if W1.num_edges() == 0:
        return Fraction(1)
    r1 = sorted(W1.weights.values())
    r2 = sorted(W2.weights.values())
    alpha = r1[0] / r2[0]
    if any(a != alpha * b for a, b in zip(r1, r2)):
        return None
    if W1.n == 3:
        # all triangles with the same edge count are isomorphic; sorted ratios decide
        if W1.num_edges() == 3:
            return alpha
    g1, g2 = W1.underlying, W2.underlying
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return None

    order = sorted(range(W1.n), key=lambda v: -g1.degree(v))
    image: dict[int, int] = {}
    used = [False] * W2.n

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        x = order[k]
        for y in range(W2.n):
            if used[y] or g2.degree(y) != g1.degree(x):
                continue
            ok = True
            for x2, y2 in image.items():
                w1 = W1.weight(x, x2)
                if w1 != alpha * W2.weight(y, y2):
                    ok = False
                    break
            if not ok:
                continue
            image[x] = y
            used[y] = True
            if extend(k + 1):
                return True
            del image[x]
            used[y] = False
        return False

    return alpha if extend(0) else None


@dataclass(frozen=True)
class ScaledCopy:
    """``alpha`` times ``template``, placed in a host via ``embedding``.

    ``embedding[i]`` is the host vertex receiving template vertex ``i``.
    """

    template: WeightedGraph
    embedding: tuple[int, ...]
    alpha: Fraction
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "embedding", tuple(self.embedding))
        if not isinstance(self.alpha, Fraction):
            object.__setattr__(self, "alpha", _as_fraction(self.alpha))
        if len(self.embedding) != self.template.n:
            raise ValueError("embedding length must equal the template vertex count")
        if len(set(self.embedding)) != len(self.embedding):
            raise ValueError("embedding is not injective")
        if self.alpha <= 0:
            raise ValueError("scale factor must be positive")

    def edge_weights(self) -> dict[Edge, Fraction]:
        """Weight this copy places on each host edge it covers."""
        f = self.embedding
        return {edge(f[u], f[v]): self.alpha * w for (u, v), w in self.template.weights.items()}

    def as_weighted(self, n: int) -> WeightedGraph:
        return WeightedGraph(n, self.edge_weights())


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Verification:
    """Outcome of checking a family of scaled copies against a host.

    ``status`` is ``"exact"``, ``"leftover"`` or ``"violation"``.
    ``violations`` lists ``(edge, excess)`` in ascending edge order.
    """

    status: str
    leftover: WeightedGraph
    violations: tuple[tuple[Edge, Fraction], ...] = ()

    @property
    def exact(self) -> bool:
        return self.status == "exact"

    @property
    def first_violation(self) -> tuple[Edge, Fraction] | None:
        return self.violations[0] if self.violations else None

    def describe(self) -> str:
        if self.status == "violation":
            (u, v), excess = self.violations[0]
            return f"violation: edge {u} {v} oversubscribed by {excess}"
        if self.status == "leftover":
            return f"leftover: {self.leftover.num_edges()} edges, weight {total_weight(self.leftover)}"
        return "exact"


def verify_fractional_decomposition(host: AnyGraph, copies: Iterable[ScaledCopy]) -> Verification:
    """Sum the weight every copy places on each host edge, exactly.

    Raises ``ValueError`` if a copy uses a pair that is not a host edge.
    """
    host = as_weighted(host)
    # per-edge running sums as [numerator, denominator] pairs of ints
    used: dict[Edge, list[int]] = {}
    hw = host.weights
    for c in copies:
        f = c.embedding
        if max(f, default=-1) >= host.n:
            raise ValueError(f"copy embedding {f} leaves the host vertex set")
        an, ad = c.alpha.numerator, c.alpha.denominator
        for (u, v), w in c.template.weights.items():
            a, b = f[u], f[v]
            e = (a, b) if a < b else (b, a)
            if e not in hw:
                raise ValueError(f"copy uses {e}, which is not a host edge")
            num, den = an * w.numerator, ad * w.denominator
            cur = used.get(e)
            if cur is None:
                used[e] = [num, den]
            elif cur[1] == den:
                cur[0] += num
            else:
                lcm = cur[1] // math.gcd(cur[1], den) * den
                cur[0] = cur[0] * (lcm // cur[1]) + num * (lcm // den)
                cur[1] = lcm
    leftover = {}
    violations = []
    for e, w in host.weights.items():
        acc = used.get(e)
        rest = w - Fraction(acc[0], acc[1]) if acc else w
        if rest > 0:
            leftover[e] = rest
        elif rest < 0:
            violations.append((e, -rest))
    left = WeightedGraph(host.n, leftover)
    if violations:
        return Verification("violation", left, tuple(violations))
    return Verification("exact" if not leftover else "leftover", left)


@dataclass(frozen=True)
class FractionalDecomposition:
    """A host together with a finite list of scaled copies."""

    host: WeightedGraph
    copies: tuple[ScaledCopy, ...]

    def __post_init__(self):
        object.__setattr__(self, "host", as_weighted(self.host))
        object.__setattr__(self, "copies", tuple(self.copies))

    @cached_property
    def verification(self) -> Verification:
        return verify_fractional_decomposition(self.host, self.copies)

    @property
    def leftover(self) -> WeightedGraph:
        return self.verification.leftover

    def is_exact(self) -> bool:
        return self.verification.exact
