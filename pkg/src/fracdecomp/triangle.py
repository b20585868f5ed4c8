"""Fractional decompositions of one weighted triangle into scaled copies of another.

A weighted triangle is described by its sorted weight triple. A decomposition
of ``w`` into copies of ``e`` is a map from permutations ``pi`` of ``(0, 1, 2)``
to nonnegative coefficients with ``sum_pi c_pi * (e[pi[0]], e[pi[1]], e[pi[2]]) == w``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Sequence

from .lp import solve_feasibility

Triple = tuple[Fraction, Fraction, Fraction]

#: The six permutations of ``(0, 1, 2)`` in lexicographic order.
PERMUTATIONS: tuple[tuple[int, int, int], ...] = tuple(permutations(range(3)))


class InfeasibleError(ValueError):
    """Raised when no fractional decomposition exists."""


def _triple(values: Sequence) -> Triple:
    if len(values) != 3:
        raise ValueError("a weighted triangle has exactly three weights")
    out = []
    for v in values:
        if isinstance(v, float):
            raise TypeError("floating-point weights are not accepted")
        out.append(Fraction(v))
    return tuple(out)  # type: ignore[return-value]


def _sorted_positive(values: Sequence, what: str) -> Triple:
    t = _triple(values)
    if not t[0] >= t[1] >= t[2]:
        raise ValueError(f"{what} must be sorted in descending order, got {t}")
    if t[2] <= 0:
        raise ValueError(f"{what} must be positive, got {t}")
    return t


@dataclass(frozen=True)
class TriangleTemplate:
    """The weighted triangle ``T_{e1,e2,e3}`` with ``e1 >= e2 >= e3 > 0``."""

    e1: Fraction
    e2: Fraction
    e3: Fraction

    def __post_init__(self):
        t = _sorted_positive((self.e1, self.e2, self.e3), "template weights")
        object.__setattr__(self, "e1", t[0])
        object.__setattr__(self, "e2", t[1])
        object.__setattr__(self, "e3", t[2])

    @classmethod
    def of(cls, e) -> "TriangleTemplate":
        if isinstance(e, TriangleTemplate):
            return e
        return cls(*e)

    @property
    def weights(self) -> Triple:
        return (self.e1, self.e2, self.e3)

    @property
    def name(self) -> str:
        return "T" + ",".join(str(x) for x in self.weights)

    def __iter__(self):
        return iter(self.weights)


@dataclass(frozen=True)
class TriangleDecomposition:
    """Nonzero coefficients keyed by permutation, in lexicographic permutation order."""

    template: Triple
    target: Triple
    coefficients: dict[tuple[int, int, int], Fraction]

    def reconstruct(self) -> Triple:
        e = self.template
        out = [Fraction(0)] * 3
        for pi, c in self.coefficients.items():
            for slot in range(3):
                out[slot] += c * e[pi[slot]]
        return tuple(out)  # type: ignore[return-value]

    def __len__(self):
        return len(self.coefficients)


def eq2_feasible(w: Sequence, e) -> bool:
    """Exact test for whether ``T_w`` has a fractional ``T_e``-decomposition.

    Both triples must be sorted in descending order. The smallest share of
    ``w`` must be at least the smallest share of ``e``, and the largest share
    of ``w`` at most the largest share of ``e``.
    """
    w = _sorted_positive(w, "target weights")
    e = TriangleTemplate.of(e).weights
    sw, se = sum(w), sum(e)
    # cross-multiplied: w3/sw >= e3/se and w1/sw <= e1/se
    return w[2] * se >= e[2] * sw and w[0] * se <= e[0] * sw


def cycle_feasibility_simplified(w: Sequence, length: int) -> bool:
    """The test against ``T_{l-2,1,1}`` reduced to ``(l-1) w3 >= w1 + w2``."""
    if length < 3 or length % 2 == 0:
        raise ValueError("cycle length must be odd and at least 3")
    w = _sorted_positive(w, "target weights")
    return (length - 1) * w[2] >= w[0] + w[1]


def solve_3x3(M: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """Gauss-Jordan elimination in exact arithmetic; ``None`` if singular."""
    A = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(M, rhs)]
    k = len(A)
    for col in range(k):
        piv = next((r for r in range(col, k) if A[r][col] != 0), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        A[col] = [v / p for v in A[col]]
        for r in range(k):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return [A[r][k] for r in range(k)]


def _column(e: Triple, pi: tuple[int, int, int]) -> Triple:
    return (e[pi[0]], e[pi[1]], e[pi[2]])


@lru_cache(maxsize=65536)
def _search(w: Triple, e: Triple) -> tuple[tuple[tuple[int, int, int], Fraction], ...] | None:
    cols = [_column(e, pi) for pi in PERMUTATIONS]
    for subset in combinations(range(6), 3):
        # rows are triangle slots, columns the chosen permutations
        M = [[cols[j][slot] for j in subset] for slot in range(3)]
        sol = solve_3x3(M, w)
        if sol is None or any(c < 0 for c in sol):
            continue
        return tuple((PERMUTATIONS[j], c) for j, c in zip(subset, sol) if c != 0)

    # Every 3-subset failed: either the columns do not span (e1 == e2 == e3)
    # or no nonnegative combination exists at all.
    A = [[cols[j][slot] for j in range(6)] for slot in range(3)]
    res = solve_feasibility(A, list(w))
    if not res.feasible:
        return None
    return tuple((PERMUTATIONS[j], c) for j, c in enumerate(res.x) if c != 0)


def find_decomposition(w: Sequence, e) -> TriangleDecomposition | None:
    """Search for coefficients without consulting :func:`eq2_feasible`.

    All 20 three-column subsets of the six permutation columns are tried in
    lexicographic order; the first nonsingular system with a nonnegative
    solution wins. If every subset fails, an exact simplex over all six
    columns decides. Returns ``None`` when no decomposition exists.
    """
    w = _sorted_positive(w, "target weights")
    e = TriangleTemplate.of(e).weights
    found = _search(w, e)
    return None if found is None else TriangleDecomposition(e, w, dict(found))


def decompose_triangle(w: Sequence, e) -> TriangleDecomposition:
    """Nonnegative coefficients expressing sorted ``w`` via permutations of ``e``.

    Raises:
        InfeasibleError: if :func:`eq2_feasible` rejects ``(w, e)``.
        RuntimeError: if the test passes but the search finds nothing,
            which would mean a bug in this module.
    """
    w = _sorted_positive(w, "target weights")
    e = TriangleTemplate.of(e).weights
    if not eq2_feasible(w, e):
        raise InfeasibleError(f"T{w} has no fractional T{e}-decomposition")
    found = _search(w, e)
    if found is None:
        raise RuntimeError(f"no decomposition of {w} into {e} although the feasibility test passed")
    return TriangleDecomposition(e, w, dict(found))


def decompose_unsorted(w: Sequence, e) -> tuple[TriangleDecomposition, tuple[int, int, int]]:
    """Sort ``w`` descending, decompose, and return the sorting permutation.

    ``order[k]`` is the original position of the ``k``-th largest weight, so
    the coefficient on ``pi`` puts ``e[pi[k]]`` onto original edge ``order[k]``.
    """
    w = _triple(w)
    order = tuple(sorted(range(3), key=lambda i: (-w[i], i)))
    dec = decompose_triangle([w[i] for i in order], e)
    return dec, order  # type: ignore[return-value]
