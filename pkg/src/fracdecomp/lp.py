"""Exact Phase-I simplex over the rationals.

Solves the feasibility problem ``A x = b, x >= 0`` with Bland's rule, so the
pivot sequence is deterministic and always terminates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    x: tuple[Fraction, ...] | None = None
    # Farkas vector: y.A >= 0 componentwise and y.b < 0 (only when infeasible)
    farkas: tuple[Fraction, ...] | None = None
    pivots: int = 0


def solve_feasibility(A: Sequence[Sequence], b: Sequence) -> FeasibilityResult:
    """Find ``x >= 0`` with ``A x = b`` in exact arithmetic, or a Farkas certificate.

    ``A`` is a dense ``m x n`` matrix given as rows. Entries may be ints or
    Fractions.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if any(len(row) != n for row in A) or len(b) != m:
        raise ValueError("inconsistent LP dimensions")

    # Rows with negative rhs are negated; sign[i] remembers the flip.
    sign = [(-1 if Fraction(bi) < 0 else 1) for bi in b]
    width = n + m
    T = []
    for i in range(m):
        s = sign[i]
        row = [Fraction(s * a) for a in A[i]] + [Fraction(0)] * m + [Fraction(s * b[i])]
        row[n + i] = Fraction(1)
        T.append(row)
    basis = [n + i for i in range(m)]

    # Reduced costs of the Phase-I objective (sum of artificials).
    cost = [Fraction(0)] * (width + 1)
    for row in T:
        for j in range(n):
            cost[j] -= row[j]
        cost[width] -= row[width]

    pivots = 0
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][width] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # Phase-I objective is bounded below by 0, so this cannot happen.
            raise ArithmeticError("unbounded Phase-I problem")
        _pivot(T, cost, leave, enter)
        basis[leave] = enter
        pivots += 1

    objective = -cost[width]
    if objective > 0:
        # Artificial reduced costs are 1 - u_i where u is the Phase-I dual.
        u = [1 - cost[n + i] for i in range(m)]
        farkas = tuple(-u[i] * sign[i] for i in range(m))
        return FeasibilityResult(False, farkas=farkas, pivots=pivots)

    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = T[i][width]
    return FeasibilityResult(True, x=tuple(x), pivots=pivots)


def _pivot(T: list[list[Fraction]], cost: list[Fraction], r: int, c: int) -> None:
    prow = T[r]
    p = prow[c]
    if p != 1:
        inv = 1 / p
        for k, v in enumerate(prow):
            if v:
                prow[k] = v * inv
    nz = [k for k, v in enumerate(prow) if v]
    for i, row in enumerate(T):
        if i != r:
            f = row[c]
            if f:
                for k in nz:
                    row[k] -= f * prow[k]
    f = cost[c]
    if f:
        for k in nz:
            cost[k] -= f * prow[k]
