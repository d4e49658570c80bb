"""Dense-tableau simplex over exact rationals.

Only the form the package needs is supported::

    maximize  c.x   subject to  A x <= b,  x >= 0,   with b >= 0

so the slack basis is feasible from the start and no phase one is
required.  Bland's rule (lowest entering index, lowest leaving basic
variable on ratio ties) rules out cycling.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class UnboundedLP(ArithmeticError):
    pass


@dataclass
class LPSolution:
    value: Fraction
    x: list[Fraction]
    y: list[Fraction]   # optimal dual, one entry per constraint row
    pivots: int


def simplex_max(A: Sequence[Sequence], b: Sequence, c: Sequence) -> LPSolution:
    m, n = len(A), len(c)
    if any(len(row) != n for row in A) or len(b) != m:
        raise ValueError("inconsistent LP dimensions")
    if any(Fraction(bi) < 0 for bi in b):
        raise ValueError("right-hand side must be nonnegative")

    width = n + m
    # row i: [A_i | e_i | b_i]; objective row holds reduced costs c_j - z_j
    T = [[Fraction(v) for v in A[i]] + [Fraction(int(i == r)) for r in range(m)]
         + [Fraction(b[i])] for i in range(m)]
    obj = [Fraction(v) for v in c] + [Fraction(0)] * m + [Fraction(0)]
    basis = list(range(n, n + m))

    pivots = 0
    while True:
        enter = next((j for j in range(width) if obj[j] > 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if (best is None or ratio < best
                        or (ratio == best and basis[i] < basis[leave])):
                    leave, best = i, ratio
        if leave is None:
            raise UnboundedLP(f"objective unbounded along column {enter}")

        prow = T[leave]
        piv = prow[enter]
        if piv != 1:
            prow[:] = [v / piv for v in prow]
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [u - f * v for u, v in zip(T[i], prow)]
        f = obj[enter]
        obj = [u - f * v for u, v in zip(obj, prow)]
        basis[leave] = enter
        pivots += 1

    x = [Fraction(0)] * width
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    y = [-obj[n + i] for i in range(m)]
    return LPSolution(-obj[-1], x[:n], y, pivots)
