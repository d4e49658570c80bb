"""Measure side of the intersection numbers.

``max_min_measure`` finds the probability measure on the ground space
maximizing the smallest mass of a member set.  It is solved through the
equivalent packing LP

    maximize sum_B z_B   s.t.  sum_{B containing p} z_B <= 1  for every point p

whose optimum ``tau`` gives the max-min value ``1/tau``.  The packing
solution, rescaled, is an optimal weighting of the sets; the LP dual,
rescaled, is an optimal measure.  Both sides are checked exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .families import FamilyError, SetFamily, _check
from .functions import Measure
from .simplex import simplex_max

DEFAULT_MAX_LEN = 12


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass
class LPCertificate:
    value: Fraction
    primal: Measure
    dual: list[Fraction]
    status: str = "optimal"
    sets: list[list[int]] = field(default_factory=list, repr=False)

    @property
    def primal_value(self) -> Fraction:
        return min(self.primal.of(pts) for pts in self.sets)

    @property
    def dual_value(self) -> Fraction:
        n = self.primal.n
        cover = [Fraction(0)] * n
        for lam, pts in zip(self.dual, self.sets):
            for p in pts:
                cover[p] += lam
        return max(cover)

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "value": _q(self.value),
            "primal": [_q(w) for w in self.primal.weights],
            "dual": [_q(w) for w in self.dual],
        }


def max_min_measure(family: SetFamily) -> LPCertificate:
    _check(family)
    sets = family.sets()
    n, m = family.n, len(sets)
    A = [[int(p in s) for s in map(set, sets)] for p in range(n)]
    sol = simplex_max(A, [1] * n, [1] * m)
    tau = sol.value
    mu = Measure(tuple(y / tau for y in sol.y))
    lam = [z / tau for z in sol.x]
    cert = LPCertificate(1 / tau, mu, lam, sets=sets)
    if cert.primal_value != cert.value or cert.dual_value != cert.value:
        raise AssertionError("LP certificate failed exact duality check")
    return cert


def _feasible(sets: list[list[int]], n: int, length: int, cap: int) -> bool:
    # is there a count vector with sum == length and every point covered <= cap?
    m = len(sets)
    room = [cap] * n

    def upper(j: int) -> int:
        return min(room[p] for p in sets[j])

    def dfs(j: int, need: int) -> bool:
        if need == 0:
            return True
        if j == m:
            return False
        if sum(upper(t) for t in range(j, m)) < need:
            return False
        top = min(upper(j), need)
        for c in range(top, -1, -1):
            for p in sets[j]:
                room[p] -= c
            ok = dfs(j + 1, need - c)
            for p in sets[j]:
                room[p] += c
            if ok:
                return True
        return False

    return dfs(0, length)


def kelley_number_rep(family: SetFamily, max_len: int = DEFAULT_MAX_LEN) -> tuple[Fraction, int]:
    """Repetition-allowed intersection number truncated at ``max_len``.

    Minimum over sequences of members of length at most ``max_len`` of the
    largest number of entries sharing a point, divided by the length.
    Returns ``(value, shortest length attaining it)``.
    """
    if max_len < 1:
        raise FamilyError("max_len must be >= 1")
    _check(family)
    sets = family.sets()
    n = family.n
    best, best_len = Fraction(1), 1   # a single member always gives 1/1
    for length in range(2, max_len + 1):
        cap = 1
        while Fraction(cap, length) < best:
            if _feasible(sets, n, length, cap):
                best, best_len = Fraction(cap, length), length
                break
            cap += 1
    return best, best_len


@dataclass
class DualityReport:
    primal_value: Fraction
    dual_value: Fraction
    kelley_rep: Fraction
    kelley_len: int
    max_len: int

    @property
    def strong_duality(self) -> bool:
        return self.primal_value == self.dual_value

    @property
    def gap(self) -> Fraction:
        return self.kelley_rep - self.primal_value

    @property
    def ok(self) -> bool:
        return self.strong_duality and self.gap >= 0

    def to_dict(self) -> dict:
        return {
            "lp_value": _q(self.primal_value),
            "dual_value": _q(self.dual_value),
            "strong_duality": self.strong_duality,
            "kelley_rep": _q(self.kelley_rep),
            "kelley_len": self.kelley_len,
            "max_len": self.max_len,
            "gap": _q(self.gap),
            "ok": self.ok,
        }


def verify_duality(family: SetFamily, max_len: int = DEFAULT_MAX_LEN) -> DualityReport:
    cert = max_min_measure(family)
    rep, rep_len = kelley_number_rep(family, max_len)
    return DualityReport(cert.primal_value, cert.dual_value, rep, rep_len, max_len)
