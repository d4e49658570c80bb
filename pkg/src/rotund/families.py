"""Finite set families and their intersection indices.

A family lives on a finite ground space ``{0, ..., n-1}``; each member is
stored as an integer bitmask.  Python integers are unbounded, so the same
mask path serves every ground size.

The indices computed here:

``l_index``
    largest number of members sharing a common point.
``gamma_k``
    smallest ``l`` over the k-element subfamilies.
``win`` / ``win_tilde``
    ``min_k gamma_k / k`` and ``min_{k>=2} gamma_k / (k - 1)``.

All values are exact (``int`` or ``fractions.Fraction``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Iterable, Sequence


class FamilyError(ValueError):
    """Malformed family or out-of-range index request."""


@dataclass(frozen=True)
class GroundSpace:
    n: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n < 1:
            raise FamilyError("ground space needs n >= 1")
        if self.labels is not None and len(self.labels) != self.n:
            raise FamilyError(f"expected {self.n} labels, got {len(self.labels)}")


def to_mask(points: Iterable[int], n: int) -> int:
    mask = 0
    for p in points:
        if not 0 <= p < n:
            raise FamilyError(f"point {p} outside ground space of size {n}")
        mask |= 1 << p
    return mask


def mask_points(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class SetFamily:
    """An ordered family of subsets of a ground space.

    ``masks[j]`` has bit ``p`` set when point ``p`` belongs to set ``j``.
    Validation of emptiness is deferred to the index computations, which
    report ``"empty set in family"``; duplicates are rejected at
    construction unless ``allow_duplicates`` is set.
    """

    ground: GroundSpace
    masks: tuple[int, ...]
    allow_duplicates: bool = False

    def __post_init__(self):
        full = (1 << self.ground.n) - 1
        for mk in self.masks:
            if mk < 0 or mk & ~full:
                raise FamilyError("set has points outside the ground space")
        if not self.allow_duplicates and len(set(self.masks)) != len(self.masks):
            raise FamilyError("duplicate sets in family (pass allow_duplicates=True)")

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]], *,
                  labels: Sequence[str] | None = None,
                  allow_duplicates: bool = False) -> "SetFamily":
        ground = GroundSpace(n, tuple(labels) if labels is not None else None)
        return cls(ground, tuple(to_mask(s, n) for s in sets), allow_duplicates)

    def __len__(self) -> int:
        return len(self.masks)

    @property
    def n(self) -> int:
        return self.ground.n

    def sets(self) -> list[list[int]]:
        return [mask_points(mk) for mk in self.masks]

    def subfamily(self, indices: Iterable[int]) -> "SetFamily":
        return SetFamily(self.ground, tuple(self.masks[j] for j in indices),
                         self.allow_duplicates)

    def permuted(self, order: Sequence[int]) -> "SetFamily":
        return self.subfamily(order)

    def degrees(self, indices: Iterable[int] | None = None) -> list[int]:
        """Number of (selected) members containing each ground point."""
        idx = range(len(self.masks)) if indices is None else indices
        deg = [0] * self.n
        for j in idx:
            for p in mask_points(self.masks[j]):
                deg[p] += 1
        return deg


def _check(family: SetFamily) -> None:
    if len(family) == 0:
        raise FamilyError("empty family")
    if any(mk == 0 for mk in family.masks):
        raise FamilyError("empty set in family")


def l_index(family: SetFamily) -> tuple[int, int]:
    """Return ``(l, point)``: the maximum point degree and the first point attaining it.

    A subfamily has nonempty intersection exactly when one point lies in
    all its members, so the least ``k`` beyond which every subfamily is
    disjoint is the largest degree.
    """
    _check(family)
    deg = family.degrees()
    best = max(deg)
    return best, deg.index(best)


def _min_l_of_size(family: SetFamily, k: int) -> tuple[int, tuple[int, ...]]:
    # depth-first over index-sorted k-subsets; prune when the running
    # maximum degree already matches the incumbent
    members = [mask_points(mk) for mk in family.masks]
    m, n = len(members), family.n
    floor = max(1, ceil(k / n))
    best = k + 1
    best_pick: tuple[int, ...] = ()
    deg = [0] * n
    pick: list[int] = []

    def dfs(start: int, cur: int) -> bool:
        nonlocal best, best_pick
        if len(pick) == k:
            best, best_pick = cur, tuple(pick)
            return best == floor
        for j in range(start, m - (k - len(pick)) + 1):
            pts = members[j]
            new = cur
            for p in pts:
                deg[p] += 1
                if deg[p] > new:
                    new = deg[p]
            pick.append(j)
            done = new < best and dfs(j + 1, new)
            pick.pop()
            for p in pts:
                deg[p] -= 1
            if done:
                return True
        return False

    dfs(0, 0)
    return best, best_pick


def gamma_k(family: SetFamily, k: int) -> int:
    """Smallest ``l`` over subfamilies with exactly ``k`` members."""
    _check(family)
    if not 1 <= k <= len(family):
        raise FamilyError(f"k={k} out of range 1..{len(family)}")
    return _min_l_of_size(family, k)[0]


def gamma_profile(family: SetFamily) -> tuple[list[int], list[tuple[int, ...]]]:
    """``gamma_k`` for k = 1..m together with a witness subfamily for each."""
    _check(family)
    values, witnesses = [], []
    for k in range(1, len(family) + 1):
        v, w = _min_l_of_size(family, k)
        values.append(v)
        witnesses.append(w)
    return values, witnesses


def _ratio_min(gamma: Sequence[int], start: int, shift: int) -> tuple[Fraction, int]:
    best, best_k = None, None
    for k in range(start, len(gamma) + 1):
        r = Fraction(gamma[k - 1], k - shift)
        if best is None or r < best:
            best, best_k = r, k
    return best, best_k


def win(family: SetFamily) -> Fraction:
    """Weak intersection number: ``min l(D)/|D|`` over nonempty subfamilies."""
    gamma, _ = gamma_profile(family)
    return _ratio_min(gamma, 1, 0)[0]


def win_tilde(family: SetFamily) -> Fraction:
    """``min l(D)/(|D|-1)`` over subfamilies with at least two members."""
    if len(family) < 2:
        raise FamilyError("win_tilde undefined for families of size < 2")
    gamma, _ = gamma_profile(family)
    return _ratio_min(gamma, 2, 1)[0]


@dataclass
class IndexReport:
    l_value: int
    l_point: int
    gamma: list[int]
    win_value: Fraction
    win_tilde_value: Fraction | None
    gamma_witnesses: list[tuple[int, ...]] = field(default_factory=list)
    win_witness: tuple[int, ...] = ()
    win_tilde_witness: tuple[int, ...] | None = None

    def to_dict(self) -> dict:
        def q(x):
            return None if x is None else f"{x.numerator}/{x.denominator}"
        return {
            "l": self.l_value,
            "l_witness_point": self.l_point,
            "gamma": list(self.gamma),
            "gamma_witnesses": [list(w) for w in self.gamma_witnesses],
            "win": q(self.win_value),
            "win_witness": list(self.win_witness),
            "win_tilde": q(self.win_tilde_value),
            "win_tilde_witness": (None if self.win_tilde_witness is None
                                  else list(self.win_tilde_witness)),
        }


def index_report(family: SetFamily) -> IndexReport:
    l_val, l_pt = l_index(family)
    gamma, wit = gamma_profile(family)
    w, wk = _ratio_min(gamma, 1, 0)
    if len(family) >= 2:
        wt, wtk = _ratio_min(gamma, 2, 1)
        wt_wit = wit[wtk - 1]
    else:
        wt, wt_wit = None, None
    return IndexReport(l_val, l_pt, gamma, w, wt, wit, wit[wk - 1], wt_wit)
