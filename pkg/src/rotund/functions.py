"""Finite model of C(K).

On a finite discrete ground space every function is continuous, so an
element of C(K) is just a vector of values.  Exact vectors are numpy
``object`` arrays of :class:`fractions.Fraction`; floating vectors are
``float64`` arrays.  The norm routines accept either and stay exact on
exact input wherever the result is rational (the sup norm, and every
squared norm).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

NORM_KINDS = ("sup", "l2", "triple", "euclidean")
FLOAT_TOL = 1e-12


def as_rational(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, (int, np.integer)):
        return Fraction(int(v))
    raise TypeError(f"not an exact value: {v!r}")


def vector(values: Iterable, exact: bool | None = None) -> np.ndarray:
    """Build a function vector.

    ``exact=None`` keeps rationals exact when every entry is an int,
    Fraction or ``"p/q"`` string and falls back to float64 otherwise.
    """
    vals = list(values)
    if exact is None:
        exact = all(isinstance(v, (int, np.integer, Fraction, str)) for v in vals)
    if exact:
        return np.array([as_rational(v) for v in vals], dtype=object)
    return np.asarray([float(v) for v in vals], dtype=float)


def is_exact(f: np.ndarray) -> bool:
    return f.dtype == object


@dataclass(frozen=True)
class Measure:
    """Nonnegative rational weights, one per ground point."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        w = tuple(as_rational(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if not w:
            raise ValueError("measure on an empty ground space")
        if any(x < 0 for x in w):
            raise ValueError("measure weights must be nonnegative")

    @classmethod
    def uniform(cls, n: int) -> "Measure":
        return cls(tuple(Fraction(1, n) for _ in range(n)))

    @classmethod
    def dirac(cls, n: int, point: int) -> "Measure":
        return cls(tuple(Fraction(int(i == point)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    @property
    def is_probability(self) -> bool:
        return self.total == 1

    @property
    def strictly_positive(self) -> bool:
        return all(x > 0 for x in self.weights)

    def of(self, points: Iterable[int]) -> Fraction:
        return sum((self.weights[p] for p in points), Fraction(0))

    def as_array(self, exact: bool = True) -> np.ndarray:
        if exact:
            return np.array(self.weights, dtype=object)
        return np.array([float(x) for x in self.weights])


@dataclass(frozen=True)
class NormSpec:
    kind: str
    measure: Measure | None = None

    def __post_init__(self):
        if self.kind not in NORM_KINDS:
            raise ValueError(f"unknown norm {self.kind!r}; expected one of {NORM_KINDS}")
        if self.kind in ("l2", "triple"):
            if self.measure is None:
                raise ValueError(f"{self.kind} norm needs a measure")
            if not self.measure.is_probability:
                raise ValueError("measure must be a probability measure")


def _check_ground(spec: NormSpec, f: np.ndarray) -> None:
    if spec.measure is not None and f.shape[-1] != spec.measure.n:
        raise ValueError(f"ground mismatch: vector has {f.shape[-1]} points, "
                         f"measure has {spec.measure.n}")


def norm_sq(spec: NormSpec, f: np.ndarray):
    """Squared norm; exact (Fraction) on exact input, float otherwise.

    Works row-wise on 2-D input.
    """
    _check_ground(spec, f)
    exact = is_exact(f)
    if spec.kind == "euclidean":
        return (f * f).sum(axis=-1)
    sup = np.abs(f).max(axis=-1)
    if spec.kind == "sup":
        return sup * sup
    integral = (f * f * spec.measure.as_array(exact)).sum(axis=-1)
    if spec.kind == "l2":
        return integral
    return sup * sup + integral


def norm_eval(spec: NormSpec, f: np.ndarray):
    """Norm of ``f``.  The sup norm of an exact vector is returned exactly."""
    if spec.kind == "sup":
        _check_ground(spec, f)
        return np.abs(f).max(axis=-1)
    sq = norm_sq(spec, f)
    if np.ndim(sq) == 0:
        return math.sqrt(sq)
    return np.sqrt(np.asarray(sq, dtype=float))


def truncate_decompose(g: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split ``g = g0 + g1`` with ``g1`` the clamp of ``g`` to [-1, 1].

    Then ``||g1|| <= 1`` and ``||g0||_inf = (||g||_inf - 1)^+``.
    """
    one = Fraction(1) if is_exact(g) else 1.0
    g1 = np.minimum(np.maximum(g, -one), one)
    return g - g1, g1


def urysohn_indicator(points: Iterable[int], n: int,
                      values: Sequence | None = None) -> np.ndarray:
    """A function of sup norm 1 vanishing off ``points``.

    The default is the 0/1 indicator.  A custom ``values`` vector is
    accepted when it has sup norm 1, is zero off the set, and takes
    values in [0, 1] (the bound for the two-step martingale needs
    ``0 <= f <= 1``).
    """
    pts = sorted(set(points))
    if not pts:
        raise ValueError("Urysohn function of an empty set")
    if any(not 0 <= p < n for p in pts):
        raise ValueError("point outside the ground space")
    if values is None:
        f = np.array([Fraction(0)] * n, dtype=object)
        f[pts] = Fraction(1)
        return f
    f = vector(values)
    if f.shape != (n,):
        raise ValueError(f"expected {n} values, got {f.shape[0]}")
    off = np.ones(n, dtype=bool)
    off[pts] = False
    if np.any(f[off] != 0):
        raise ValueError("Urysohn function must vanish off its set")
    if np.any(f < 0) or np.any(f > 1):
        raise ValueError("Urysohn function values must lie in [0, 1]")
    if np.abs(f).max() != 1:
        raise ValueError("Urysohn function must have sup norm 1")
    return f


def family_functions(family, urysohn: Sequence[Sequence] | None = None) -> np.ndarray:
    """Stack ``f_G`` for every member ``G`` of ``family`` as rows."""
    rows = []
    for j, pts in enumerate(family.sets()):
        custom = None if urysohn is None else urysohn[j]
        rows.append(urysohn_indicator(pts, family.n, custom))
    return np.array(rows, dtype=rows[0].dtype)


def parallelogram_ratio(spec: NormSpec, x: np.ndarray, y: np.ndarray):
    """``(||x+y||^2 + ||x-y||^2) / (2 ||y||^2)``; always >= 1 by convexity."""
    return (norm_sq(spec, x + y) + norm_sq(spec, x - y)) / (2 * norm_sq(spec, y))
