"""Rotundity geometry of finite-dimensional norms.

Three numerical probes:

* :func:`ured_modulus_estimate` searches for unit vectors x, y with
  ``x - y`` along a fixed direction and ``||x - y|| >= eps`` whose midpoint
  is as close to the sphere as possible.  The returned value is attained
  by the returned pair, so it is an upper bound for the directional
  modulus of rotundity.
* :func:`ui_membership` searches for y with ``||y|| <= t ||x||`` making
  ``(||x+y||^2 + ||x-y||^2) / (2||y||^2)`` small; finding one below
  ``1 + 1/i`` proves ``x`` is not in U_i(t).
* :func:`pur_chain_check` evaluates the chain Cauchy-Schwarz ->
  convexity -> definition for the sqrt(sup^2 + L2^2) norm.

Both searches are multi-start with coordinatewise pattern-search
refinement and are deterministic for a given seed.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._rng import stream
from .functions import Measure, NormSpec, norm_eval, norm_sq, vector

FEAS_TOL = 1e-9
REL_TOL = 1e-10
RATIO_FLOOR_TOL = 1e-12
CERT_MARGIN = 1e-9
DEFAULT_STARTS = 512
DEFAULT_ITERS = 40
REFINE_TOP = 8


def _norms(spec: NormSpec, X: np.ndarray) -> np.ndarray:
    return np.asarray(norm_eval(spec, np.atleast_2d(X)), dtype=float)


def _lattice_points(n: int, limit: int = 729) -> np.ndarray:
    # nonzero points of {-1, 0, 1}^n, or just +-e_k when that is too many
    if 3 ** n <= limit:
        pts = np.array([p for p in itertools.product((-1.0, 0.0, 1.0), repeat=n) if any(p)])
    else:
        eye = np.eye(n)
        pts = np.vstack([eye, -eye])
    return pts


def _pattern_search(obj, W0: np.ndarray, V0: np.ndarray, iters: int, step: float,
                    project=lambda W: W):
    """Coordinatewise pattern search run on several starting points at once.

    Each poll tries +-step along every coordinate; an improving move is
    taken (at most 20 per step size), otherwise the step is halved.  A
    row stops after ``iters`` halvings.
    """
    W, V = W0.copy(), V0.copy()
    R, n = W.shape
    moves = np.vstack([np.eye(n), -np.eye(n)])
    steps = np.full(R, float(step))
    halvings = np.zeros(R, dtype=int)
    streak = np.zeros(R, dtype=int)
    while True:
        live = np.nonzero(halvings < iters)[0]
        if len(live) == 0:
            return W, V
        cand = W[live][:, None, :] + steps[live][:, None, None] * moves[None, :, :]
        cand = project(cand.reshape(-1, n))
        vals = obj(cand).reshape(len(live), 2 * n)
        j = np.argmin(vals, axis=1)
        best = vals[np.arange(len(live)), j]
        better = (best < V[live]) & (streak[live] < 20)
        mv = live[better]
        W[mv] = cand.reshape(len(live), 2 * n, n)[better, j[better]]
        V[mv] = best[better]
        streak[mv] += 1
        st = live[~better]
        steps[st] *= 0.5
        halvings[st] += 1
        streak[st] = 0


@dataclass(frozen=True)
class ModulusQuery:
    spec: NormSpec
    direction: tuple
    epsilon: float
    starts: int = DEFAULT_STARTS
    iters: int = DEFAULT_ITERS
    seed: int = 0


@dataclass
class ModulusReport:
    estimate: float
    x: np.ndarray
    y: np.ndarray
    r: float                 # x - y = r * u, u the direction scaled to unit norm
    unit_direction: np.ndarray
    tol: float = FEAS_TOL

    @property
    def verdict(self) -> str:
        return "direction-degenerate" if self.estimate < self.tol else "positive"

    def to_dict(self) -> dict:
        return {"estimate": round(float(self.estimate), 12),
                "verdict": self.verdict, "tol": self.tol,
                "x": [round(float(v), 12) for v in self.x],
                "y": [round(float(v), 12) for v in self.y],
                "r": round(float(self.r), 12),
                "unit_direction": [round(float(v), 12) for v in self.unit_direction]}


class _Chords:
    """Chords of the unit ball parallel to a fixed unit direction."""

    def __init__(self, spec: NormSpec, u: np.ndarray, eps: float):
        self.spec, self.u, self.eps = spec, u, eps
        e = u / np.linalg.norm(u)
        self.project = lambda W: W - (W @ e)[:, None] * e[None, :]

    def _reach(self, W: np.ndarray, sign: float) -> np.ndarray:
        # largest s >= 0 with ||W + sign*s*u|| <= 1, by bisection
        lo = np.zeros(len(W))
        hi = np.full(len(W), 3.0)
        for _ in range(52):
            mid = 0.5 * (lo + hi)
            inside = _norms(self.spec, W + sign * mid[:, None] * self.u) <= 1.0
            lo = np.where(inside, mid, lo)
            hi = np.where(inside, hi, mid)
        return lo

    def evaluate(self, W: np.ndarray):
        W = np.atleast_2d(W)
        ok = _norms(self.spec, W) <= 1.0
        sp = np.zeros(len(W))
        sm = np.zeros(len(W))
        if ok.any():
            sp[ok] = self._reach(W[ok], 1.0)
            sm[ok] = self._reach(W[ok], -1.0)
        length = sp + sm
        mid = W + 0.5 * (sp - sm)[:, None] * self.u
        val = 1.0 - _norms(self.spec, mid)
        val = np.where(ok & (length >= self.eps * (1 - FEAS_TOL)), val, np.inf)
        return val, sp, sm

    def __call__(self, W):
        return self.evaluate(W)[0]


def ured_modulus_estimate(q: ModulusQuery) -> ModulusReport:
    spec = q.spec
    z = np.asarray([float(v) for v in q.direction])
    zn = float(_norms(spec, z)[0])
    if zn == 0:
        raise ValueError("zero direction")
    if not 0 < q.epsilon <= 2:
        raise ValueError("epsilon must lie in (0, 2]")
    u = z / zn
    n = len(z)
    chords = _Chords(spec, u, q.epsilon)
    rng = stream(q.seed, "modulus")

    G = chords.project(rng.standard_normal((q.starts, n)))
    norms = _norms(spec, G)
    norms[norms == 0] = 1.0
    radius = rng.uniform(0.0, 1.0, q.starts)
    starts = G / norms[:, None] * radius[:, None]
    L = chords.project(_lattice_points(n))
    ln = _norms(spec, L)
    L = L[ln > 1e-12] / ln[ln > 1e-12][:, None]
    starts = np.vstack([L, starts])
    vals = chords(starts)

    order = np.argsort(vals, kind="stable")[:REFINE_TOP]
    order = order[np.isfinite(vals[order])]
    if len(order) == 0:
        raise ValueError("no chord of the requested length found; is epsilon too large?")
    W, V = _pattern_search(chords, starts[order], vals[order], q.iters, 0.25, chords.project)
    k = int(np.argmin(V))
    best_w = W[k]

    val, sp, sm = chords.evaluate(best_w)
    x = best_w + sp[0] * u
    y = best_w - sm[0] * u
    r = sp[0] + sm[0]
    # the reported value is recomputed from the witness itself
    est = 1.0 - float(_norms(spec, 0.5 * (x + y))[0])
    nx, ny = _norms(spec, np.vstack([x, y]))
    assert abs(nx - 1) <= FEAS_TOL and abs(ny - 1) <= FEAS_TOL
    assert r >= q.epsilon * (1 - FEAS_TOL)
    return ModulusReport(max(est, 0.0), x, y, r, u)


def euclidean_modulus(eps: float) -> float:
    """Closed form for the Euclidean norm: chords of length eps sit at distance sqrt(1 - eps^2/4)."""
    return 1.0 - np.sqrt(1.0 - eps * eps / 4.0)


# -- U_i(t) membership -------------------------------------------------------

@dataclass
class MembershipReport:
    status: str              # "certified-out" or "probably-in"
    best_ratio: float
    threshold: float
    witness: np.ndarray
    evaluations: int

    def to_dict(self) -> dict:
        return {"status": self.status, "best_ratio": round(self.best_ratio, 12),
                "threshold": self.threshold,
                "witness": [round(float(v), 12) for v in self.witness],
                "evaluations": self.evaluations}


def ratios(spec: NormSpec, x: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Row-wise ``(||x+y||^2 + ||x-y||^2) / (2||y||^2)``, checked to be >= 1."""
    Y = np.atleast_2d(Y)
    r = (norm_sq(spec, x[None, :] + Y) + norm_sq(spec, x[None, :] - Y)) / (2 * norm_sq(spec, Y))
    r = np.asarray(r, dtype=float)
    if np.any(r < 1 - RATIO_FLOOR_TOL):
        raise AssertionError(f"parallelogram ratio below 1: {r.min()!r}")
    return r


def ui_membership(spec: NormSpec, x, i: int, t: float, *, starts: int = DEFAULT_STARTS,
                  iters: int = DEFAULT_ITERS, seed: int = 0) -> MembershipReport:
    x = np.asarray([float(v) for v in x])
    if i < 1 or t <= 0:
        raise ValueError("need i >= 1 and t > 0")
    nx = float(_norms(spec, x)[0])
    if nx == 0:
        raise ValueError("x must be nonzero")
    R = t * nx
    n = len(x)
    count = 0

    def project(Y):
        nr = _norms(spec, Y)
        f = np.where(nr > R, R / np.where(nr > 0, nr, 1.0), 1.0)
        return Y * f[:, None]

    def obj(Y):
        nonlocal count
        Y = np.atleast_2d(Y)
        count += len(Y)
        out = np.full(len(Y), np.inf)
        nz = _norms(spec, Y) > 1e-300
        if nz.any():
            out[nz] = ratios(spec, x, Y[nz])
        return out

    rng = stream(seed, "ui_membership")
    G = rng.standard_normal((starts, n))
    gn = _norms(spec, G)
    gn[gn == 0] = 1.0
    rad = np.where(rng.random(starts) < 0.5, 1.0, rng.random(starts)) * R
    Y0 = G / gn[:, None] * rad[:, None]
    L = _lattice_points(n)
    L = L / _norms(spec, L)[:, None] * R
    Y0 = np.vstack([L, Y0])
    vals = obj(Y0)
    order = np.argsort(vals, kind="stable")[:REFINE_TOP]
    best_y, best_v = Y0[order[0]], vals[order[0]]
    threshold = 1.0 + 1.0 / i
    # a witness only certifies when it clears the threshold by more than rounding
    cut = threshold - CERT_MARGIN * threshold
    if best_v >= cut:
        W, V = _pattern_search(obj, Y0[order], vals[order], iters, 0.25 * R, project)
        k = int(np.argmin(V))
        if V[k] < best_v:
            best_y, best_v = W[k], V[k]
    status = "certified-out" if best_v < cut else "probably-in"
    return MembershipReport(status, float(best_v), threshold, best_y, count)


# -- the p-UR inequality chain --------------------------------------------

@dataclass
class ChainReport:
    values: dict
    steps: dict              # step name -> holds

    @property
    def ok(self) -> bool:
        return all(self.steps.values())

    def to_dict(self) -> dict:
        def out(v):
            return str(v) if isinstance(v, Fraction) else float(v)
        return {"ok": self.ok, "steps": dict(self.steps),
                "values": {k: out(v) for k, v in self.values.items()}}


def _le(a, b, exact: bool) -> bool:
    if exact:
        return a <= b
    return a <= b + REL_TOL * max(abs(a), abs(b))


def pur_chain_check(mu: Measure, f, x, y) -> ChainReport:
    """Evaluate, for the norm sqrt(||.||_inf^2 + int .^2 dmu),

        (int f (x-y))^2 <= int f^2 * int (x-y)^2                          (Cauchy-Schwarz)
                        <= int f^2 * (2||x||^2 + 2||y||^2 - ||x+y||^2 + int (x-y)^2)   (sup norm convexity)
                         = int f^2 * (2|||x|||^2 + 2|||y|||^2 - |||x+y|||^2)

    Exact when every input is rational, otherwise with 1e-10 relative slack.
    """
    if not mu.strictly_positive:
        raise ValueError("measure not strictly positive")
    f, x, y = vector(f), vector(x), vector(y)
    exact = all(v.dtype == object for v in (f, x, y))
    if not exact:
        f, x, y = (np.asarray(v, dtype=float) for v in (f, x, y))
    if not (len(f) == len(x) == len(y) == mu.n):
        raise ValueError("ground mismatch")
    w = mu.as_array(exact)
    sup = NormSpec("sup")
    triple = NormSpec("triple", mu)
    d = x - y
    ff = (w * f * f).sum()
    dd = (w * d * d).sum()
    cs_left = (w * f * d).sum() ** 2
    cs_right = ff * dd
    convex = ff * (2 * (norm_sq(sup, x) + norm_sq(sup, y)) - norm_sq(sup, x + y) + dd)
    final = ff * (2 * (norm_sq(triple, x) + norm_sq(triple, y)) - norm_sq(triple, x + y))
    if exact:
        same = convex == final
    else:
        same = abs(convex - final) <= REL_TOL * max(abs(convex), abs(final), 1e-300)
    steps = {"cauchy_schwarz": _le(cs_left, cs_right, exact),
             "convexity": _le(cs_right, convex, exact),
             "definition": bool(same)}
    return ChainReport({"lhs": cs_left, "cauchy_schwarz": cs_right,
                        "convexity": convex, "triple_form": final}, steps)
