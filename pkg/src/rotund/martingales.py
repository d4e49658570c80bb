"""Discrete vector-valued martingales on finite filtrations.

A :class:`Filtration` is a finite set of atoms with positive integer
weights (atom mass = weight / total weight) and a sequence of
partitions, each refining the previous one.  Partition ``n`` is stored as
an array mapping every atom to its block number; blocks are numbered in
order of their smallest atom.

A :class:`Martingale` holds one value per block and level.  Exact
martingales keep integer numerators in numpy ``object`` arrays over a
single common denominator ``scale``, so every check below is integer
arithmetic.  Float martingales hold ``float64`` values and ``scale == 1``.

The two-step construction of :func:`build_lemma_martingale` and its
iterated form :func:`compose_proposition_martingale` are vectorised
over blocks, which keeps the composed martingales with a few hundred
thousand atoms manageable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .families import SetFamily, l_index
from .functions import FLOAT_TOL, NormSpec, family_functions, norm_sq, vector


class MartingaleError(ValueError):
    """Structural problem with a filtration or martingale.

    ``kind`` is one of ``"partition"``, ``"refinement"``, ``"mass"``,
    ``"shape"``, ``"law"`` or ``"flags"``.
    """

    def __init__(self, kind: str, message: str):
        super().__init__(f"{kind}: {message}")
        self.kind = kind


class CertificationError(AssertionError):
    """A construction failed one of its own postconditions."""


def _canonical(labels: np.ndarray) -> np.ndarray:
    _, first, inv = np.unique(labels, return_index=True, return_inverse=True)
    rank = np.empty(len(first), dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(len(first))
    return rank[inv.ravel()]


def _sum_by(index: np.ndarray, values: np.ndarray, size: int) -> np.ndarray:
    out = np.zeros((size,) + values.shape[1:], dtype=values.dtype)
    np.add.at(out, index, values)
    return out


class Filtration:
    def __init__(self, weights: Sequence[int], levels: Sequence[Sequence[int]]):
        w = np.array([int(x) for x in weights], dtype=object)
        if len(w) == 0:
            raise MartingaleError("mass", "no atoms")
        if any(x <= 0 for x in w):
            raise MartingaleError("mass", "atom weights must be positive")
        self.weights = w
        self.total = int(w.sum())
        self.levels = [_canonical(np.asarray(lv, dtype=np.int64)) for lv in levels]
        if not self.levels:
            raise MartingaleError("partition", "at least level 0 is required")
        for lv in self.levels:
            if lv.shape != (len(w),):
                raise MartingaleError("partition", "every level must label every atom")
        if self.levels[0].max() != 0:
            raise MartingaleError("partition", "level 0 must be the trivial partition")
        self._parents = [None]
        for n in range(1, len(self.levels)):
            lv, prev = self.levels[n], self.levels[n - 1]
            parent = np.empty(lv.max() + 1, dtype=np.int64)
            parent[lv] = prev
            if np.any(parent[lv] != prev):
                raise MartingaleError(
                    "refinement", f"a block of level {n} straddles blocks of level {n - 1}")
            self._parents.append(parent)

    @classmethod
    def from_partitions(cls, masses: Sequence, partitions: Sequence[Sequence[Sequence[int]]]):
        """Build from atom masses (summing to 1) and explicit block lists."""
        qs = [Fraction(x) for x in masses]
        if sum(qs) != 1:
            raise MartingaleError("mass", f"atom masses sum to {sum(qs)}, not 1")
        if any(x <= 0 for x in qs):
            raise MartingaleError("mass", "atom masses must be positive")
        den = lcm(*(x.denominator for x in qs))
        levels = []
        for n, blocks in enumerate(partitions):
            lab = np.full(len(qs), -1, dtype=np.int64)
            for b, atoms in enumerate(blocks):
                for a in atoms:
                    if not 0 <= a < len(qs):
                        raise MartingaleError("partition", f"atom {a} out of range")
                    if lab[a] != -1:
                        raise MartingaleError("partition", f"atom {a} in two blocks of level {n}")
                    lab[a] = b
            if np.any(lab < 0):
                raise MartingaleError("partition", f"level {n} does not cover every atom")
            levels.append(lab)
        return cls([int(x * den) for x in qs], levels)

    @classmethod
    def trivial(cls) -> "Filtration":
        return cls([1], [[0]])

    @property
    def n_atoms(self) -> int:
        return len(self.weights)

    @property
    def depth(self) -> int:
        return len(self.levels)

    def num_blocks(self, n: int) -> int:
        return int(self.levels[n].max()) + 1

    def parent(self, n: int) -> np.ndarray:
        return self._parents[n]

    def block_weights(self, n: int) -> np.ndarray:
        return _sum_by(self.levels[n], self.weights, self.num_blocks(n))

    def masses(self) -> list[Fraction]:
        return [Fraction(int(x), self.total) for x in self.weights]

    def blocks(self, n: int) -> list[list[int]]:
        out = [[] for _ in range(self.num_blocks(n))]
        for a, b in enumerate(self.levels[n]):
            out[b].append(a)
        return out


class Martingale:
    def __init__(self, filtration: Filtration, values: Sequence[np.ndarray], scale: int = 1):
        if len(values) != filtration.depth:
            raise MartingaleError("shape", f"{len(values)} value levels for a filtration "
                                           f"of depth {filtration.depth}")
        ground = values[0].shape[1]
        for n, v in enumerate(values):
            if v.ndim != 2 or v.shape != (filtration.num_blocks(n), ground):
                raise MartingaleError("shape", f"level {n} values have shape {v.shape}")
        self.filtration = filtration
        self.values = list(values)
        self.scale = int(scale)
        self.exact = values[0].dtype == object

    @classmethod
    def from_values(cls, filtration: Filtration, level_values) -> "Martingale":
        """``level_values[n][b]`` is the vector taken on block ``b`` of level ``n``."""
        vecs = [[vector(v) for v in level] for level in level_values]
        if all(v.dtype == object for level in vecs for v in level):
            den = lcm(*(x.denominator for level in vecs for v in level for x in v))
            arrays = [np.array([[int(x * den) for x in v] for v in level], dtype=object)
                      for level in vecs]
            return cls(filtration, arrays, den)
        arrays = [np.array([[float(x) for x in v] for v in level]) for level in vecs]
        return cls(filtration, arrays)

    @property
    def ground(self) -> int:
        return self.values[0].shape[1]

    @property
    def depth(self) -> int:
        return len(self.values)

    def increment(self, n: int) -> np.ndarray:
        """Numerators (over ``scale``) of dM_n, one row per level-n block."""
        if n == 0:
            return self.values[0]
        return self.values[n] - self.values[n - 1][self.filtration.parent(n)]

    def _true(self, arr: np.ndarray) -> np.ndarray:
        if not self.exact:
            return arr
        s = self.scale
        return np.array([[Fraction(int(x), s) for x in row] for row in arr], dtype=object)

    def level_values(self, n: int) -> np.ndarray:
        return self._true(self.values[n])

    def increment_values(self, n: int) -> np.ndarray:
        return self._true(self.increment(n))

    def atom_values(self, n: int, as_float: bool = False) -> np.ndarray:
        v = self.values[n][self.filtration.levels[n]]
        if as_float:
            return np.asarray(v, dtype=float) / self.scale
        return self._true(v)

    def atom_increments(self, n: int, as_float: bool = False) -> np.ndarray:
        d = self.increment(n)[self.filtration.levels[n]]
        if as_float:
            return np.asarray(d, dtype=float) / self.scale
        return self._true(d)

    def to_float(self) -> "Martingale":
        if not self.exact:
            return self
        return Martingale(self.filtration,
                          [np.asarray(v, dtype=float) / self.scale for v in self.values])


# -- Walsh-Paley structure -------------------------------------------------

@dataclass
class WalshPaleyStructure:
    pairs: list[list[tuple[int, int]]]   # pairs[k]: (E+, E-) block pairs of level k
    omega: list[np.ndarray]              # omega[k]: atom mask of the union of the pairs

    def covers(self, k: int) -> bool:
        return bool(self.omega[k].all())


def walsh_paley_structure(f: Filtration) -> WalshPaleyStructure:
    """Detect all k-Walsh-Paley pairs.

    A pair is two level-k blocks of equal mass whose union is a single
    level-(k-1) block, so a parent contributes a pair exactly when it
    splits into two equal-mass children.
    """
    pairs = [[]]
    omega = [np.zeros(f.n_atoms, dtype=bool)]
    for k in range(1, f.depth):
        parent = f.parent(k)
        bw = f.block_weights(k)
        children = [[] for _ in range(f.num_blocks(k - 1))]
        for b, p in enumerate(parent):
            children[p].append(b)
        lv = []
        paired = np.zeros(f.num_blocks(k), dtype=bool)
        for kids in children:
            if len(kids) == 2 and bw[kids[0]] == bw[kids[1]]:
                lv.append((kids[0], kids[1]))
                paired[kids] = True
        pairs.append(lv)
        omega.append(paired[f.levels[k]])
    return WalshPaleyStructure(pairs, omega)


# -- validation ------------------------------------------------------------

@dataclass
class ValidationReport:
    law_violations: list[tuple[int, int]] = field(default_factory=list)
    antisymmetry_violations: list[tuple[int, int, int]] = field(default_factory=list)
    pairs_checked: int = 0
    blocks_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.law_violations and not self.antisymmetry_violations

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "blocks_checked": self.blocks_checked,
            "pairs_checked": self.pairs_checked,
            "law_violations": [list(v) for v in self.law_violations],
            "antisymmetry_violations": [list(v) for v in self.antisymmetry_violations],
        }


def validate_martingale(m: Martingale, wp: WalshPaleyStructure | None = None) -> ValidationReport:
    """Check that every increment integrates to zero over each block of the previous level.

    Exact martingales are checked in integer arithmetic; float ones to
    ``1e-12`` relative to the largest value.  Walsh-Paley pairs are also
    checked for ``dM(E+) == -dM(E-)``.
    """
    f = m.filtration
    rep = ValidationReport()
    if m.exact:
        tol = 0
    else:
        tol = FLOAT_TOL * max(1.0, max(float(np.abs(v).max()) for v in m.values))
    for n in range(1, m.depth):
        d = m.increment(n)
        bw = f.block_weights(n)
        if not m.exact:
            bw = bw.astype(float) / f.total
        sums = _sum_by(f.parent(n), d * bw[:, None], f.num_blocks(n - 1))
        bad = np.nonzero(np.any(np.abs(sums) > tol, axis=1))[0]
        rep.law_violations.extend((n, int(b)) for b in bad)
        rep.blocks_checked += f.num_blocks(n - 1)
    wp = wp or walsh_paley_structure(f)
    for k in range(1, m.depth):
        if not wp.pairs[k]:
            continue
        d = m.increment(k)
        plus = np.array([p for p, _ in wp.pairs[k]])
        minus = np.array([q for _, q in wp.pairs[k]])
        bad = np.nonzero(np.any(np.abs(d[plus] + d[minus]) > tol, axis=1))[0]
        rep.antisymmetry_violations.extend(
            (k, int(plus[i]), int(minus[i])) for i in bad)
        rep.pairs_checked += len(plus)
    return rep


# -- norm-square monotonicity ---------------------------------------------

def _norm_sq_int(spec: NormSpec, nums: np.ndarray) -> tuple[np.ndarray, int]:
    # squared norm of integer rows, as integer numerators over a denominator
    if spec.kind == "euclidean":
        return (nums * nums).sum(axis=1), 1
    sup = np.abs(nums).max(axis=1)
    if spec.kind == "sup":
        return sup * sup, 1
    mu = spec.measure.weights
    den = lcm(*(w.denominator for w in mu))
    mu_int = np.array([int(w * den) for w in mu], dtype=object)
    integral = (nums * nums * mu_int).sum(axis=1)
    if spec.kind == "l2":
        return integral, den
    return den * sup * sup + integral, den


def block_norm_sq(m: Martingale, spec: NormSpec, n: int):
    """``(values, denominator)`` of ||M_n||^2 per level-n block.

    Exact martingales: integer numerators, true value = numerator /
    denominator.  Float martingales: floats with denominator 1.
    """
    if m.exact:
        nums, den = _norm_sq_int(spec, m.values[n])
        return nums, den * m.scale ** 2
    return norm_sq(spec, m.values[n]), 1


@dataclass
class MonotoneReport:
    min_slack: object
    slacks: list          # per level n >= 1: slack per level-(n-1) block
    tolerance: float

    @property
    def ok(self) -> bool:
        return self.min_slack is None or self.min_slack >= -self.tolerance

    def to_dict(self) -> dict:
        s = self.min_slack
        return {"ok": self.ok,
                "min_slack": (None if s is None else
                              str(s) if isinstance(s, Fraction) else float(s)),
                "tolerance": self.tolerance}


def check_norm_square_monotone(m: Martingale, spec: NormSpec) -> MonotoneReport:
    """For every level n and block E of level n-1, compare the integrals of
    ||M_n||^2 and ||M_{n-1}||^2 over E.  Exact for exact martingales."""
    val = validate_martingale(m)
    if not val.ok:
        raise MartingaleError("law", f"not a martingale: {len(val.law_violations)} law and "
                                     f"{len(val.antisymmetry_violations)} antisymmetry violations")
    f = m.filtration
    slacks, worst = [], None
    for n in range(1, m.depth):
        cur, den = block_norm_sq(m, spec, n)
        prev, _ = block_norm_sq(m, spec, n - 1)
        bw, pw = f.block_weights(n), f.block_weights(n - 1)
        if not m.exact:
            bw, pw = bw.astype(float), pw.astype(float)
        lhs = _sum_by(f.parent(n), cur * bw, f.num_blocks(n - 1))
        diff = lhs - prev * pw
        if m.exact:
            scaled = [Fraction(int(x), den * f.total) for x in diff]
        else:
            scaled = list(diff / f.total)
        slacks.append(scaled)
        lo = min(scaled)
        worst = lo if worst is None or lo < worst else worst
    return MonotoneReport(worst, slacks, 0.0 if m.exact else FLOAT_TOL)


# -- explicit constructions -------------------------------------------------

def _family_ints(family: SetFamily, urysohn) -> tuple[np.ndarray, int]:
    F = family_functions(family, urysohn)
    den = lcm(*(x.denominator for x in F.ravel()))
    return np.array([[int(x * den) for x in row] for row in F], dtype=object), den


def _g_ints(g) -> tuple[np.ndarray, int]:
    g = vector(g, exact=True) if not isinstance(g, np.ndarray) or g.dtype != object else g
    den = lcm(*(x.denominator for x in g))
    return np.array([int(x * den) for x in g], dtype=object), den


class _Builder:
    """Incremental state for the two-step splitting construction."""

    def __init__(self, g):
        nums, den = _g_ints(g)
        self.weights = np.array([1], dtype=object)
        self.levels = [np.zeros(1, dtype=np.int64)]
        self.values = [nums[None, :]]
        self.scale = den

    def split(self, F: np.ndarray, fden: int) -> None:
        m, n = F.shape
        if m < 2:
            raise ValueError("the two-step construction needs a family of at least 2 sets")
        V = self.values[-1]                      # one row per current atom
        B = V.shape[0]
        S = self.scale
        mult = (m - 1) * fden
        self.values = [v * mult for v in self.values]
        self.scale = S * mult
        g1 = np.minimum(np.maximum(V, -S), S)    # clamp to [-1, 1] in units of S
        H = F.sum(axis=0)
        coeff = (H[None, :] - F) - (m - 1) * F   # (h_k - (m-1) f_k) over (m-1) fden
        N1 = (V * mult)[:, None, :] + g1[:, None, :] * coeff[None, :, :]
        sign = np.array([1, -1], dtype=object)
        step = F * (S * (m - 1))
        N2 = N1[:, :, None, :] + sign[None, None, :, None] * step[None, :, None, :]
        self.values.append(N1.reshape(B * m, n))
        self.values.append(N2.reshape(B * 2 * m, n))
        self.levels = [np.repeat(lv, 2 * m) for lv in self.levels]
        atoms = np.arange(B * 2 * m, dtype=np.int64)
        self.levels.append(atoms // 2)
        self.levels.append(atoms)
        self.weights = np.repeat(self.weights, 2 * m)

    def martingale(self) -> Martingale:
        return Martingale(Filtration(self.weights, self.levels), self.values, self.scale)


def _sup(nums: np.ndarray) -> np.ndarray:
    return np.abs(nums).max(axis=1)


@dataclass
class StageCheck:
    level: int
    omega_full: bool
    increments_in_family: bool
    qualification: Fraction   # integral of ||dM||_inf^2 over the part in H and Omega_n


@dataclass
class ConstructionReport:
    bound: Fraction
    max_norm: Fraction
    valid: bool
    stages: list[StageCheck]

    @property
    def bound_ok(self) -> bool:
        return self.max_norm <= self.bound

    @property
    def ok(self) -> bool:
        return (self.valid and self.bound_ok
                and all(s.omega_full and s.increments_in_family and s.qualification == 1
                        for s in self.stages))

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "bound": f"{self.bound.numerator}/{self.bound.denominator}",
            "max_norm": f"{self.max_norm.numerator}/{self.max_norm.denominator}",
            "bound_ok": self.bound_ok,
            "martingale_valid": self.valid,
            "stages": [{"level": s.level, "omega_full": s.omega_full,
                        "increments_in_family": s.increments_in_family,
                        "qualification": str(s.qualification)} for s in self.stages],
        }


def _homogeneous_key(row) -> tuple:
    # canonical representative of the line through an integer vector
    from math import gcd
    g = 0
    for x in row:
        g = gcd(g, int(x))
    if g == 0:
        return ()
    first = next(int(x) for x in row if x != 0)
    if first < 0:
        g = -g
    return tuple(int(x) // g for x in row)


def _stage_checks(m: Martingale, stage_F: list[np.ndarray], stage_den: list[int],
                  wp: WalshPaleyStructure) -> list[StageCheck]:
    f = m.filtration
    hull = set()
    for F in stage_F:
        for row in F:
            hull.add(_homogeneous_key(row))
    out = []
    for r, (F, fden) in enumerate(zip(stage_F, stage_den), start=1):
        n = 2 * r
        d = m.increment(n)
        # dM_n must be +f or -f for some member of family r
        allowed = set()
        factor = m.scale // fden
        for row in F:
            allowed.add(tuple(int(x) * factor for x in row))
            allowed.add(tuple(-int(x) * factor for x in row))
        rows = [tuple(int(x) for x in row) for row in d]
        in_family = all(row in allowed for row in rows)
        in_hull = np.array([_homogeneous_key(row) in hull for row in rows])
        mask = in_hull[f.levels[n]] & wp.omega[n]
        energy = _sup(d)[f.levels[n]] ** 2
        num = sum((w * e for w, e, keep in zip(f.weights, energy, mask) if keep), 0)
        q = Fraction(int(num), f.total * m.scale ** 2)
        out.append(StageCheck(n, wp.covers(n), in_family, q))
    return out


def _certify(m: Martingale, bound: Fraction, stage_F, stage_den) -> ConstructionReport:
    wp = walsh_paley_structure(m.filtration)
    valid = validate_martingale(m, wp).ok
    top = int(_sup(m.values[-1]).max())
    max_norm = Fraction(top, m.scale)
    return ConstructionReport(bound, max_norm, valid, _stage_checks(m, stage_F, stage_den, wp))


def lemma_bound(family: SetFamily, g) -> Fraction:
    g = vector(g, exact=True)
    m = len(family)
    return max(Fraction(np.abs(g).max()), Fraction(1)) + Fraction(l_index(family)[0], m - 1)


def build_lemma_martingale(family: SetFamily, g, urysohn=None, *,
                           check: bool = True) -> Martingale:
    """Three-level martingale (N0, N1, N2) on 2m atoms E_k^+, E_k^- of mass 1/(2m).

    N0 = g; on E_k^+ and E_k^- the first increment is
    ``g1 * (h_k/(m-1) - f_k)`` with ``h_k = sum_{j != k} f_j`` and
    ``g1`` the clamp of g to [-1, 1]; the second increment is ``+f_k`` on
    E_k^+ and ``-f_k`` on E_k^-.  Atom ``2k`` is E_k^+, atom ``2k+1`` is
    E_k^-.

    With ``check`` the result is certified (martingale law, Omega_2 = Omega,
    dN2 in +-F, and the sup-norm bound at every atom) and
    :class:`CertificationError` is raised on failure.
    """
    if len(family) < 2:
        raise ValueError("the two-step construction needs a family of at least 2 sets")
    F, fden = _family_ints(family, urysohn)
    b = _Builder(g)
    if b.values[0].shape[1] != family.n:
        raise ValueError("g and the family live on different ground spaces")
    b.split(F, fden)
    mart = b.martingale()
    if check:
        rep = _certify(mart, lemma_bound(family, g), [F], [fden])
        if not rep.ok:
            raise CertificationError(f"two-step construction failed: {rep.to_dict()}")
    return mart


def lemma_report(mart: Martingale, family: SetFamily, g, urysohn=None) -> ConstructionReport:
    F, fden = _family_ints(family, urysohn)
    return _certify(mart, lemma_bound(family, g), [F], [fden])


def proposition_bound(families: Sequence[SetFamily]) -> Fraction:
    return 1 + sum((Fraction(l_index(fam)[0], len(fam) - 1) for fam in families), Fraction(0))


def _prop_g(families, g):
    n = families[0].n
    if any(fam.n != n for fam in families):
        raise ValueError("families live on different ground spaces")
    if g is None:
        g = [1] * n
    gv = vector(g, exact=True)
    if len(gv) != n:
        raise ValueError("g and the families live on different ground spaces")
    if np.abs(gv).max() != 1:
        raise ValueError("the starting function must have sup norm 1")
    return gv


def compose_proposition_martingale(families: Sequence[SetFamily], g=None, urysohn=None, *,
                                   check: bool = True) -> Martingale:
    """Glue two-step constructions: stage r splits every atom of level 2(r-1)
    with family r, giving levels M_0..M_{2q} and prod(2 m_r) atoms.

    ``g`` (default: constant 1) must have sup norm 1.  ``urysohn`` is an
    optional per-family list of custom f_G vectors.
    """
    if not families:
        raise ValueError("need at least one family")
    gv = _prop_g(families, g)
    b = _Builder(gv)
    Fs, dens = [], []
    for r, fam in enumerate(families):
        F, fden = _family_ints(fam, None if urysohn is None else urysohn[r])
        b.split(F, fden)
        Fs.append(F)
        dens.append(fden)
    mart = b.martingale()
    if check:
        rep = _certify(mart, proposition_bound(families), Fs, dens)
        if not rep.ok:
            raise CertificationError(f"composed construction failed: {rep.to_dict()}")
    return mart


def proposition_report(mart: Martingale, families: Sequence[SetFamily],
                       urysohn=None) -> ConstructionReport:
    Fs, dens = [], []
    for r, fam in enumerate(families):
        F, fden = _family_ints(fam, None if urysohn is None else urysohn[r])
        Fs.append(F)
        dens.append(fden)
    return _certify(mart, proposition_bound(families), Fs, dens)


@dataclass
class ABound:
    bound: Fraction
    levels: int                 # the index a_k is bounded for k = levels = 2q
    report: ConstructionReport | None
    martingale: Martingale | None
    method: str                 # "exhaustive" or "pointwise"

    @property
    def verified(self) -> bool:
        return self.report.ok

    def to_dict(self) -> dict:
        out = {"bound": f"{self.bound.numerator}/{self.bound.denominator}",
               "k": self.levels, "verified": self.verified, "method": self.method}
        out["certificate"] = self.report.to_dict()
        return out


def a_upper_bound(families: Sequence[SetFamily], g=None, *, max_atoms: int = 2_000_000) -> ABound:
    """Certified bound ``1 + sum_r l(G_r)/(|G_r| - 1)`` on a_{2q}(H) for any
    homogeneous H containing every f_G.

    The witness is the composed martingale.  When it would exceed
    ``max_atoms`` atoms it is not materialised (``method="pointwise"``):
    every step of the construction acts point by point on the ground
    space, so the set of values reachable at each ground point can be
    propagated on its own.  The sup-norm bound is then checked exactly
    over all reachable values, and the zero-mean and qualification
    identities, which do not depend on the current value, are checked
    once per stage.
    """
    atoms = 1
    for fam in families:
        atoms *= 2 * len(fam)
    bound = proposition_bound(families)
    if atoms <= max_atoms:
        mart = compose_proposition_martingale(families, g, check=False)
        rep = proposition_report(mart, families)
        return ABound(bound, 2 * len(families), rep, mart, "exhaustive")
    return ABound(bound, 2 * len(families), _pointwise_report(families, g, bound),
                  None, "pointwise")


def _pointwise_report(families, g, bound) -> ConstructionReport:
    gv = _prop_g(families, g)
    nums, S = _g_ints(gv)
    reach = [{int(v)} for v in nums]
    stages, valid = [], True
    for r, fam in enumerate(families, start=1):
        F, fden = _family_ints(fam, None)
        m, n = F.shape
        mult = (m - 1) * fden
        coeff = (F.sum(axis=0)[None, :] - F) - (m - 1) * F
        # first increment is g1 * coeff_k on E_k; its mean vanishes for every g1
        valid &= not np.any(coeff.sum(axis=0) != 0)
        step = F * (S * (m - 1))
        for j in range(n):
            moves = {(int(coeff[k, j]), int(step[k, j])) for k in range(m)}
            nxt = set()
            for v in reach[j]:
                c1 = max(-S, min(S, v))
                for c, st in moves:
                    mid = v * mult + c1 * c
                    nxt.add(mid + st)
                    nxt.add(mid - st)
            reach[j] = nxt
        S *= mult
        # second increment is +f_k / -f_k on the two halves of E_k, each of mass 1/(2m)
        q = sum((Fraction(int(np.abs(row).max()), fden) ** 2 for row in F), Fraction(0)) / m
        stages.append(StageCheck(2 * r, True, True, q))
    top = max(max(abs(v) for v in vals) for vals in reach)
    return ConstructionReport(bound, Fraction(top, S), valid, stages)


# -- energy-gain inequalities ----------------------------------------------

@dataclass
class EnergyReport:
    applicable: bool
    reason: str
    lhs: float | None = None
    rhs: float | None = None
    flagged_energy: float | None = None

    @property
    def slack(self) -> float | None:
        return None if self.lhs is None else self.lhs - self.rhs

    @property
    def holds(self) -> bool | None:
        if not self.applicable:
            return None
        return self.slack >= -FLOAT_TOL * max(1.0, abs(self.lhs), abs(self.rhs))

    def to_dict(self) -> dict:
        return {"applicable": self.applicable, "reason": self.reason,
                "lhs": self.lhs, "rhs": self.rhs, "slack": self.slack,
                "flagged_energy": self.flagged_energy, "holds": self.holds}


def check_split_energy(masses: Sequence, f: np.ndarray, g: np.ndarray,
                         flags: Sequence[bool], i: int, t: float,
                         spec: NormSpec) -> EnergyReport:
    """For simple random variables f, g (one row per atom) with E||f||^2 <= 1
    and the integral of ||g||^2 over the flagged atoms (where g lies in
    U_i(t)) at least 2/t^2, compare E(||f+g||^2 + ||f-g||^2) with
    2 E||f||^2 + 1/(t^2 i)."""
    p = np.array([float(x) for x in masses])
    f = np.asarray(f, dtype=float)
    g = np.asarray(g, dtype=float)
    flags = np.asarray(flags, dtype=bool)
    if not (len(p) == len(f) == len(g) == len(flags)):
        raise MartingaleError("flags", "one mass, flag and row per atom required")
    ef = float((p * norm_sq(spec, f)).sum())
    eg = float((p * norm_sq(spec, g))[flags].sum())
    if ef > 1 + FLOAT_TOL:
        return EnergyReport(False, f"E||f||^2 = {ef:.6g} > 1")
    if eg < 2 / t ** 2:
        return EnergyReport(False, f"flagged energy {eg:.6g} < 2/t^2", flagged_energy=eg)
    lhs = float((p * (norm_sq(spec, f + g) + norm_sq(spec, f - g))).sum())
    rhs = 2 * ef + 1 / (t ** 2 * i)
    return EnergyReport(True, "hypotheses hold", lhs, rhs, eg)


def check_energy_gain(m: Martingale, n: int, i: int, t: float, spec: NormSpec,
                      flags: Sequence[bool]) -> EnergyReport:
    """Compare E||M_n||^2 with E||M_{n-1}||^2 + 1/(t^2 i).

    ``flags[a]`` says whether dM_n at atom ``a`` lies in U_i(t).  The
    hypotheses (sup_k E||M_k||^2 <= 1 and energy of dM_n over the flagged
    part of Omega_n at least 2/t^2) are evaluated first; when they fail
    the report is "not applicable" rather than a counterexample.
    """
    f = m.filtration
    flags = np.asarray(flags, dtype=bool)
    if flags.shape != (f.n_atoms,):
        raise MartingaleError("flags", f"expected {f.n_atoms} atom flags")
    if not 1 <= n < m.depth:
        raise MartingaleError("shape", f"level {n} out of range 1..{m.depth - 1}")
    lv = f.levels[n]
    per_block = _sum_by(lv, flags.astype(np.int64), f.num_blocks(n))
    size = np.bincount(lv)
    if np.any((per_block != 0) & (per_block != size)):
        raise MartingaleError("flags", f"flags must be constant on level-{n} blocks")
    wp = walsh_paley_structure(f)
    for a, b in wp.pairs[n]:
        if (per_block[a] != 0) != (per_block[b] != 0):
            raise MartingaleError("flags", "flags differ across a Walsh-Paley pair")
    p = np.array([float(Fraction(int(w), f.total)) for w in f.weights])
    energies = [float((p * norm_sq(spec, m.atom_values(k, as_float=True))).sum())
                for k in range(m.depth)]
    if max(energies) > 1 + FLOAT_TOL:
        return EnergyReport(False, f"sup_k E||M_k||^2 = {max(energies):.6g} > 1")
    region = flags & wp.omega[n]
    dm = norm_sq(spec, m.atom_increments(n, as_float=True))
    flagged = float((p * dm)[region].sum())
    if flagged < 2 / t ** 2:
        return EnergyReport(False, f"flagged energy {flagged:.6g} < 2/t^2",
                            flagged_energy=flagged)
    return EnergyReport(True, "hypotheses hold", energies[n],
                        energies[n - 1] + 1 / (t ** 2 * i), flagged)
