"""Acceptance checks, one function per criterion.

Each ``criterion_N(seed)`` returns a :class:`Criterion` whose ``detail``
is deterministic for a given seed (no timings), so the serialized report
of :func:`run_all` is byte-identical across runs.
"""
from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import __version__
from ._rng import stream
from .families import SetFamily, index_report
from .functions import Measure, NormSpec, norm_sq, vector
from .intersection import kelley_number_rep, max_min_measure
from .martingales import (Filtration, Martingale, a_upper_bound, build_lemma_martingale,
                          check_norm_square_monotone, compose_proposition_martingale,
                          lemma_report, proposition_report)
from .modulus import (ModulusQuery, euclidean_modulus, pur_chain_check, ui_membership,
                      ured_modulus_estimate)
from .oracles import indices_brute

ALL_NORMS = ("sup", "l2", "triple", "euclidean")


@dataclass
class Criterion:
    number: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"id": self.number, "name": self.name, "passed": self.passed,
                "detail": self.detail}


# -- instance generators ----------------------------------------------------

def random_family(rng: np.random.Generator, max_n: int, min_m: int, max_m: int,
                  density: float | None = None) -> SetFamily:
    """Distinct nonempty random sets; the ground is enlarged if too small for m."""
    m = int(rng.integers(min_m, max_m + 1))
    n = int(rng.integers(1, max_n + 1))
    while (1 << n) - 1 < m:
        n += 1
    p = density if density is not None else float(rng.uniform(0.2, 0.7))
    seen, sets = set(), []
    while len(sets) < m:
        mask = int(sum(1 << i for i in range(n) if rng.random() < p))
        if mask and mask not in seen:
            seen.add(mask)
            sets.append(mask)
    return SetFamily.from_sets(n, [[i for i in range(n) if mk >> i & 1] for mk in sets])


def random_rational_vector(rng, n: int, bound: int, max_den: int = 6) -> np.ndarray:
    vals = []
    for _ in range(n):
        den = int(rng.integers(1, max_den + 1))
        vals.append(Fraction(int(rng.integers(-bound * den, bound * den + 1)), den))
    return vector(vals)


def disjoint_family(m: int) -> SetFamily:
    return SetFamily.from_sets(m, [[i] for i in range(m)])


TRIANGLE = SetFamily.from_sets(3, [[0, 1], [1, 2], [0, 2]])


def random_martingale(rng, exact: bool = True) -> Martingale:
    """A random valid martingale on a random tree-shaped filtration.

    Each block splits into 1-3 children with random integer weights; the
    last child's increment is solved for so the weighted sum is zero.
    """
    depth = int(rng.integers(1, 5))
    n = int(rng.integers(1, 5))
    weights = [Fraction(1)]
    parents = [[0]]
    for _ in range(depth):
        new_w, lab = [], []
        for b, w in enumerate(weights):
            k = int(rng.integers(1, 4))
            raw = [int(rng.integers(1, 4)) for _ in range(k)]
            tot = sum(raw)
            new_w.extend(w * Fraction(r, tot) for r in raw)
            lab.extend([b] * k)
        weights = new_w
        parents.append(lab)
    # atoms are the final blocks; level labels are traced back from the leaves
    n_atoms = len(weights)
    levels = [list(range(n_atoms))]
    for d in range(depth, 0, -1):
        levels.append([parents[d][b] for b in levels[-1]])
    levels = levels[::-1]
    filt = Filtration.from_partitions(weights, [
        [[a for a in range(n_atoms) if levels[d][a] == b] for b in range(max(levels[d]) + 1)]
        for d in range(depth + 1)])
    conv = (lambda v: Fraction(int(v))) if exact else float
    values = [[vector([conv(rng.integers(-3, 4)) for _ in range(n)], exact=exact)]]
    for d in range(1, depth + 1):
        parent = filt.parent(d)
        bw = [Fraction(int(w), filt.total) for w in filt.block_weights(d)]
        rows = [None] * filt.num_blocks(d)
        for p in range(filt.num_blocks(d - 1)):
            kids = [b for b in range(len(parent)) if parent[b] == p]
            incs = [vector([conv(rng.integers(-3, 4)) for _ in range(n)], exact=exact)
                    for _ in kids[:-1]]
            if exact:
                acc = sum((bw[b] * inc for b, inc in zip(kids, incs)),
                          vector([0] * n, exact=True))
                incs.append(-acc / bw[kids[-1]])
            else:
                acc = sum((float(bw[b]) * inc for b, inc in zip(kids, incs)), np.zeros(n))
                incs.append(-acc / float(bw[kids[-1]]))
            for b, inc in zip(kids, incs):
                rows[b] = values[-1][p] + inc
        values.append(rows)
    return Martingale.from_values(filt, values)


def _norm_specs(n: int) -> list[NormSpec]:
    mu = Measure.uniform(n)
    return [NormSpec(k, mu if k in ("l2", "triple") else None) for k in ALL_NORMS]


# -- criteria ---------------------------------------------------------------

def criterion_1(seed: int = 0) -> Criterion:
    rng = stream(seed, "acceptance", 1)
    mismatches = []
    for it in range(200):
        fam = random_family(rng, 10, 2, 12)
        rep = index_report(fam)
        ref = indices_brute(fam)
        if (rep.l_value != ref["l"] or rep.gamma != ref["gamma"]
                or rep.win_value != ref["win"] or rep.win_tilde_value != ref["win_tilde"]):
            mismatches.append(it)
    return Criterion(1, "oracle equivalence of l, gamma_k, win, win_tilde",
                     not mismatches, {"families": 200, "mismatches": mismatches})


def criterion_2(seed: int = 0) -> Criterion:
    rng = stream(seed, "acceptance", 2)
    bad = []
    for it in range(200):
        rep = index_report(random_family(rng, 10, 2, 12))
        w, wt = rep.win_value, rep.win_tilde_value
        if not (w <= wt <= 2 * w):
            bad.append(it)
    return Criterion(2, "win <= win_tilde <= 2 win", not bad,
                     {"families": 200, "violations": bad})


def criterion_3(seed: int = 0) -> Criterion:
    rows = []
    rep = index_report(TRIANGLE)
    lp = max_min_measure(TRIANGLE).value
    ok = (rep.win_value == Fraction(2, 3) and rep.win_tilde_value == 1
          and lp == Fraction(2, 3))
    rows.append({"instance": "triangle", "win": str(rep.win_value),
                 "win_tilde": str(rep.win_tilde_value), "lp": str(lp)})
    for m in range(2, 9):
        fam = disjoint_family(m)
        rep = index_report(fam)
        lp = max_min_measure(fam).value
        good = (rep.win_value == Fraction(1, m) and rep.win_tilde_value == Fraction(1, m - 1)
                and lp == Fraction(1, m))
        ok &= good
        rows.append({"instance": f"disjoint m={m}", "win": str(rep.win_value),
                     "win_tilde": str(rep.win_tilde_value), "lp": str(lp), "ok": good})
    return Criterion(3, "named instances", ok, {"rows": rows})


def criterion_4(seed: int = 0) -> Criterion:
    rng = stream(seed, "acceptance", 4)
    bad, worst = [], Fraction(0)
    for it in range(100):
        fam = random_family(rng, 8, 1, 8)
        cert = max_min_measure(fam)
        rep, _ = kelley_number_rep(fam, 12)
        gap = rep - cert.value
        worst = max(worst, gap)
        if cert.primal_value != cert.dual_value or gap < 0 or gap > Fraction(1, 10):
            bad.append(it)
    return Criterion(4, "exact LP duality and truncated Kelley number", not bad,
                     {"families": 100, "violations": bad, "max_gap": str(worst)})


def _lemma_instances(seed: int, count: int):
    rng = stream(seed, "acceptance", 5)
    for _ in range(count):
        fam = random_family(rng, 6, 2, 8)
        yield fam, random_rational_vector(rng, fam.n, 3)


def criterion_5(seed: int = 0) -> Criterion:
    failures, tight = [], 0
    for it, (fam, g) in enumerate(_lemma_instances(seed, 500)):
        mart = build_lemma_martingale(fam, g, check=False)
        rep = lemma_report(mart, fam, g)
        if not rep.ok:
            failures.append(it)
        tight += rep.max_norm == rep.bound
    return Criterion(5, "two-step martingale certification", not failures,
                     {"instances": 500, "failures": failures, "bound_attained": tight})


def _proposition_instances(seed: int):
    rng = stream(seed, "acceptance", 6)
    out = []
    for _ in range(16):
        q = int(rng.integers(1, 6))
        fams = []
        atoms = 1
        for _ in range(q):
            cap = max(2, min(6, 200_000 // (2 * atoms)))
            fam = random_family(rng, 5, 2, cap) if cap > 2 else random_family(rng, 5, 2, 2)
            atoms *= 2 * len(fam)
            fams.append(fam)
        n = max(f.n for f in fams)
        fams = [SetFamily.from_sets(n, f.sets()) for f in fams]
        g = random_rational_vector(rng, n, 1)
        g[int(rng.integers(0, n))] = Fraction(1) if rng.random() < 0.5 else Fraction(-1)
        out.append((fams, g))
    big = [disjoint_family(6)] * 5
    out.append((big, vector([1, Fraction(1, 2), 0, 0, -1, Fraction(-1, 3)])))
    return out


def criterion_6(seed: int = 0) -> Criterion:
    rows, ok = [], True
    for fams, g in _proposition_instances(seed):
        mart = compose_proposition_martingale(fams, g, check=False)
        rep = proposition_report(mart, fams)
        ok &= rep.ok
        rows.append({"q": len(fams), "sizes": [len(f) for f in fams],
                     "atoms": mart.filtration.n_atoms, "bound": str(rep.bound),
                     "max_norm": str(rep.max_norm), "ok": rep.ok,
                     "qualification": [str(s.qualification) for s in rep.stages]})
    # families of 502 disjoint sets: 5 / 501 < 0.01
    small = [disjoint_family(502)] * 5
    cert = a_upper_bound(small, vector([1] + [0] * 501))
    regime = cert.verified and cert.bound < Fraction(101, 100)
    ok &= regime
    return Criterion(6, "composed martingale bound and qualification", ok,
                     {"instances": rows,
                      "small_bound_regime": {"bound": str(cert.bound),
                                             "below_1.01": cert.bound < Fraction(101, 100),
                                             "verified": cert.verified,
                                             "method": cert.method}})


def criterion_7(seed: int = 0) -> Criterion:
    worst_exact, worst_float, failures, checked = None, None, [], 0

    def record(tag, rep):
        nonlocal worst_exact, worst_float, checked
        checked += 1
        if not rep.ok:
            failures.append(tag)
        s = rep.min_slack
        if s is None:
            return
        if isinstance(s, Fraction):
            worst_exact = s if worst_exact is None else min(worst_exact, s)
        else:
            worst_float = s if worst_float is None else min(worst_float, s)

    for it, (fam, g) in enumerate(_lemma_instances(seed, 500)):
        mart = build_lemma_martingale(fam, g, check=False)
        for spec in _norm_specs(fam.n):
            record(f"lemma{it}:{spec.kind}", check_norm_square_monotone(mart, spec))
    for it, (fams, g) in enumerate(_proposition_instances(seed)):
        mart = compose_proposition_martingale(fams, g, check=False)
        if mart.filtration.n_atoms > 20_000:
            specs = [NormSpec("sup")]
        else:
            specs = _norm_specs(fams[0].n)
        for spec in specs:
            record(f"prop{it}:{spec.kind}", check_norm_square_monotone(mart, spec))
    rng = stream(seed, "acceptance", 7)
    for it in range(100):
        exact = it % 2 == 0
        mart = random_martingale(rng, exact)
        for spec in _norm_specs(mart.ground):
            record(f"random{it}:{spec.kind}", check_norm_square_monotone(mart, spec))
    return Criterion(7, "blockwise norm-square monotonicity", not failures,
                     {"checks": checked, "failures": failures,
                      "min_exact_slack": str(worst_exact),
                      "min_float_slack": None if worst_float is None else float(worst_float)})


def criterion_8(seed: int = 0) -> Criterion:
    euclid = []
    rng = stream(seed, "acceptance", 8)
    z = tuple(rng.standard_normal(3))
    ok = True
    for eps in (0.25, 0.5, 1.0, 1.5):
        rep = ured_modulus_estimate(ModulusQuery(NormSpec("euclidean"), z, eps, seed=seed))
        err = abs(rep.estimate - euclidean_modulus(eps))
        ok &= err <= 1e-3
        euclid.append({"epsilon": eps, "estimate": round(rep.estimate, 9),
                       "closed_form": round(float(euclidean_modulus(eps)), 9),
                       "within_1e-3": bool(err <= 1e-3)})
    sup = []
    for n in (2, 3, 4):
        for j in range(n):
            e = [0.0] * n
            e[j] = 1.0
            for eps in (0.5, 1.0, 2.0):
                rep = ured_modulus_estimate(ModulusQuery(NormSpec("sup"), tuple(e), eps,
                                                         seed=seed))
                good = bool(rep.estimate < 1e-9)
                ok &= good
                sup.append({"n": n, "axis": j, "epsilon": eps, "estimate": rep.estimate,
                            "x": [round(float(v), 9) for v in rep.x],
                            "y": [round(float(v), 9) for v in rep.y], "ok": good})
    triple = []
    spec = NormSpec("triple", Measure.uniform(4))
    for k in range(20):
        z = tuple(stream(seed, "acceptance", 8, "direction", k).standard_normal(4))
        rep = ured_modulus_estimate(ModulusQuery(spec, z, 0.5, seed=seed + k))
        ok &= rep.estimate > 0
        triple.append(round(rep.estimate, 9))
    return Criterion(8, "directional modulus suite", ok,
                     {"euclidean": euclid, "sup_axes": sup, "triple_estimates": triple,
                      "triple_min": min(triple)})


def criterion_9(seed: int = 0) -> Criterion:
    rng = stream(seed, "acceptance", 9)
    violations = []
    for it in range(1000):
        n = int(rng.integers(1, 7))
        raw = rng.integers(1, 10, n)
        mu = Measure(tuple(Fraction(int(r), int(raw.sum())) for r in raw))
        f, x, y = (rng.uniform(-3, 3, n) for _ in range(3))
        if it % 10 == 0:
            y = x.copy()
        rep = pur_chain_check(mu, f, x, y)
        if not rep.ok:
            violations.append(it)
    return Criterion(9, "p-UR inequality chain", not violations,
                     {"trials": 1000, "violations": violations})


def criterion_10(seed: int = 0) -> Criterion:
    rng = stream(seed, "acceptance", 10)
    total, lowest = 0, np.inf
    ok = True
    for kind in ALL_NORMS:
        for _ in range(5):
            n = int(rng.integers(1, 7))
            raw = rng.integers(1, 10, n)
            mu = Measure(tuple(Fraction(int(r), int(raw.sum())) for r in raw))
            spec = NormSpec(kind, mu if kind in ("l2", "triple") else None)
            X = rng.standard_normal((5000, n)) * rng.uniform(0.01, 10, (5000, 1))
            Y = rng.standard_normal((5000, n)) * rng.uniform(0.01, 10, (5000, 1))
            r = (norm_sq(spec, X + Y) + norm_sq(spec, X - Y)) / (2 * norm_sq(spec, Y))
            total += len(r)
            lowest = min(lowest, float(np.min(r)))
    ok &= lowest >= 1 - 1e-12
    member = []
    for t in (0.5, 1.0, 2.0, 3.0):
        x = rng.standard_normal(3)
        i = int(np.ceil(t * t))
        rep = ui_membership(NormSpec("euclidean"), x, i, t, seed=seed)
        target = 1 + 1 / t ** 2
        good = (rep.status == "probably-in" and rep.best_ratio >= target - 1e-9
                and rep.best_ratio <= target + 1e-6)
        ok &= good
        member.append({"t": t, "i": i, "best_ratio": round(rep.best_ratio, 9),
                       "target": round(target, 9), "status": rep.status, "ok": good})
    return Criterion(10, "parallelogram ratio floor and Euclidean U_i(t) bound", ok,
                     {"evaluations": total, "min_ratio": round(lowest, 12),
                      "euclidean_membership": member})


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def run_all(seed: int = 0, log=sys.stderr) -> dict:
    results = []
    for fn in CRITERIA:
        t0 = time.perf_counter()
        res = fn(seed)
        if log is not None:
            print(f"[{'PASS' if res.passed else 'FAIL'}] {res.number:2d} {res.name} "
                  f"({time.perf_counter() - t0:.1f}s)", file=log)
        results.append(res.to_dict())
    return {"tool": "rotund", "version": __version__, "seed": seed,
            "criteria": results, "passed": all(r["passed"] for r in results)}
