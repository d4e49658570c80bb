from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rotund.functions import Measure, NormSpec, norm_eval, vector
from rotund.modulus import (ModulusQuery, euclidean_modulus, pur_chain_check, ratios,
                            ui_membership, ured_modulus_estimate)

SUP = NormSpec("sup")
EUC = NormSpec("euclidean")


def test_euclidean_closed_form():
    assert euclidean_modulus(1.0) == pytest.approx(0.1339746, abs=1e-7)


@pytest.mark.parametrize("eps", [0.25, 0.5, 1.0, 1.5])
def test_euclidean_modulus_matches(eps):
    rep = ured_modulus_estimate(ModulusQuery(EUC, (1.0, 2.0, -0.5), eps, starts=64))
    assert rep.estimate == pytest.approx(euclidean_modulus(eps), abs=1e-3)


@pytest.mark.parametrize("eps", [0.5, 1.0, 2.0])
def test_sup_axis_degenerate_with_witness(eps):
    rep = ured_modulus_estimate(ModulusQuery(SUP, (0.0, 1.0), eps, starts=32))
    assert rep.estimate < 1e-9 and rep.verdict == "direction-degenerate"
    assert norm_eval(SUP, rep.x) == pytest.approx(1) and norm_eval(SUP, rep.y) == pytest.approx(1)
    assert norm_eval(SUP, 0.5 * (rep.x + rep.y)) == pytest.approx(1)
    assert np.allclose(rep.x - rep.y, rep.r * rep.unit_direction)
    assert rep.r >= eps * (1 - 1e-9)


def test_sup_segment_example():
    # the segment from (1,1) to (1,-1) lies on the sphere
    x, y = vector([1, 1]), vector([1, -1])
    assert norm_eval(SUP, (x + y) / 2) == 1


def test_triple_modulus_positive():
    spec = NormSpec("triple", Measure.uniform(4))
    rep = ured_modulus_estimate(ModulusQuery(spec, (1.0, -0.5, 0.25, 0.0), 0.5, starts=128))
    assert rep.estimate > 0 and rep.verdict == "positive"


def test_modulus_is_reproducible():
    spec = NormSpec("triple", Measure.uniform(3))
    q = ModulusQuery(spec, (0.3, 1.0, -2.0), 0.7, starts=64, seed=5)
    assert ured_modulus_estimate(q).to_dict() == ured_modulus_estimate(q).to_dict()


def test_modulus_errors():
    with pytest.raises(ValueError):
        ured_modulus_estimate(ModulusQuery(SUP, (0.0, 0.0), 0.5))
    with pytest.raises(ValueError):
        ured_modulus_estimate(ModulusQuery(SUP, (1.0, 0.0), 2.5))


@pytest.mark.parametrize("t", [0.5, 1.0, 2.0, 3.0])
def test_euclidean_membership_bound(t):
    x = np.array([0.3, -1.2, 0.7])
    i = int(np.ceil(t * t))
    rep = ui_membership(EUC, x, i, t, starts=128)
    assert rep.status == "probably-in"
    assert rep.best_ratio >= 1 + 1 / t ** 2 - 1e-9


def test_euclidean_membership_certified_out():
    # ratio floor is 1 + 1/t^2 = 1.25 < 1 + 1/i for i = 2
    rep = ui_membership(EUC, np.array([1.0, 1.0]), 2, 2.0, starts=64)
    assert rep.status == "certified-out" and rep.best_ratio < 1.5


@pytest.mark.parametrize("i", [1, 3, 50])
def test_sup_membership_certified_out(i):
    # x = (0,1), y = (t,0): ||x+y|| = ||x-y|| = ||y|| = t, ratio exactly 1
    t = 1.5
    rep = ui_membership(SUP, np.array([0.0, 1.0]), i, t, starts=64)
    assert rep.status == "certified-out"
    assert rep.best_ratio == pytest.approx(1.0, abs=1e-9)
    assert ratios(SUP, np.array([0.0, 1.0]), np.array([t, 0.0]))[0] == 1.0


@given(st.integers(1, 6), st.integers(0, 2 ** 32 - 1),
       st.sampled_from(["sup", "l2", "triple", "euclidean"]))
def test_ratio_floor(n, seed, kind):
    rng = np.random.default_rng(seed)
    spec = NormSpec(kind, Measure.uniform(n) if kind in ("l2", "triple") else None)
    x = rng.standard_normal(n) * rng.uniform(0.01, 10)
    Y = rng.standard_normal((200, n))
    assert ratios(spec, x, Y).min() >= 1 - 1e-12


def test_pur_examples():
    mu = Measure((Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)))
    x = vector([1, -2, Fraction(1, 2)])
    rep = pur_chain_check(mu, [1, 1, 1], x, x)
    assert rep.ok and rep.values["cauchy_schwarz"] == 0 and rep.values["triple_form"] == 0
    rep = pur_chain_check(mu, [0, 0, 0], x, vector([3, 0, 1]))
    assert rep.ok and rep.values["lhs"] == 0
    with pytest.raises(ValueError, match="strictly positive"):
        pur_chain_check(Measure((Fraction(1), Fraction(0))), [1, 1], [1, 0], [0, 1])


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(
    st.lists(st.integers(1, 9), min_size=n, max_size=n),
    *(st.lists(st.fractions(-3, 3, max_denominator=7), min_size=n, max_size=n)
      for _ in range(3)))))
def test_pur_chain_exact(args):
    raw, f, x, y = args
    mu = Measure(tuple(Fraction(r, sum(raw)) for r in raw))
    rep = pur_chain_check(mu, f, x, y)
    assert rep.ok and all(rep.steps.values())


@given(st.integers(1, 6), st.integers(0, 2 ** 32 - 1))
def test_pur_chain_float(n, seed):
    rng = np.random.default_rng(seed)
    raw = rng.integers(1, 10, n)
    mu = Measure(tuple(Fraction(int(r), int(raw.sum())) for r in raw))
    f, x, y = (rng.uniform(-3, 3, n) for _ in range(3))
    assert pur_chain_check(mu, f, x, y).ok
