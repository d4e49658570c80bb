from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog

from conftest import common_point, disjoint, families
from rotund.families import SetFamily, win
from rotund.intersection import kelley_number_rep, max_min_measure, verify_duality
from rotund.oracles import kelley_rep_brute
from rotund.simplex import UnboundedLP, simplex_max


def scipy_max_min(fam):
    """max t s.t. mu(B) >= t for all B, mu a probability vector (HiGHS)."""
    n, m = fam.n, len(fam)
    c = np.zeros(n + 1)
    c[-1] = -1
    A = np.zeros((m, n + 1))
    for j, pts in enumerate(fam.sets()):
        A[j, pts] = -1
        A[j, -1] = 1
    res = linprog(c, A_ub=A, b_ub=np.zeros(m), A_eq=[[1] * n + [0]], b_eq=[1],
                  bounds=[(0, None)] * n + [(None, None)], method="highs")
    assert res.status == 0
    return -res.fun


def test_lp_examples(triangle):
    cert = max_min_measure(triangle)
    assert cert.value == Fraction(2, 3)
    assert cert.primal.weights == (Fraction(1, 3),) * 3
    for m in range(1, 7):
        c = max_min_measure(disjoint(m))
        assert c.value == Fraction(1, m)
        assert all(c.primal.of(b) == Fraction(1, m) for b in disjoint(m).sets())
    c = max_min_measure(common_point(4))
    assert c.value == 1 and c.primal.weights[0] == 1


def test_kelley_examples(triangle):
    for L in (1, 3, 12):
        assert kelley_number_rep(common_point(3), L)[0] == 1
    for m in range(1, 6):
        assert kelley_number_rep(disjoint(m), m)[0] == Fraction(1, m)
    assert kelley_number_rep(triangle, 6)[0] == Fraction(2, 3)


def test_duality_examples(triangle):
    r = verify_duality(triangle, 6)
    assert r.gap == 0 and r.kelley_rep == Fraction(2, 3) and r.ok
    r = verify_duality(disjoint(2), 2)
    assert r.gap == 0 and r.kelley_rep == Fraction(1, 2)
    r = verify_duality(SetFamily.from_sets(3, [[1]]), 4)
    assert r.gap == 0 and r.kelley_rep == 1


@given(families(max_n=6, max_m=6))
def test_lp_matches_scipy(fam):
    cert = max_min_measure(fam)
    assert abs(float(cert.value) - scipy_max_min(fam)) < 1e-9


@given(families(max_n=6, max_m=6))
def test_lp_certificate_is_exact(fam):
    cert = max_min_measure(fam)
    assert cert.primal.is_probability
    assert all(x >= 0 for x in cert.dual) and sum(cert.dual) == 1
    assert cert.primal_value == cert.dual_value == cert.value


@given(families(max_n=5, max_m=5), st.integers(1, 5))
def test_kelley_matches_brute_force(fam, max_len):
    assert kelley_number_rep(fam, max_len)[0] == kelley_rep_brute(fam, max_len)


@given(families(max_n=6, max_m=6))
def test_kelley_between_lp_and_win(fam):
    lp = max_min_measure(fam).value
    kr, length = kelley_number_rep(fam, 8)
    assert lp <= kr <= win(fam)
    assert 1 <= length <= 8


def test_simplex_small_problems():
    # max x + y  s.t. x + 2y <= 4, 3x + y <= 6
    sol = simplex_max([[1, 2], [3, 1]], [4, 6], [1, 1])
    assert sol.value == Fraction(14, 5)
    assert list(sol.x) == [Fraction(8, 5), Fraction(6, 5)]
    assert sum(yi * bi for yi, bi in zip(sol.y, [4, 6])) == sol.value
    with pytest.raises(UnboundedLP):
        simplex_max([[1, -1]], [1], [0, 1])
