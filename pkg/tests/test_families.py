from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import common_point, disjoint, families
from rotund.families import (FamilyError, SetFamily, gamma_k, gamma_profile, index_report,
                             l_index, win, win_tilde)
from rotund.oracles import indices_brute, l_brute, lattice_l_table


def test_l_triangle(triangle):
    assert l_index(triangle)[0] == 2


def test_l_single_set():
    assert l_index(SetFamily.from_sets(4, [[1, 3]]))[0] == 1


@pytest.mark.parametrize("m", [1, 2, 5, 9])
def test_l_disjoint(m):
    assert l_index(disjoint(m))[0] == 1


def test_l_witness_point_has_max_degree(triangle):
    l, p = l_index(common_point(4))
    assert (l, p) == (4, 0)


def test_gamma_examples(triangle):
    assert gamma_k(triangle, 2) == 2
    assert all(gamma_k(disjoint(6), k) == 1 for k in range(1, 7))
    fam = common_point(5)
    assert [gamma_k(fam, k) for k in range(1, 6)] == [1, 2, 3, 4, 5]


def test_win_examples(triangle):
    for m in range(1, 8):
        assert win(disjoint(m)) == Fraction(1, m)
    assert win(SetFamily.from_sets(2, [[0]])) == 1
    assert win(triangle) == Fraction(2, 3)


def test_win_tilde_examples(triangle):
    for m in range(2, 8):
        assert win_tilde(disjoint(m)) == Fraction(1, m - 1)
        assert win_tilde(common_point(m)) == Fraction(m, m - 1)
    assert win_tilde(triangle) == 1
    with pytest.raises(FamilyError, match="size < 2"):
        win_tilde(SetFamily.from_sets(2, [[0]]))


def test_errors():
    with pytest.raises(FamilyError, match="empty family"):
        l_index(SetFamily.from_sets(3, []))
    with pytest.raises(FamilyError, match="empty set in family"):
        l_index(SetFamily.from_sets(3, [[0], []]))
    with pytest.raises(FamilyError):
        SetFamily.from_sets(3, [[0, 1], [1, 0]])
    with pytest.raises(FamilyError):
        SetFamily.from_sets(3, [[3]])
    assert len(SetFamily.from_sets(3, [[0, 1], [1, 0]], allow_duplicates=True)) == 2


def test_report_witnesses(triangle):
    rep = index_report(triangle)
    d = rep.to_dict()
    assert d["l"] == 2 and d["win"] == "2/3" and d["win_tilde"] == "1/1"
    assert d["gamma"] == [1, 2, 2]
    # every witness subfamily attains its gamma value
    for k, w in enumerate(rep.gamma_witnesses, start=1):
        assert len(w) == k
        assert l_index(triangle.subfamily(w))[0] == rep.gamma[k - 1]


@given(families(max_n=8, max_m=9))
def test_optimized_matches_brute_force(fam):
    ref = indices_brute(fam)
    rep = index_report(fam)
    assert rep.l_value == ref["l"] == l_brute(fam)
    assert rep.gamma == ref["gamma"]
    assert rep.win_value == ref["win"]
    if len(fam) >= 2:
        assert rep.win_tilde_value == ref["win_tilde"]


@given(families(max_n=6, max_m=7))
def test_lattice_table_matches_enumeration(fam):
    table = lattice_l_table(fam)
    m = len(fam)
    for k in range(1, m + 1):
        for c in combinations(range(m), k):
            mask = sum(1 << j for j in c)
            assert table[mask] == l_brute(fam.subfamily(c))


@given(families(max_n=8, min_m=2, max_m=9))
def test_sandwich(fam):
    w, wt = win(fam), win_tilde(fam)
    assert w <= wt <= 2 * w


@given(families(max_n=8, max_m=9))
def test_gamma_monotone_and_bounded(fam):
    gamma, _ = gamma_profile(fam)
    assert gamma[0] == 1
    assert all(a <= b <= a + 1 for a, b in zip(gamma, gamma[1:]))
    assert gamma[-1] == l_index(fam)[0]


@given(families(max_n=7, max_m=7), st.randoms(use_true_random=False))
def test_indices_invariant_under_reordering(fam, rnd):
    order = list(range(len(fam)))
    rnd.shuffle(order)
    a, b = index_report(fam), index_report(fam.permuted(order))
    assert (a.l_value, a.gamma, a.win_value) == (b.l_value, b.gamma, b.win_value)


@given(families(max_n=7, max_m=7))
def test_win_is_min_ratio(fam):
    gamma, _ = gamma_profile(fam)
    assert win(fam) == min(Fraction(g, k) for k, g in enumerate(gamma, start=1))
    assert win(fam) <= 1 and win(fam) > 0
