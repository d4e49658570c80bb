import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import disjoint, rational_vectors
from rotund.functions import (Measure, NormSpec, family_functions, norm_eval, norm_sq,
                              parallelogram_ratio, truncate_decompose, urysohn_indicator,
                              vector)


def test_norm_examples():
    tri = NormSpec("triple", Measure.uniform(3))
    assert norm_eval(tri, vector([1, 1, 1])) == pytest.approx(math.sqrt(2), abs=1e-15)
    assert norm_eval(NormSpec("sup"), vector([2, -3])) == 3
    assert norm_sq(NormSpec("triple", Measure.uniform(2)), vector([1, 0])) == Fraction(3, 2)
    assert norm_sq(NormSpec("l2", Measure.uniform(2)), vector([1, 0])) == Fraction(1, 2)
    assert norm_sq(NormSpec("euclidean"), vector([3, 4])) == 25


def test_norm_spec_validation():
    with pytest.raises(ValueError):
        NormSpec("l1")
    with pytest.raises(ValueError):
        NormSpec("triple")
    with pytest.raises(ValueError):
        NormSpec("l2", Measure((Fraction(1, 3), Fraction(1, 3))))
    with pytest.raises(ValueError):
        norm_sq(NormSpec("l2", Measure.uniform(2)), vector([1, 2, 3]))


def test_measure_basics():
    mu = Measure((Fraction(1, 2), Fraction(0), Fraction(1, 2)))
    assert mu.is_probability and not mu.strictly_positive
    assert mu.of([0, 1]) == Fraction(1, 2)
    assert Measure.dirac(3, 1).weights == (0, 1, 0)
    with pytest.raises(ValueError):
        Measure((Fraction(-1), Fraction(2)))


def test_truncate_examples():
    g0, g1 = truncate_decompose(vector([Fraction(1, 2), -1]))
    assert list(g1) == [Fraction(1, 2), -1] and not g0.any()
    g0, g1 = truncate_decompose(vector([2, -3]))
    assert list(g1) == [1, -1] and list(g0) == [1, -2]
    assert max(abs(g0)) == 2
    g0, g1 = truncate_decompose(vector([0, 0]))
    assert not g0.any() and not g1.any()


@given(st.integers(1, 6).flatmap(rational_vectors))
def test_truncate_properties(g):
    g = vector(g)
    g0, g1 = truncate_decompose(g)
    assert all(g0 + g1 == g)
    assert max(abs(g1)) <= 1
    assert max(abs(g0)) == max(max(abs(g)) - 1, 0)
    # the parts never point in opposite directions
    assert all(a * b >= 0 for a, b in zip(g0, g1))


def test_urysohn_examples():
    assert list(urysohn_indicator([0], 3)) == [1, 0, 0]
    assert list(urysohn_indicator(range(4), 4)) == [1, 1, 1, 1]
    f = urysohn_indicator([0, 1], 3, [1, Fraction(1, 2), 0])
    assert list(f) == [1, Fraction(1, 2), 0]
    with pytest.raises(ValueError, match="vanish"):
        urysohn_indicator([0, 1], 3, [1, 0, Fraction(1, 2)])
    with pytest.raises(ValueError, match="sup norm"):
        urysohn_indicator([0, 1], 3, [Fraction(1, 2), 0, 0])
    with pytest.raises(ValueError):
        urysohn_indicator([], 3)


def test_family_functions_rows():
    F = family_functions(disjoint(3))
    assert (F == np.eye(3, dtype=int)).all()


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(rational_vectors(n), rational_vectors(n))),
       st.sampled_from(["sup", "l2", "triple", "euclidean"]))
def test_parallelogram_ratio_at_least_one(xy, kind):
    x, y = vector(xy[0]), vector(xy[1])
    if not y.any():
        return
    spec = NormSpec(kind, Measure.uniform(len(x)) if kind in ("l2", "triple") else None)
    assert parallelogram_ratio(spec, x, y) >= 1


@given(st.integers(1, 5).flatmap(rational_vectors), st.fractions(-4, 4, max_denominator=5))
def test_norm_homogeneous_exactly(f, c):
    f = vector(f)
    for kind in ("sup", "l2", "triple", "euclidean"):
        spec = NormSpec(kind, Measure.uniform(len(f)) if kind in ("l2", "triple") else None)
        assert norm_sq(spec, c * f) == c * c * norm_sq(spec, f)
