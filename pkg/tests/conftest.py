from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rotund.families import SetFamily

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def families(draw, max_n=7, min_m=1, max_m=7):
    n = draw(st.integers(max(1, min_m.bit_length()), max_n))
    cap = (1 << n) - 1
    masks = draw(st.lists(st.integers(1, cap), min_size=min_m,
                          max_size=min(max_m, cap), unique=True))
    return SetFamily.from_sets(n, [[i for i in range(n) if mk >> i & 1] for mk in masks])


rationals = st.fractions(min_value=-3, max_value=3, max_denominator=6)


@st.composite
def rational_vectors(draw, n, lo=-3, hi=3):
    return [draw(st.fractions(min_value=lo, max_value=hi, max_denominator=6)) for _ in range(n)]


@pytest.fixture
def triangle():
    return SetFamily.from_sets(3, [[0, 1], [1, 2], [0, 2]])


def disjoint(m):
    return SetFamily.from_sets(m, [[i] for i in range(m)])


def common_point(m):
    return SetFamily.from_sets(m + 1, [[0, i] for i in range(1, m + 1)])


HALF = Fraction(1, 2)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        def number(line):
            return int(line.split("criterion")[1].split(":")[0])
        for line in sorted(ACCEPTANCE_LINES, key=number):
            terminalreporter.write_line(line)
