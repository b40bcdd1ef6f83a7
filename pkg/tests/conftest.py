import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from biquad.bipoly import BiPoly
from biquad.scalars import CycloScalar, euler_phi
from biquad.surfauto import DiagonalAut

settings.register_profile(
    "biquad",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("biquad")

small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def scalars(draw, conductor=None):
    n = conductor or draw(st.integers(1, 12))
    coeffs = draw(st.lists(small_fracs, min_size=euler_phi(n), max_size=euler_phi(n)))
    return CycloScalar(n, coeffs)


@st.composite
def bipolys(draw, max_a=3, max_b=3, rational=True, min_terms=1):
    a = draw(st.integers(1, max_a))
    b = draw(st.integers(1, max_b))
    points = [(i, j) for i in range(a + 1) for j in range(b + 1)]
    chosen = draw(st.lists(st.sampled_from(points), min_size=min_terms, max_size=len(points), unique=True))
    coeff = small_fracs.filter(bool) if rational else scalars(draw(st.sampled_from([1, 3, 4, 8])))
    return BiPoly(a, b, {p: draw(coeff) for p in chosen})


@st.composite
def diagonal_auts(draw, max_conductor=24):
    n = draw(st.integers(1, max_conductor))
    return DiagonalAut(n, draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1)))


@pytest.fixture
def rng():
    return random.Random(20240611)


def rand_frac(rng: random.Random) -> Fraction:
    return Fraction(rng.choice([1, -1, 2, -2, 3, 5, -7]), rng.choice([1, 1, 2, 3]))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
