import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from heisfree.heisenberg import HeisPoint
from heisfree.scalars import ExactComplex, ExactScalar, ImaginaryQuat, Quaternion

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
exact_scalars = st.builds(ExactScalar, small_fractions, small_fractions)
nonzero_scalars = exact_scalars.filter(lambda x: not x.is_zero())
exact_complexes = st.builds(ExactComplex, exact_scalars, exact_scalars)
rational_complexes = st.builds(ExactComplex, small_fractions, small_fractions)

finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
quaternions = st.builds(Quaternion, finite, finite, finite, finite)
imaginary_quats = st.builds(ImaginaryQuat, finite, finite, finite)

exact_points = st.builds(HeisPoint, exact_complexes, exact_scalars)
quat_points = st.builds(HeisPoint, quaternions, imaginary_quats)


def rand_fraction(rng: random.Random, span=20, den=12) -> Fraction:
    return Fraction(rng.randint(-span * den, span * den), rng.randint(1, den))


def rand_scalar(rng):
    return ExactScalar(rand_fraction(rng), rand_fraction(rng))


def rand_complex(rng):
    return ExactComplex(rand_scalar(rng), rand_scalar(rng))


def rand_rational_complex(rng):
    return ExactComplex(rand_fraction(rng), rand_fraction(rng))


def rand_point(rng):
    return HeisPoint(rand_complex(rng), rand_scalar(rng))


def rand_quaternion(rng, scale=5.0):
    return Quaternion(*(rng.uniform(-scale, scale) for _ in range(4)))


@pytest.fixture
def rng():
    return random.Random(20261019)


ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(line)
