from fractions import Fraction

import pytest

from maassrel.bessel import BesselKind, SphericalParams, classify
from maassrel.scalars import QuadExtScalar

GRID_PRIMES = (2, 3, 5)


def trace_values(q):
    """Satake-trace grid: 0, +-1, +-2, +-(q^1/2 + q^-1/2), 1 + q^-1/2."""
    s = QuadExtScalar(q, 0, 1 + Fraction(1, q))
    r = lambda v: QuadExtScalar(q, v)
    return [r(0), r(1), r(-1), r(2), r(-2), s, -s, QuadExtScalar(q, 1, Fraction(1, q))]


def param_grid():
    for q in GRID_PRIMES:
        vals = trace_values(q)
        for A in vals:
            for B in vals:
                for delta in (-1, 0, 1):
                    yield SphericalParams(q, A, B, delta)


def sk_grid():
    return [p for p in param_grid() if classify(p).kind is BesselKind.SK_TYPE]


def exceptional_params(q):
    s = QuadExtScalar(q, 0, 1 + Fraction(1, q))
    return SphericalParams(q, QuadExtScalar(q), -s, -1)


@pytest.fixture(scope="session")
def grid():
    return list(param_grid())


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
