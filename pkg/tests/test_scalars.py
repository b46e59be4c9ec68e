from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maassrel.errors import UsageError
from maassrel.scalars import (
    QuadExtScalar,
    chebyshev_u,
    field_ops,
    parse_rational,
    parse_scalar,
    poly_mul_truncated,
    series_div,
    valuation,
)

R2 = QuadExtScalar.sqrt(2)

rationals = st.fractions(max_denominator=50).filter(lambda r: abs(r) < 10**4)


def quad(q=3):
    return st.builds(lambda x, y: QuadExtScalar(q, x, y), rationals, rationals)


def test_field_ops_examples():
    one = QuadExtScalar(2, 1)
    assert field_ops(one, R2, "mul") == QuadExtScalar(2, 0, 1)
    assert field_ops(R2, R2, "mul") == QuadExtScalar(2, 2, 0)
    inv = field_ops(one, QuadExtScalar(2, 1, 1), "div")
    assert inv == QuadExtScalar(2, -1, 1)
    # conjugate-multiply oracle
    assert QuadExtScalar(2, 1, 1) * QuadExtScalar(2, -1, 1) == 1


def test_field_ops_errors():
    with pytest.raises(UsageError):
        field_ops(R2, QuadExtScalar.sqrt(3), "add")
    with pytest.raises(ZeroDivisionError):
        field_ops(R2, QuadExtScalar(2), "div")
    with pytest.raises(UsageError):
        R2 + QuadExtScalar.sqrt(5)


@given(quad(), quad(), quad())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    if a:
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@given(quad(5))
def test_norm_zero_only_at_zero(a):
    assert (a.norm() == 0) == (not a)


@pytest.mark.parametrize("r, p, v", [(12, 2, 2), (Fraction(3, 8), 2, -3), (35, 3, 0)])
def test_valuation_examples(r, p, v):
    assert valuation(r, p) == v


def test_valuation_rejects_zero():
    with pytest.raises(ValueError):
        valuation(0, 3)


nonzero = st.fractions(max_denominator=10**6).filter(lambda r: r != 0)


@settings(max_examples=200)
@given(nonzero, nonzero, st.sampled_from([2, 3, 5, 7, 11]))
def test_valuation_additive(r, s, p):
    assert valuation(r * s, p) == valuation(r, p) + valuation(s, p)


def test_chebyshev_examples():
    A = QuadExtScalar(3, 0, Fraction(4, 3))
    assert chebyshev_u(A, 0) == 1
    assert chebyshev_u(A, -1) == 0
    assert chebyshev_u(QuadExtScalar(2, 2), 5) == 6
    assert chebyshev_u(A, 2) == A * A - 1


@pytest.mark.parametrize("m", range(0, 12))
def test_chebyshev_equal_parameters_convention(m):
    # a = 1/a = 1: the sum of a^(m+1-2i), i = 1..m+1, is m + 1; a = -1 gives (-1)^m (m+1)
    assert chebyshev_u(Fraction(2), m) == m + 1
    assert chebyshev_u(Fraction(-2), m) == (-1) ** m * (m + 1)


@given(st.fractions(min_value=Fraction(1, 20), max_value=20, max_denominator=20).filter(lambda a: a != 1),
       st.integers(0, 15))
def test_chebyshev_matches_power_quotient(a, m):
    A = a + 1 / a
    expected = (a ** (m + 1) - a ** (-(m + 1))) / (a - 1 / a)
    assert chebyshev_u(A, m) == expected


@given(quad(3))
def test_chebyshev_determinant_identity(A):
    for m in range(0, 21):
        assert chebyshev_u(A, m) ** 2 - chebyshev_u(A, m + 1) * chebyshev_u(A, m - 1) == 1


def test_series_div_examples():
    assert series_div([1], [1, -1], 4) == [1, 1, 1, 1, 1]
    assert series_div([0, 1], [1], 2) == [0, 1, 0]
    assert all(isinstance(c, Fraction) for c in series_div([1], [1, -1], 3))


def test_series_div_zero_constant_term():
    with pytest.raises(ZeroDivisionError):
        series_div([1], [0, 1], 3)


@given(st.lists(quad(2), min_size=1, max_size=5), st.lists(quad(2), min_size=1, max_size=5), st.integers(0, 12))
def test_series_div_convolution_roundtrip(numer, denom, n):
    if not denom[0]:
        denom[0] = QuadExtScalar(2, 1)
    quotient = series_div(numer, denom, n)
    assert len(quotient) == n + 1
    back = poly_mul_truncated(quotient, denom, n)
    padded = numer[: n + 1] + [QuadExtScalar(2)] * (n + 1 - len(numer[: n + 1]))
    assert back == padded


def test_rational_serialization_roundtrip():
    for r in (Fraction(0), Fraction(-3, 7), Fraction(10**30, 3)):
        s = f"{r.numerator}/{r.denominator}"
        assert parse_rational(s) == r
    a = QuadExtScalar(3, Fraction(-1, 9), Fraction(2, 9))
    assert a.to_json() == {"q": 3, "x": "-1/9", "y": "2/9"}
    assert QuadExtScalar.from_json(a.to_json()) == a


@pytest.mark.parametrize(
    "text, expected",
    [
        ("0", QuadExtScalar(2)),
        ("-3/4", QuadExtScalar(2, Fraction(-3, 4))),
        ("1+1/2*sqrt(2)", QuadExtScalar(2, 1, Fraction(1, 2))),
        ("1+-1/2*sqrt(2)", QuadExtScalar(2, 1, Fraction(-1, 2))),
        ("1 - sqrt(2)", QuadExtScalar(2, 1, -1)),
        ("3/2*sqrt(2)", QuadExtScalar(2, 0, Fraction(3, 2))),
    ],
)
def test_parse_scalar(text, expected):
    assert parse_scalar(text, 2) == expected
    assert parse_scalar(str(expected), 2) == expected


@pytest.mark.parametrize("text", ["1+sqrt(3)", "abc", "1/0", "1+2*sqrt()"])
def test_parse_scalar_rejects(text):
    with pytest.raises(ValueError):
        parse_scalar(text, 2)
