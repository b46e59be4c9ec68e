import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maassrel.errors import ConfigurationError, DomainError, IncompleteTableError, TableFormatError, UsageError
from maassrel.quadforms import QForm, enumerate_classes
from maassrel.scalars import QuadExtScalar, chebyshev_u
from maassrel.sk import (
    CoefficientTable,
    EllipticHecke,
    SKLiftSpec,
    Verdict,
    average_coeff,
    detect_asymptotic,
    detect_sk,
    generate_table,
    hecke_power,
    maass_check,
    sk_coefficient,
    sk_coefficient_bessel,
    sk_coefficient_dks,
)


def toy_lift(base=None):
    return SKLiftSpec(EllipticHecke(10, {2: 10, 3: 5, 5: -7, 7: 3, 11: -2, 13: 1}), base or {-4: Fraction(1)})


@pytest.fixture(scope="module")
def toy_table():
    base = {-4: Fraction(1), -3: Fraction(2), -7: Fraction(-3), -23: Fraction(5, 2)}
    return generate_table(toy_lift(base), 600)


# -- Hecke powers -------------------------------------------------------------

def test_hecke_power_examples():
    h = toy_lift().hecke
    assert hecke_power(h, 2, -1) == 0
    assert hecke_power(h, 2, 0) == 1
    assert hecke_power(h, 2, 1) == 10
    assert hecke_power(h, 2, 2) == -130972
    assert hecke_power(h, 2, 3) == -2620440


@settings(max_examples=60)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(-10**6, 10**6), st.sampled_from([4, 6, 10, 12]), st.integers(0, 10))
def test_hecke_power_matches_satake_route(p, cp, k, mu):
    # c(p^mu) = p^(mu (2k-3)/2) U_mu(c(p) p^(-(2k-3)/2)), computed in Q(sqrt p)
    h = EllipticHecke(k, {p: cp})
    sq = QuadExtScalar(p, 0, 1)
    A = QuadExtScalar(p, 0, Fraction(cp, p ** (k - 1)))
    assert sq ** (mu * (2 * k - 3)) * chebyshev_u(A, mu) == hecke_power(h, p, mu)


def test_missing_eigenvalue():
    with pytest.raises(ConfigurationError):
        toy_lift().hecke.c(17)
    with pytest.raises(ValueError):
        EllipticHecke(9, {})


# -- coefficients -------------------------------------------------------------

def test_sk_coefficient_examples():
    lift = toy_lift()
    assert sk_coefficient(lift, QForm(1, 0, 1)) == 1
    assert sk_coefficient(lift, QForm(2, 0, 2)) == 522
    assert sk_coefficient(lift, QForm(1, 0, 4)) == 10
    assert sk_coefficient_dks(lift, QForm(1, 0, 1), 3) == 26249


def test_sk_coefficient_domain():
    with pytest.raises(DomainError):
        sk_coefficient(toy_lift(), QForm(1, 3, 1))
    with pytest.raises(ConfigurationError):
        sk_coefficient(toy_lift(), QForm(1, 1, 1))
    with pytest.raises(DomainError):
        sk_coefficient_dks(toy_lift(), QForm(2, 0, 2), 1)
    with pytest.raises(UsageError):
        sk_coefficient_dks(toy_lift(), QForm(1, 0, 1), 0)


def test_dks_agrees_with_invariant_formula():
    lift = toy_lift({-4: Fraction(1), -3: Fraction(2), -7: Fraction(3)})
    for d, T in ((-4, QForm(1, 0, 1)), (-3, QForm(1, 1, 1)), (-7, QForm(1, 1, 2))):
        for n in range(1, 31):
            if any(n % p == 0 for p in (7, 11, 13, 17, 19, 23, 29)):
                continue
            assert sk_coefficient_dks(lift, T, n) == sk_coefficient(lift, T.scale(n))


def test_bessel_route_examples():
    lift = toy_lift()
    assert sk_coefficient_bessel(lift, -4, 1, 1, 2) == 1
    assert sk_coefficient_bessel(lift, -4, 2, 1, 2) == 522
    assert sk_coefficient_bessel(lift, -4, 1, 2, 2) == 10
    assert sk_coefficient_bessel(lift, -4, 3, 1, 3) == 26249


def test_bessel_route_matches_invariant_formula():
    lift = toy_lift({-4: Fraction(1), -3: Fraction(2), -7: Fraction(-1), -8: Fraction(4)})
    for d in (-4, -3, -7, -8):
        for p in (2, 3, 5):
            for l in range(4):
                for m in range(4):
                    L, M = p**l, p**m
                    S = enumerate_classes(d * M * M, L)[0]
                    assert sk_coefficient_bessel(lift, d, L, M, p) == sk_coefficient(lift, S)


def test_bessel_route_rejects_non_powers():
    with pytest.raises(UsageError):
        sk_coefficient_bessel(toy_lift(), -4, 6, 1, 2)
    with pytest.raises(DomainError):
        sk_coefficient_bessel(toy_lift(), -16, 1, 1, 2)


def test_coefficient_is_class_function():
    lift = toy_lift({-4: Fraction(1), -3: Fraction(2), -7: Fraction(-3), -8: Fraction(1, 3)})
    rng = random.Random(5)
    done = 0
    while done < 200:
        d = rng.choice([-4, -3, -7, -8])
        M, L = rng.randint(1, 6), rng.randint(1, 4)
        S = rng.choice(enumerate_classes(d * M * M, L))
        T = ((1, rng.randint(-4, 4)), (0, 1)) if rng.random() < 0.5 else ((1, 0), (rng.randint(-4, 4), 1))
        S2 = S.transform(T).transform(((0, -1), (1, 0)))
        assert sk_coefficient(lift, S2) == sk_coefficient(lift, S)
        done += 1


# -- tables -------------------------------------------------------------------

def test_generate_table_small():
    table = generate_table(toy_lift(), 16)
    assert table.sorted_items() == [
        (QForm(1, 0, 4), Fraction(10)),
        (QForm(2, 0, 2), Fraction(522)),
        (QForm(1, 0, 1), Fraction(1)),
    ]


def test_generate_table_requires_eigenvalues():
    lift = SKLiftSpec(EllipticHecke(10, {2: 10}), {-4: Fraction(1)})
    with pytest.raises(ConfigurationError):
        generate_table(lift, 40)


def test_table_value_reduces_and_reports_missing(toy_table):
    assert toy_table.value(QForm(6, 1, 1)) == toy_table.value(QForm(1, 1, 6)) == Fraction(5, 2)
    with pytest.raises(IncompleteTableError):
        toy_table.value(QForm(1, 0, 5))


def test_table_json_round_trip(toy_table):
    text = toy_table.dumps()
    again = CoefficientTable.loads(text)
    assert again.k == toy_table.k and again.entries == toy_table.entries
    assert again.dumps() == text


def test_table_json_rejects_bad_input():
    good = {"weight": 10, "entries": [{"a": 1, "b": 0, "c": 1, "value": "1/1"}]}
    CoefficientTable.from_json(good)
    dup = {"weight": 10, "entries": good["entries"] * 2}
    with pytest.raises(TableFormatError):
        CoefficientTable.from_json(dup)
    with pytest.raises(TableFormatError):
        CoefficientTable.from_json({"weight": 10, "entries": [{"a": 6, "b": 1, "c": 1, "value": "1"}]})
    with pytest.raises(TableFormatError) as exc:
        CoefficientTable.loads('{"weight": 10,\n "entries": [}')
    assert "line 2" in str(exc.value)


# -- Maass relation -------------------------------------------------------------

def test_maass_check_passes_on_lift(toy_table):
    report = maass_check(toy_table)
    assert report.ok and report.rows
    assert all(r.status == "pass" for r in report.rows)


def test_maass_check_detects_perturbation():
    table = generate_table(toy_lift(), 16)
    table.entries[QForm(2, 0, 2)] = Fraction(523)
    report = maass_check(table)
    assert [r.form for r in report.failed] == [QForm(2, 0, 2)]
    assert report.failed[0].rhs == 522


def test_maass_check_incomplete():
    table = CoefficientTable(10, {QForm(2, 0, 2): Fraction(522)})
    report = maass_check(table)
    assert report.incomplete and not report.ok


def test_maass_check_class_function_violation(toy_table):
    table = toy_table.copy()
    table.entries[QForm(2, 1, 3)] += 1
    report = maass_check(table)
    assert report.class_function_failures


# -- averaged detector ----------------------------------------------------------

def test_average_coeff_example():
    table = CoefficientTable(10, {QForm(1, 1, 6): Fraction(1), QForm(2, 1, 3): Fraction(2), QForm(2, -1, 3): Fraction(3)})
    assert average_coeff(table, -23, 1) == 2
    with pytest.raises(IncompleteTableError):
        average_coeff(table, -23, 2)


@pytest.mark.parametrize("d", [-4, -3, -7, -23])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_detector_consistent_on_lift(toy_table, d, p):
    assert detect_sk(toy_table, d, p).verdict is Verdict.CONSISTENT


def test_detector_base_vanishes():
    table = generate_table(toy_lift({-4: Fraction(0)}), 64)
    assert detect_sk(table, -4, 2).verdict is Verdict.BASE_VANISHES


def test_detector_fails_with_defect(toy_table):
    table = toy_table.copy()
    table.entries[QForm(2, 0, 2)] += 1
    result = detect_sk(table, -4, 2)
    assert result.verdict is Verdict.FAILS
    assert result.defect == 1
    assert json.loads(json.dumps(result.to_json()))["defect"] == "1/1"


def test_detect_asymptotic(toy_table):
    rows = detect_asymptotic(toy_table, -23, [2, 3, 5])
    assert [r["value"] for r in rows] == [0, 0, 0]
    assert detect_asymptotic(toy_table, -23, []) == []
    table = toy_table.copy()
    for S in enumerate_classes(-23, 3):
        table.entries[S] -= 3**9
    rows = detect_asymptotic(table, -23, [2, 3])
    assert [r["value"] for r in rows] == [0, -1]
    missing = detect_asymptotic(toy_table, -23, [7])
    assert "incomplete" in missing[0]
