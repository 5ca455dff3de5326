from fractions import Fraction

import pytest

from toricperiod.family import (
    PHI_W,
    SPH,
    LinComb,
    Translate,
    evaluate,
    f0_table,
    random_table,
    sph_table,
)
from toricperiod.laurent import ZPoly, mono, one, qpow, y1, y2, zero
from toricperiod.localfield import (
    ConductorExceeded,
    Mat2,
    coset_reps,
    diag,
    psi_eval,
    unipotent,
    unit_reps,
    weyl,
)
from toricperiod.scalars import FieldMismatch, QCyclotomic, QNumeric, QSymbolic
from toricperiod.whittaker import (
    _unit_average,
    cs_factor_regularized,
    lambda_chi,
    projected_sph,
    shintani_sph,
    sph_big_cell_value,
    whittaker_coefficient,
)

S = QSymbolic()


# -- closed forms -----------------------------------------------------------------


def test_shintani_values():
    assert shintani_sph(S, -2).is_zero
    assert shintani_sph(S, -1).is_zero
    assert shintani_sph(S, 0) == one(S)
    assert shintani_sph(S, 1) == y1(S) + y2(S)
    assert shintani_sph(S, 2) == y1(S, 2) + y1(S) * y2(S) + y2(S, 2)
    for k in range(1, 7):
        expected = (y1(S) + y2(S)) * shintani_sph(S, k - 1) - y1(S) * y2(
            S
        ) * shintani_sph(S, k - 2)
        assert shintani_sph(S, k) == expected


def test_shintani_window_clears_to_one():
    window = ZPoly.from_function(S, -2, 8, lambda k: shintani_sph(S, k))
    cleared = window.clear_l_factor(0)
    assert cleared == ZPoly(S, 0, 0, {0: one(S)})


def test_sph_big_cell_value_matches_evaluation():
    for p in (2, 3):
        for m in (1, 2, 3):
            g = weyl(p) * unipotent(p, Fraction(1, p**m))
            assert evaluate(SPH, g, S) == sph_big_cell_value(S, m)


def test_cs_factor():
    expected = one(S) - qpow(S, -1) * y1(S) * y2(S, -1)
    assert cs_factor_regularized(S) == expected
    N = QNumeric(3)
    assert cs_factor_regularized(N) == one(N) - qpow(N, -1) * y1(N) * y2(N, -1)
    assert cs_factor_regularized(S).to_x_display() == "1 - q^(-1)·X1·X2^(-1)"


# -- unit averages ---------------------------------------------------------------


def test_unit_average_matches_direct_sum():
    for p in (2, 3):
        for depth in (1, 2, 3):
            units = unit_reps(p, depth)
            for num in (1, 2, 5, -3):
                for e in (-3, -2, -1, 0, 1):
                    x = Fraction(num) * Fraction(p) ** e
                    level = max(1, -e)
                    got = _unit_average(p, level, depth, x)
                    direct = sum(
                        (psi_eval(-a * x, p, level) for a in units),
                        start=psi_eval(Fraction(0), p, level) * 0,
                    )
                    assert got * len(units) == direct


def test_unit_average_closed_form():
    # the average depends only on the valuation: 1, then -1/(q-1), then 0
    for p in (2, 3, 5):
        for depth in (1, 2):
            assert _unit_average(p, 1, depth, Fraction(7)).rational_part() == 1
            assert _unit_average(p, 1, depth, Fraction(0)).rational_part() == 1
            got = _unit_average(p, 1, depth, Fraction(3, p) if p != 3 else Fraction(2, 3))
            assert got.rational_part() == Fraction(-1, p - 1)
            deep = _unit_average(p, 2, depth + 1, Fraction(1, p * p))
            assert deep.rational_part() == 0


def test_unit_average_conductor_guard():
    with pytest.raises(ConductorExceeded):
        _unit_average(3, 1, 2, Fraction(1, 9))


# -- spherical coefficients against honest enumeration ------------------------------


def brute_sph_coefficient(p, k):
    """c_k of the spherical vector by direct double enumeration.

    Truncating u at valuation -(k+2) is exact because the unit average kills
    every deeper shell; nothing from the closed forms under test is used.
    """
    F = QNumeric(p)
    depth = max(0, k + 2)
    l_u = max(1, -k)
    l_a = max(1, depth - k)
    level = max(1, depth - k)
    units = unit_reps(p, l_a)
    w = weyl(p)
    total = zero(F)
    for u in coset_reps(p, -depth, l_u):
        f_u = evaluate(SPH, w * unipotent(p, u), F)
        acc = psi_eval(Fraction(0), p, level) * 0
        for a in units:
            acc = acc + psi_eval(-a * Fraction(p) ** k * u, p, level)
        s = acc.rational_part() / len(units)
        if s:
            total = total + f_u.scale(s)
    total = total.scale(Fraction(1, p**l_u))
    return mono(F, Fraction(1), 0, k) * total


@pytest.mark.parametrize("p", [2, 3])
def test_spherical_coefficients_by_enumeration(p):
    F = QNumeric(p)
    cs = cs_factor_regularized(F)
    for k in range(-2, 4):
        assert brute_sph_coefficient(p, k) == cs * shintani_sph(F, k)


# -- engine coefficients ---------------------------------------------------------------


def test_marker_closed_forms():
    assert whittaker_coefficient(SPH, 2, S) == cs_factor_regularized(S) * shintani_sph(S, 2)
    assert whittaker_coefficient(PHI_W, 3, S) == y2(S, 3)
    assert whittaker_coefficient(PHI_W, 0, S) == one(S)
    assert whittaker_coefficient(PHI_W, -1, S).is_zero
    with pytest.raises(ValueError):
        whittaker_coefficient(SPH, 0)


def test_iwahori_table_integrates_to_closed_form():
    for p in (2, 3):
        F = QNumeric(p)
        for n in (1, 2):
            f = f0_table(F, p, n)
            for k in range(-3, 4):
                assert whittaker_coefficient(f, k) == whittaker_coefficient(PHI_W, k, F)


def test_sph_table_rides_the_split():
    for p in (2, 5):
        F = QNumeric(p)
        f = sph_table(F, p, 1)
        for k in range(-2, 3):
            assert whittaker_coefficient(f, k) == whittaker_coefficient(SPH, k, F)


def test_translate_shifts_coefficients():
    # right translation by diag(p^j, 1) shifts the index: c_k -> c_{k+j}
    cases = [(3, 1, range(-2, 4)), (2, 2, range(-3, 3))]
    for p, j, ks in cases:
        F = QNumeric(p)
        cs = cs_factor_regularized(F)
        t = Translate(diag(p, Fraction(p) ** j, 1), SPH)
        for k in ks:
            assert whittaker_coefficient(t, k) == cs * shintani_sph(F, k + j)


def test_coefficient_linearity():
    p = 3
    F = QNumeric(p)
    f1 = random_table(p, 1, seed=51)
    f2 = random_table(p, 1, seed=52)
    c1 = mono(F, Fraction(2), 1, 0)
    c2 = mono(F, Fraction(-1, 2), 0, 1)
    combo = LinComb([(c1, f1), (c2, f2)])
    for k in range(-2, 3):
        expected = c1 * whittaker_coefficient(f1, k) + c2 * whittaker_coefficient(f2, k)
        assert whittaker_coefficient(combo, k) == expected


def test_low_tail_vanishes():
    # coefficients die below -(n+1): the unit average kills every shell the
    # invariance level leaves nonconstant
    for p, n in [(2, 1), (3, 1), (2, 2), (3, 2)]:
        f = random_table(p, n, seed=60 + p + n)
        for k in range(-(n + 1), -(n + 4), -1):
            assert whittaker_coefficient(f, k).is_zero


def test_field_mismatch_guard():
    f = random_table(3, 1, seed=3)
    with pytest.raises(FieldMismatch):
        whittaker_coefficient(f, 0, QNumeric(5))


# -- the Whittaker functional ---------------------------------------------------------


def test_lambda_of_iwahori_vector():
    for p in (2, 3, 5):
        assert lambda_chi(PHI_W, p=p) == one(QNumeric(p))
        F = QNumeric(p)
        assert lambda_chi(f0_table(F, p, 1)) == one(F)
    assert lambda_chi(f0_table(QNumeric(3), 3, 2)) == one(QNumeric(3))


def test_lambda_requires_vanishing_identity_value():
    with pytest.raises(ValueError):
        lambda_chi(sph_table(QNumeric(3), 3, 1))
    with pytest.raises(ValueError):
        lambda_chi(SPH, p=3)


def test_projected_sph_values():
    for p in (2, 3):
        field_c = QCyclotomic(p, 2)
        N = QNumeric(p)
        f = projected_sph(p)
        assert evaluate(f, Mat2.identity(p), field_c).is_zero
        at_w = evaluate(f, weyl(p), field_c).project_rational(N)
        assert at_w == cs_factor_regularized(N).scale(Fraction(1, p))


def test_lambda_of_projected_sph_recovers_cs():
    for p in (2, 3, 5):
        got = lambda_chi(projected_sph(p))
        assert got == cs_factor_regularized(QNumeric(p))
