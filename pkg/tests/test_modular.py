from fractions import Fraction

import mpmath
import pytest

from csperiod.modular import (
    CMPoint, check_f0_sqrtE4, eisenstein, eisenstein_values, eval_qseries,
    j_invariant, sigma, terms_needed,
)
from csperiod.precision import PrecisionContext, PrecisionError, Real

E4_AT_I = "1.45576289226870932246242200359886928743239458552820349571885"  # 3 Γ(1/4)^8 / (2π)^6


def brute_sigma(k, m):
    return sum(d ** k for d in range(1, m + 1) if m % d == 0)


def test_eisenstein_leading_coefficients():
    assert eisenstein(2, 3).coeff(1) == -24
    assert eisenstein(4, 3).coeff(1) == 240
    assert eisenstein(6, 3).coeff(1) == -504
    assert eisenstein(4, 3).coeff(2) == 2160
    assert all(eisenstein(k, 0).coeffs == (1,) for k in (2, 4, 6))


@pytest.mark.parametrize("k", [2, 4, 6])
def test_divisor_sums(k):
    E = eisenstein(k, 120)
    lead = {2: -24, 4: 240, 6: -504}[k]
    C, p = E.bound
    for m in range(1, 121):
        assert sigma(k - 1, m) == brute_sigma(k - 1, m)
        assert E.coeff(m) == lead * brute_sigma(k - 1, m)
        assert abs(E.coeff(m)) <= C * m ** p


def test_eisenstein_rejects():
    with pytest.raises(ValueError):
        eisenstein(8, 5)
    with pytest.raises(ValueError):
        eisenstein(4, -1)


def test_eval_at_zero(ctx100):
    zero = Real.from_number(0, ctx100)
    assert eval_qseries(eisenstein(6, 4), zero, ctx100).contains(1)


def test_eval_rejects_large_q_and_short_series(ctx100):
    with pytest.raises(ValueError):
        eval_qseries(eisenstein(4, 50), Real.from_number(Fraction(3, 4), ctx100), ctx100)
    q = CMPoint(-4).q(ctx100)
    with pytest.raises(PrecisionError):
        eval_qseries(eisenstein(4, 5), q, ctx100)


def test_E6_vanishes_at_i(ctx100):
    E = eisenstein_values(CMPoint.imaginary(1), ctx100)
    assert E[6].contains(0)
    with mpmath.workdps(120):
        assert abs(E[4].value - mpmath.mpf(E4_AT_I)) <= E[4].err + mpmath.mpf(10) ** -58
        oracle = 3 * mpmath.gamma(mpmath.mpf(1) / 4) ** 8 / (2 * mpmath.pi) ** 6
        assert abs(E[4].value - oracle) <= E[4].err + mpmath.mpf(10) ** -115


def test_cm_point_shapes(ctx100):
    for D in (-163, -148, -3):
        tau = CMPoint(D)
        q = tau.q(ctx100)
        assert (q.value < 0) == bool(tau.b)
        assert abs(q.value) < 1
    assert CMPoint.imaginary(2).D == -16
    with pytest.raises(ValueError):
        CMPoint(-5)


def test_j_values(ctx100):
    assert j_invariant(CMPoint(-4), ctx100).contains(1728)
    assert j_invariant(CMPoint.imaginary(2), ctx100).contains(66 ** 3)
    j163 = j_invariant(CMPoint(-163), ctx100)
    target = -1728 * 53360 ** 3
    assert j163.contains(target)
    assert abs(j163.value - target) / abs(target) < mpmath.mpf(10) ** -80


def test_j_three_i_against_mpmath(ctx100):
    # j(3i) = 76771008 + 44330496 sqrt(3)
    j = j_invariant(CMPoint.imaginary(3), ctx100)
    with mpmath.workdps(150):
        assert abs(j.value - (76771008 + 44330496 * mpmath.sqrt(3))) <= j.err + mpmath.mpf(10) ** -90


@pytest.mark.parametrize("tau", [CMPoint.imaginary(2), CMPoint.imaginary(3), CMPoint(-163)])
def test_hypergeometric_parameterisation(tau):
    ctx = PrecisionContext(120)
    res = check_f0_sqrtE4(tau, ctx)
    assert res.upper < mpmath.mpf(10) ** -(ctx.digits - 30)


def test_parameterisation_outside_region(ctx100):
    # 1728/j(i) = 1
    with pytest.raises(ValueError):
        check_f0_sqrtE4(CMPoint(-4), ctx100)


def test_ramanujan_derivative_identity():
    M = 80
    E2, E4, E6 = (eisenstein(k, M) for k in (2, 4, 6))
    lhs = [3 * c for c in E4.theta().coeffs]
    prod = E2 * E4
    rhs = [a - b for a, b in zip(prod.coeffs, E6.coeffs)]
    assert lhs == rhs


@pytest.mark.parametrize("D", [-148, -232, -267, -163])
def test_a_priori_truncation(D):
    ctx = PrecisionContext(300)
    q = CMPoint(D).q(ctx)
    adaptive = max(terms_needed(k, q, ctx) for k in (4, 6))
    a_priori = -(-(ctx.digits + ctx.guard) // 16) + 2
    assert adaptive <= a_priori
