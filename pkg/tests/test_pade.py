from fractions import Fraction

import mpmath
import pytest
import sympy

from csperiod.pade import (
    construct, nullspace_vector, order_matrix, remainder_decay, remainder_direct,
    remainder_series_value,
)
from csperiod.precision import PrecisionContext


def test_trivial_constants():
    for s in (Fraction(1, 6), Fraction(1, 4), Fraction(1, 3)):
        f = construct(s, (0, 0, None, float("-inf")))
        assert f.polys == ((1,), (-1,), (), ())
        assert f.order >= 1 and f.sigma == 1


def test_degree_validation():
    with pytest.raises(ValueError):
        construct(Fraction(1, 6), (1, 1, 1))
    with pytest.raises(ValueError):
        construct(Fraction(1, 6), (0, -1, -1, -1))
    with pytest.raises(ValueError):
        construct(Fraction(1, 6), (-2, 0, 0, 0))


def cofactor_kernel(M):
    """Signed maximal minors of a corank-one matrix."""
    rows, cols = len(M), len(M[0])
    assert cols == rows + 1
    S = sympy.Matrix(M)
    out = []
    for j in range(cols):
        minor = S[:, [c for c in range(cols) if c != j]]
        out.append((-1) ** j * minor.det())
    return out


def proportional(u, v):
    pairs = [(a, b) for a, b in zip(u, v) if a or b]
    a0, b0 = pairs[0]
    return all(a * b0 == b * a0 for a, b in pairs)


@pytest.mark.parametrize("s", [Fraction(1, 2), Fraction(1, 6)])
def test_dual_method_nullspace(s):
    degrees = (1, 1, 1, 1)
    M = order_matrix(s, degrees, 7)
    form = construct(s, degrees)
    vec = [c for p in form.polys for c in p]
    cof = cofactor_kernel(M)
    assert any(cof)
    assert proportional(vec, cof)
    sym = sympy.Matrix(M).nullspace()
    assert len(sym) == 1 == form.nullity
    assert proportional(vec, list(sym[0]))


@pytest.mark.parametrize("s", [Fraction(1, 6), Fraction(1, 4), Fraction(1, 3)])
def test_diagonal_orders(s):
    for n in range(1, 7):
        f = construct(s, (n, n, n, n))
        assert f.sigma == 4 * n + 3
        assert f.checked_through == 4 * n + 13
        assert f.order >= 4 * n + 3
        ser = f.remainder_series(4 * n + 11)
        assert all(c == 0 for c in ser[: f.sigma])
        assert f.unique


def test_exact_vanishing_generic():
    f = construct(Fraction(1, 6), (2, 1, 3, 0))
    ser = f.remainder_series(f.sigma + 5)
    assert all(c == 0 for c in ser[: f.sigma])
    assert f.order == next(i for i, c in enumerate(ser) if c)


def test_coefficients_coprime_and_signed():
    import math
    from functools import reduce
    f = construct(Fraction(1, 4), (2, 2, 2, 2))
    flat = [c for p in f.polys for c in p]
    assert reduce(math.gcd, flat) == 1
    assert next(c for c in flat if c) > 0


def test_nullspace_higher_dimension():
    vec, nullity = nullspace_vector([[1, 1, 0, 0]], 4)
    assert nullity == 3
    assert vec[0] + vec[1] == 0


def test_evaluation_consistency():
    ctx = PrecisionContext(300)
    Z = -882 ** 2
    for n in (1, 2, 3):
        f = construct(Fraction(1, 4), (n, n, n, n))
        a = remainder_series_value(f, Z, ctx)
        b = remainder_direct(f, Z, ctx)
        assert abs(a.value - b.value) <= a.err + b.err
        assert abs(b.value) > b.err


def test_decay_s16_through_8():
    ctx = PrecisionContext(200)
    rep = remainder_decay(Fraction(1, 6), -53360 ** 3, 8, ctx)
    logs = [r["log10_remainder"] for r in rep["rows"]]
    assert all(b < a for a, b in zip(logs, logs[1:]))
    assert rep["strictly_decreasing"]


def test_decay_report_fields():
    ctx = PrecisionContext(100)
    rep = remainder_decay(Fraction(1, 3), -500 ** 2, 6, ctx)
    assert len(rep["rows"]) == 6
    for row in rep["rows"]:
        assert set(row) >= {"n", "order", "log10_remainder", "log10_coeff_norm"}
        assert all(mpmath.isfinite(row[k]) for k in ("log10_remainder", "log10_coeff_norm"))
    assert rep["remainder_rate"] < 0 < rep["coeff_rate"]
    # the direct combination runs out of digits once |R| drops below 10^-digits
    exhausted = [r["precision_exhausted"] for r in rep["rows"]]
    assert exhausted[0] is False and exhausted[-1] is True
