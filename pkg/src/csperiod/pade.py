"""Hermite-Pade linear forms ``A0 + A1 f0 + A2 f1 + A3 f2`` with a high-order zero at 0.

The polynomials are found as an exact nullspace vector of the order
conditions, computed with fraction-free (Bareiss) elimination over the
integers.  A degree of ``-1`` (or ``None``) removes that polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

import numpy as np

from . import hypergeom
from .hypergeom import HyperParams
from .precision import PrecisionContext, PrecisionError, Real, _mpctx


def _norm_degrees(degrees) -> tuple[int, int, int, int]:
    out = []
    for d in degrees:
        if d is None or (isinstance(d, float) and math.isinf(d) and d < 0):
            out.append(-1)
        else:
            d = int(d)
            if d < -1:
                raise ValueError("degrees must be >= 0, or -1/None for an absent polynomial")
            out.append(d)
    if len(out) != 4:
        raise ValueError("exactly four degree bounds are required")
    return tuple(out)


def _function_series(s, count: int) -> list[list[Fraction]]:
    """Taylor coefficients of ``1, f0, f1, f2`` through ``z^(count-1)``."""
    one = [Fraction(1)] + [Fraction(0)] * (count - 1)
    return [one] + [hypergeom.series(HyperParams(s, i), count) for i in range(3)]


def order_matrix(s, degrees, rows: int) -> list[list[Fraction]]:
    """Row ``r`` holds the ``z^r`` coefficient of R as a linear map of the unknowns."""
    degrees = _norm_degrees(degrees)
    F = _function_series(s, rows)
    matrix = []
    for r in range(rows):
        row = []
        for k, deg in enumerate(degrees):
            for j in range(deg + 1):
                row.append(F[k][r - j] if r >= j else Fraction(0))
        matrix.append(row)
    return matrix


def _integer_rows(matrix: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in matrix:
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (x.denominator for x in row), 1)
        out.append([int(x * den) for x in row])
    return out


def bareiss_echelon(A: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; returns the rows and pivot columns."""
    A = [list(r) for r in A]
    m = len(A)
    n = len(A[0]) if m else 0
    pivots = []
    prev = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        for i in range(r + 1, m):
            a = A[i][c]
            A[i] = [(piv * A[i][j] - a * A[r][j]) // prev for j in range(n)]
        prev = piv
        pivots.append(c)
        r += 1
    return A[:r], pivots


def nullspace_vector(A: list[list[int]], ncols: int) -> tuple[list[int], int]:
    """A primitive integer vector in the kernel of ``A`` and the kernel dimension.

    When the kernel has more than one dimension the last free column is set to
    one and the other free columns to zero.
    """
    E, pivots = bareiss_echelon(A) if A else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        raise ValueError("trivial kernel")
    x = [Fraction(0)] * ncols
    x[free[-1]] = Fraction(1)
    for row, pc in reversed(list(zip(E, pivots))):
        acc = sum(row[j] * x[j] for j in range(pc + 1, ncols))
        x[pc] = -acc / row[pc]
    den = reduce(lambda a, b: a * b // math.gcd(a, b), (v.denominator for v in x), 1)
    ints = [int(v * den) for v in x]
    g = reduce(math.gcd, ints, 0)
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v)
    if lead < 0:
        ints = [-v for v in ints]
    return ints, len(free)


@dataclass(frozen=True)
class PadeForm:
    s: Fraction
    degrees: tuple[int, int, int, int]
    polys: tuple[tuple[int, ...], ...]  # integer coefficients, constant term first
    sigma: int  # order forced by construction
    order: int  # first index with a nonzero series coefficient (>= checked_through if none)
    checked_through: int
    nullity: int

    @property
    def unique(self) -> bool:
        return self.nullity == 1

    @property
    def coeff_norm(self) -> int:
        return max(abs(c) for p in self.polys for c in p)

    def remainder_series(self, count: int) -> list[Fraction]:
        """Exact Taylor coefficients of ``R`` through ``z^(count-1)``."""
        F = _function_series(self.s, count)
        out = [Fraction(0)] * count
        for k, poly in enumerate(self.polys):
            for j, a in enumerate(poly):
                if a:
                    for r in range(j, count):
                        out[r] += a * F[k][r - j]
        return out


def construct(s, degrees, *, check_extra: int = 10) -> PadeForm:
    """Nonzero integer polynomials making ``R = O(z^sigma)`` with ``sigma = sum(deg+1) - 1``."""
    s = Fraction(s)
    degrees = _norm_degrees(degrees)
    unknowns = sum(d + 1 for d in degrees)
    if unknowns < 2:
        raise ValueError("need at least two unknown coefficients")
    sigma = unknowns - 1
    A = _integer_rows(order_matrix(s, degrees, sigma))
    vec, nullity = nullspace_vector(A, unknowns)
    polys = []
    pos = 0
    for d in degrees:
        polys.append(tuple(vec[pos: pos + d + 1]))
        pos += d + 1
    form = PadeForm(s, degrees, tuple(polys), sigma, 0, 0, nullity)
    limit = sigma + check_extra
    ser = form.remainder_series(limit)
    order = next((i for i, c in enumerate(ser) if c), limit)
    return PadeForm(s, degrees, tuple(polys), sigma, order, limit, nullity)


def _poly_at(poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def remainder_direct(form: PadeForm, Z: int, ctx: PrecisionContext) -> Real:
    """``R(1/Z)`` as the polynomial combination of the ``f_i`` values (cancels heavily)."""
    z = Fraction(1, Z)
    total = Real.from_number(_poly_at(form.polys[0], z), ctx)
    for i, poly in enumerate(form.polys[1:]):
        if poly:
            fv = hypergeom.eval(HyperParams(form.s, i), Z, ctx)
            total = total + fv * Real.from_number(_poly_at(poly, z), ctx)
    return total


def remainder_series_value(form: PadeForm, Z: int, ctx: PrecisionContext) -> Real:
    """``R(1/Z)`` summed from the exact Taylor coefficients of ``R``.

    Beyond the degree of ``A0`` every coefficient of ``R`` is bounded by
    ``L m^2`` with ``L`` the total coefficient mass of ``A1, A2, A3``, which
    gives the tail bound.  The sum is carried to relative accuracy
    ``10**-(digits + guard)``.
    """
    Z = int(Z)
    r = Fraction(1, abs(Z))
    mass = sum(abs(c) for p in form.polys[1:] for c in p)
    start = max(form.order, len(form.polys[0]))
    count = max(form.checked_through, start + 4)
    rel_goal = Fraction(1, 10 ** (ctx.digits + ctx.guard))
    while True:
        ser = form.remainder_series(count + 1)
        partial = sum((c * Fraction(1, Z) ** m for m, c in enumerate(ser) if c), Fraction(0))
        tb = hypergeom.tail_bound(2, r, count)
        if tb is not None and partial:
            tail = mass * tb
            if tail <= abs(partial) * rel_goal:
                break
        count *= 2
        if count > 50 * (ctx.digits + ctx.guard):
            raise PrecisionError("remainder series did not reach the requested accuracy")
    val = Real.from_number(partial, ctx)
    mp = ctx.mp
    return Real(val.value, val.err + mp.mpf(tail.numerator) / tail.denominator, ctx.prec)


@dataclass(frozen=True)
class DecayRow:
    n: int
    order: int
    sigma: int
    remainder: Real
    coeff_norm: int
    direct_resolved: bool

    @property
    def log10_remainder(self) -> float:
        return float(_mpctx(self.remainder.prec).log10(abs(self.remainder.value)))

    @property
    def log10_coeff_norm(self) -> float:
        n = self.coeff_norm
        shift = max(n.bit_length() - 64, 0)
        return math.log10(n >> shift) + shift * math.log10(2)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "order": self.order,
            "log10_remainder": round(self.log10_remainder, 6),
            "log10_coeff_norm": round(self.log10_coeff_norm, 6),
            "precision_exhausted": not self.direct_resolved,
        }


def remainder_decay(s, Z: int, N: int, ctx: PrecisionContext, n_start: int = 1) -> dict:
    """Diagonal forms ``(n, n, n, n)`` for ``n_start <= n <= N`` at ``z = 1/Z``.

    ``precision_exhausted`` marks rows where the direct combination of the
    ``f_i`` values no longer resolves ``R(1/Z)`` at the working precision; the
    reported remainder always comes from the exact series.
    """
    rows = []
    for n in range(n_start, N + 1):
        form = construct(s, (n, n, n, n))
        val = remainder_series_value(form, Z, ctx)
        direct = remainder_direct(form, Z, ctx)
        resolved = abs(direct.value) > direct.err
        rows.append(DecayRow(n, form.order, form.sigma, val, form.coeff_norm, resolved))
    ns = np.array([r.n for r in rows], dtype=float)
    lr = np.array([r.log10_remainder for r in rows])
    lc = np.array([r.log10_coeff_norm for r in rows])
    fit = len(rows) >= 2
    return {
        "s": str(Fraction(s)),
        "Z": int(Z),
        "digits": ctx.digits,
        "rows": [r.to_json() for r in rows],
        "remainder_rate": round(float(np.polyfit(ns, lr, 1)[0]), 6) if fit else None,
        "coeff_rate": round(float(np.polyfit(ns, lc, 1)[0]), 6) if fit else None,
        "strictly_decreasing": bool(np.all(np.diff(lr) < 0)),
        "_rows": rows,
    }
