"""Integer relations from high-precision reals by exact LLL reduction."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .precision import PrecisionContext, PrecisionError, Real, _mpctx


class DependentBasisError(ValueError):
    """The rows handed to LLL are linearly dependent."""


def _dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def _round_div(a: int, b: int) -> int:
    # nearest integer to a/b for b > 0, ties toward +inf
    return (2 * a + b) // (2 * b)


def lll_reduce(basis: Sequence[Sequence[int]], delta=Fraction(3, 4), *, transform: bool = False):
    """LLL-reduce integer row vectors.

    All Gram-Schmidt data is kept as exact integers (the ``d_i`` and ``lambda_ij``
    of the integral variant), so no floating-point pivoting decisions are made.
    With ``transform=True`` also returns the unimodular ``U`` with
    ``U @ basis == reduced``.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta <= 1:
        raise ValueError("delta must lie in (1/4, 1]")
    p, q = delta.numerator, delta.denominator
    b = [[int(x) for x in row] for row in basis]
    n = len(b)
    if n == 0:
        return ([], []) if transform else []
    dim = len(b[0])
    if any(len(row) != dim for row in b):
        raise ValueError("rows must share a dimension")
    H = [[int(i == j) for j in range(n)] for i in range(n)]
    d = [0] * (n + 1)  # d[0] = 1, d[i+1] = Gram determinant of the first i+1 rows
    lam = [[0] * n for _ in range(n)]
    d[0] = 1

    def gram(k):
        for j in range(k + 1):
            u = _dot(b[k], b[j])
            for i in range(j):
                u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
            if j < k:
                lam[k][j] = u
            else:
                d[k + 1] = u
        if d[k + 1] == 0:
            raise DependentBasisError("basis rows are linearly dependent")

    def redi(k, l):
        if 2 * abs(lam[k][l]) > d[l + 1]:
            r = _round_div(lam[k][l], d[l + 1])
            b[k] = [x - r * y for x, y in zip(b[k], b[l])]
            H[k] = [x - r * y for x, y in zip(H[k], H[l])]
            lam[k][l] -= r * d[l + 1]
            for i in range(l):
                lam[k][i] -= r * lam[l][i]

    def swapi(k, kmax):
        b[k], b[k - 1] = b[k - 1], b[k]
        H[k], H[k - 1] = H[k - 1], H[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lk = lam[k][k - 1]
        B = (d[k - 1] * d[k + 1] + lk * lk) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lk * t) // d[k]
            lam[i][k - 1] = (B * t + lk * lam[i][k]) // d[k + 1]
        d[k] = B

    gram(0)
    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            gram(k)
        redi(k, k - 1)
        # Lovasz: d_{k+1} d_{k-1} >= delta d_k^2 - lambda^2, all scaled by q
        if q * (d[k + 1] * d[k - 1] + lam[k][k - 1] ** 2) < p * d[k] ** 2:
            swapi(k, kmax)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                redi(k, l)
            k += 1
    return (b, H) if transform else b


def gram_schmidt_sq_norms(basis: Sequence[Sequence[int]]) -> list[Fraction]:
    """Exact squared Gram-Schmidt norms ``||b_i*||^2``."""
    ortho: list[list[Fraction]] = []
    norms: list[Fraction] = []
    for row in basis:
        v = [Fraction(x) for x in row]
        for w, nw in zip(ortho, norms):
            mu = _dot(row, w) / nw
            v = [a - mu * c for a, c in zip(v, w)]
        nv = _dot(v, v)
        if nv == 0:
            raise DependentBasisError("basis rows are linearly dependent")
        ortho.append(v)
        norms.append(nv)
    return norms


def _log10(x) -> float:
    """``log10`` of a positive int or Fraction of any size."""
    x = Fraction(x)
    return _log10_int(x.numerator) - _log10_int(x.denominator)


def _log10_int(n: int) -> float:
    shift = max(n.bit_length() - 64, 0)
    return math.log10(n >> shift) + shift * math.log10(2)


def normalize(m: Sequence[int]) -> tuple[int, ...]:
    """Divide out the gcd and make the leading nonzero entry positive."""
    m = [int(x) for x in m]
    g = reduce(math.gcd, m, 0)
    if g == 0:
        raise ValueError("zero vector has no normalization")
    m = [x // g for x in m]
    lead = next(x for x in m if x)
    return tuple(-x for x in m) if lead < 0 else tuple(m)


@dataclass(frozen=True)
class IntegerRelation:
    m: tuple[int, ...]
    residual: Real
    confidence: float  # decimal digits separating this vector from the next basis vector

    def to_json(self) -> dict:
        return {
            "m": [str(x) for x in self.m],
            "residual": _mpctx(self.residual.prec).nstr(self.residual.abs_upper(), 5),
            "confidence_digits": round(self.confidence, 2),
        }


@dataclass(frozen=True)
class NoRelation:
    """Certified: no relation with ``max|m_k| <= 10**max_coeff_digits`` exists."""

    max_coeff_digits: int
    exclusion_log10: float = field(default=0.0)  # log10 of the certified lattice floor

    def to_json(self) -> dict:
        return {"none_found": True, "max_coeff_digits": self.max_coeff_digits,
                "exclusion_log10": round(self.exclusion_log10, 2)}


def required_digits(n: int, max_coeff_digits: int) -> int:
    return 2 * n * max_coeff_digits + 40


def find_relation(xs: Sequence[Real], max_coeff_digits: int, ctx: PrecisionContext):
    """Search for ``m`` with ``sum m_k x_k = 0`` and ``max|m_k| <= 10**max_coeff_digits``.

    Returns an :class:`IntegerRelation` or a certified :class:`NoRelation`; raises
    :class:`PrecisionError` when ``ctx`` is too coarse for the coefficient size
    asked for, or when the reduced lattice neither yields a relation nor rules
    one out.
    """
    n = len(xs)
    if n < 2:
        raise ValueError("need at least two numbers")
    if ctx.digits < required_digits(n, max_coeff_digits):
        raise PrecisionError(
            f"insufficient precision: {n} values with {max_coeff_digits}-digit coefficients "
            f"need digits >= {required_digits(n, max_coeff_digits)}, got {ctx.digits}"
        )
    scale_exp = ctx.digits - ctx.guard
    big = _mpctx(ctx.prec + 64 + int(scale_exp * 3.33))
    C = big.mpf(10) ** scale_exp
    X = [int(big.nint(big.mpf(x.value) * C)) for x in xs]
    basis = [[int(i == j) for j in range(n)] + [X[i]] for i in range(n)]
    reduced = lll_reduce(basis)

    B = 10 ** max_coeff_digits
    for row in reduced:
        m = row[:n]
        if not any(m) or max(abs(v) for v in m) > B:
            continue
        res = sum((x * v for x, v in zip(xs, m)), Real.from_number(0, ctx))
        if abs(res.value) <= res.err:
            first = _dot(row, row)
            rest = sorted(_dot(r, r) for r in reduced if r is not row)
            conf = (_log10(rest[0]) - _log10(first)) / 2 if rest else math.inf
            m = normalize(m)
            sign_res = sum((x * v for x, v in zip(xs, m)), Real.from_number(0, ctx))
            return IntegerRelation(m, abs(sign_res), conf)
        break

    # exclusion: every lattice vector is at least min ||b_i*|| long, while a
    # genuine relation bounded by B would give a vector no longer than `reach`
    maxerr = max(Fraction(_mpctx(x.prec).nstr(x.err, 15)) for x in xs) * 2
    last = n * B * (Fraction(1, 2) + Fraction(10 ** scale_exp) * maxerr)
    reach_sq = n * B * B + last * last
    floor_sq = min(gram_schmidt_sq_norms(reduced))
    if floor_sq > reach_sq:
        return NoRelation(max_coeff_digits, _log10(floor_sq) / 2)
    raise PrecisionError("insufficient precision: cannot separate a relation from lattice noise")
