"""The series f_i(z) = (z d/dz)^i 3F2(s, 1/2, 1-s; 1, 1; z) for i = 0, 1, 2."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .precision import PrecisionContext, PrecisionError, Real, _mpctx

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class HyperParams:
    s: Fraction
    i: int = 0

    def __post_init__(self):
        object.__setattr__(self, "s", Fraction(self.s))
        if not 0 < self.s <= HALF:
            raise ValueError(f"s must lie in (0, 1/2], got {self.s}")
        if self.i not in (0, 1, 2):
            raise ValueError(f"i must be 0, 1 or 2, got {self.i}")

    @property
    def upper(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.s, HALF, 1 - self.s)


@lru_cache(maxsize=64)
def _base_coeffs(s: Fraction, count: int) -> tuple[Fraction, ...]:
    # c_{n+1} / c_n = (n+s)(n+1/2)(n+1-s) / (n+1)^3
    out = [Fraction(1)]
    c = Fraction(1)
    for n in range(count - 1):
        c = c * (n + s) * (n + HALF) * (n + 1 - s) / (n + 1) ** 3
        out.append(c)
    return tuple(out)


def base_coeffs(s, count: int) -> tuple[Fraction, ...]:
    """Exact Taylor coefficients of f_0 for ``n < count``."""
    s = Fraction(s)
    # share the cache between short and long requests
    size = 16
    while size < count:
        size *= 2
    return _base_coeffs(s, size)[:count]


def coeff(params: HyperParams, n: int) -> Fraction:
    """Exact coefficient ``(s)_n (1/2)_n (1-s)_n / n!^3 * n^i``."""
    if n < 0:
        raise ValueError("coefficient index must be non-negative")
    return base_coeffs(params.s, n + 1)[n] * n ** params.i


def series(params: HyperParams, count: int) -> list[Fraction]:
    return [c * n ** params.i for n, c in enumerate(base_coeffs(params.s, count))]


def tail_bound(power: int, r: Fraction, N: int) -> Fraction | None:
    """Bound ``sum_{n > N} n^power r^n`` for ``0 <= r < 1``.

    Consecutive terms shrink by at most ``((N+2)/(N+1))^power * r``, so the tail
    is dominated by a geometric series.  Returns ``None`` when that ratio is not
    below one yet.
    """
    ratio = Fraction(N + 2, N + 1) ** power * r
    if ratio >= 1:
        return None
    return Fraction(N + 1) ** power * r ** (N + 1) / (1 - ratio)


def eval(params: HyperParams, Z: int, ctx: PrecisionContext) -> Real:
    """``f_i(1/Z)`` for an integer ``|Z| >= 2``.

    The truncated sum is accumulated as one exact rational and rounded once;
    the tail uses the coefficient bound ``c_n <= n^i``.
    """
    Z = int(Z)
    if Z == 0:
        raise ValueError("Z must be nonzero")
    if abs(Z) < 2:
        raise ValueError("|Z| must be at least 2 for the tail bound")
    goal = Fraction(1, 10 ** (ctx.digits + ctx.guard))
    r = Fraction(1, abs(Z))
    N = 1
    while True:
        tb = tail_bound(params.i, r, N)
        if tb is not None and tb < goal:
            break
        N += 1
    coeffs = series(params, N + 1)
    # sum_{n<=N} c_n Z^{-n} = (sum c_n Z^{N-n}) / Z^N, with c_n rational
    total = Fraction(0)
    zpow = 1
    for n in range(N, -1, -1):
        total += coeffs[n] * zpow
        zpow *= Z
    total /= Z ** N
    val = Real.from_number(total, ctx)
    mp = ctx.mp
    return Real(val.value, val.err + mp.mpf(tb.numerator) / tb.denominator, ctx.prec)


def eval_real(params: HyperParams, z: Real, ctx: PrecisionContext) -> Real:
    """``f_i(z)`` for a real ball with ``|z| <= 1/2``.

    Input uncertainty is pushed through the derivative bound
    ``sum n^{i+1} |z|^{n-1}``.
    """
    mp = _mpctx(max(ctx.prec, z.prec))
    rz = z.abs_upper()
    if rz > mp.mpf(1) / 2:
        raise ValueError("eval_real needs |z| <= 1/2")
    goal = Fraction(1, 10 ** (ctx.digits + ctx.guard))
    # a slightly inflated rational upper bound for |z|
    r = Fraction(mp.nstr(rz, 20)) * (1 + Fraction(1, 10 ** 15))
    N = 1
    while True:
        tb = tail_bound(params.i, r, N)
        if tb is not None and tb < goal:
            break
        N += 1
        if N > 100 * (ctx.digits + ctx.guard):
            raise PrecisionError("series failed to converge")
    coeffs = series(params, N + 1)
    acc = mp.zero
    for c in reversed(coeffs):
        acc = acc * z.value + mp.mpf(c.numerator) / c.denominator
    # Horner rounding: each step costs at most a few units of the running sum
    rounding = (N + 1) * 4 * mp.ldexp(max(abs(acc), mp.one), 1 - mp.prec)
    deriv = sum(Fraction(n) ** (params.i + 1) * r ** (n - 1) for n in range(1, N + 2))
    if r:
        deriv_tail = tail_bound(params.i + 1, r, N + 1)
        if deriv_tail is None:
            raise PrecisionError("derivative tail bound unavailable")
        deriv += deriv_tail / r
    prop = z.err * mp.mpf(deriv.numerator) / deriv.denominator
    return Real(acc, rounding + prop + mp.mpf(tb.numerator) / tb.denominator, mp.prec)
