"""Arbitrary-precision balls and the elementary functions built on them.

A :class:`Real` is a midpoint together with an absolute error radius.  Every
operation widens the radius by the propagated input error plus one rounding
unit of the result, so the true value always sits in ``[value - err,
value + err]``.  Midpoints are mpmath ``mpf`` numbers evaluated inside a private
:class:`mpmath.MPContext` per working precision; nothing touches the global
``mpmath.mp`` state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import mpmath

LOG2_10 = math.log2(10)


class PrecisionError(ArithmeticError):
    """Working precision is too low to produce a meaningful answer."""


@lru_cache(maxsize=None)
def _mpctx(prec: int) -> mpmath.MPContext:
    ctx = mpmath.MPContext()
    ctx.prec = prec
    return ctx


@dataclass(frozen=True)
class PrecisionContext:
    """Decimal working precision plus guard digits carried internally."""

    digits: int
    guard: int = 20

    def __post_init__(self):
        if self.digits < 50:
            raise ValueError(f"digits must be >= 50, got {self.digits}")
        if self.guard < 0:
            raise ValueError("guard must be non-negative")

    @property
    def prec(self) -> int:
        """Binary working precision in bits."""
        return int(math.ceil((self.digits + self.guard) * LOG2_10)) + 8

    @property
    def mp(self) -> mpmath.MPContext:
        return _mpctx(self.prec)

    @property
    def tolerance(self):
        """The contract bound ``10**-digits``."""
        return self.mp.mpf(10) ** (-self.digits)

    @property
    def target(self):
        """Internal accuracy goal ``10**-(digits + guard)``."""
        return self.mp.mpf(10) ** (-(self.digits + self.guard))

    def raised(self, extra: int) -> "PrecisionContext":
        return PrecisionContext(self.digits + extra, self.guard)


def _ulp(mp, x):
    # one rounding unit relative to |x| at the context precision
    if not x:
        return mp.zero
    return abs(x) * mp.ldexp(mp.one, 1 - mp.prec)


@dataclass(frozen=True)
class Real:
    """A ball ``value ± err`` at ``prec`` bits of working precision."""

    value: mpmath.mpf
    err: mpmath.mpf
    prec: int

    # construction ---------------------------------------------------------

    @classmethod
    def from_number(cls, x, ctx: PrecisionContext | int) -> "Real":
        """Exact integers and rationals become the tightest ball available."""
        prec = ctx.prec if isinstance(ctx, PrecisionContext) else int(ctx)
        mp = _mpctx(prec)
        if isinstance(x, Real):
            return x
        if isinstance(x, int):
            v = mp.mpf(x)
            err = mp.zero if int(v) == x else _ulp(mp, v)
            return cls(v, err, prec)
        if isinstance(x, Rational):
            x = Fraction(x)
            if x.denominator == 1:
                return cls.from_number(x.numerator, prec)
            v = mp.mpf(x.numerator) / x.denominator
            return cls(v, 2 * _ulp(mp, v), prec)
        raise TypeError(f"cannot build an exact ball from {type(x).__name__}")

    @property
    def mp(self) -> mpmath.MPContext:
        return _mpctx(self.prec)

    def _coerce(self, other) -> "Real":
        if isinstance(other, Real):
            return other
        return Real.from_number(other, self.prec)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        mp = _mpctx(max(self.prec, other.prec))
        v = self.value + other.value
        return Real(v, self.err + other.err + _ulp(mp, v), mp.prec)

    __radd__ = __add__

    def __neg__(self):
        return Real(-self.value, self.err, self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        mp = _mpctx(max(self.prec, other.prec))
        v = self.value * other.value
        err = abs(self.value) * other.err + abs(other.value) * self.err + self.err * other.err
        return Real(v, err + _ulp(mp, v), mp.prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        mp = _mpctx(max(self.prec, other.prec))
        lo = abs(other.value) - other.err
        if lo <= 0:
            raise ZeroDivisionError("divisor ball contains zero")
        v = self.value / other.value
        err = (abs(self.value) * other.err + abs(other.value) * self.err) / (abs(other.value) * lo)
        return Real(v, err + _ulp(mp, v), mp.prec)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise TypeError("only non-negative integer powers are supported")
        result = Real.from_number(1, self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __abs__(self):
        return Real(abs(self.value), self.err, self.prec)

    # inspection -----------------------------------------------------------

    @property
    def lower(self):
        return self.value - self.err

    @property
    def upper(self):
        return self.value + self.err

    def is_positive(self) -> bool:
        return self.value > self.err

    def contains(self, x) -> bool:
        mp = self.mp
        x = x.value if isinstance(x, Real) else mp.mpf(x)
        return abs(mp.mpf(x) - self.value) <= self.err

    def abs_upper(self):
        """An upper bound for ``|x|``."""
        return abs(self.value) + self.err

    def __float__(self):
        return float(self.value)

    def to_str(self, digits: int) -> str:
        return mpmath.nstr(self.value, digits)

    def err_str(self) -> str:
        return mpmath.nstr(self.err, 3)

    def log10_err(self) -> float:
        return float(mpmath.log10(self.err)) if self.err else -math.inf

    def __repr__(self):
        return f"Real({mpmath.nstr(self.value, 20)} ± {mpmath.nstr(self.err, 3)})"


# constants ----------------------------------------------------------------

def _chudnovsky_split(a: int, b: int):
    if b - a == 1:
        if a == 0:
            p = q = 1
        else:
            p = (6 * a - 5) * (2 * a - 1) * (6 * a - 1)
            q = a * a * a * 10939058860032000  # 640320**3 // 24
        t = p * (13591409 + 545140134 * a)
        return p, q, (-t if a & 1 else t)
    m = (a + b) // 2
    p1, q1, t1 = _chudnovsky_split(a, m)
    p2, q2, t2 = _chudnovsky_split(m, b)
    return p1 * p2, q1 * q2, q2 * t1 + p1 * t2


@lru_cache(maxsize=64)
def _pi_fixed(bits: int) -> int:
    # each Chudnovsky term contributes more than 14 decimal digits
    terms = int(bits / (14 * LOG2_10)) + 2
    _, q, t = _chudnovsky_split(0, terms)
    sqrt_c = math.isqrt(10005 << (2 * bits))
    return (426880 * sqrt_c * q) // t


def pi(ctx: PrecisionContext) -> Real:
    """π by Chudnovsky binary splitting in fixed-point integers."""
    bits = ctx.prec + 16
    mp = ctx.mp
    v = mp.ldexp(mp.mpf(_pi_fixed(bits)), -bits)
    # floor of the root and of the final quotient, plus series tail (< 1 unit)
    err = mp.ldexp(mp.mpf(3), -bits) + _ulp(mp, v)
    return Real(v, err, ctx.prec)


# elementary functions ----------------------------------------------------

def _as_real(x, ctx: PrecisionContext) -> Real:
    return x if isinstance(x, Real) else Real.from_number(x, ctx)


def exp(x, ctx: PrecisionContext) -> Real:
    x = _as_real(x, ctx)
    mp = _mpctx(max(x.prec, ctx.prec))
    v = mp.exp(x.value)
    return Real(v, v * mp.expm1(x.err) * 2 + 2 * _ulp(mp, v), mp.prec)


def log(x, ctx: PrecisionContext) -> Real:
    x = _as_real(x, ctx)
    mp = _mpctx(max(x.prec, ctx.prec))
    if not x.is_positive():
        raise ValueError("log of a ball that is not strictly positive")
    v = mp.log(x.value)
    err = x.err / (x.value - x.err)
    return Real(v, err + 2 * _ulp(mp, v) + mp.ldexp(mp.one, -mp.prec), mp.prec)


def sqrt(x, ctx: PrecisionContext) -> Real:
    return nth_root(x, 2, ctx)


def nth_root(x, n: int, ctx: PrecisionContext) -> Real:
    """Positive real ``n``-th root; rejects balls that reach zero."""
    if n < 1:
        raise ValueError("root index must be a positive integer")
    x = _as_real(x, ctx)
    if not x.is_positive():
        raise ValueError("nth_root needs a strictly positive input")
    mp = _mpctx(max(x.prec, ctx.prec))
    if n == 1:
        return x
    v = mp.root(x.value, n)
    lo = x.value - x.err
    # mean value theorem on t -> t**(1/n), derivative is largest at the low end
    err = x.err * mp.root(lo, n) / (n * lo)
    return Real(v, err + 2 * _ulp(mp, v), mp.prec)


@lru_cache(maxsize=32)
def _log_2pi(prec: int, digits: int, guard: int) -> Real:
    ctx = PrecisionContext(digits, guard)
    return log(pi(ctx) * 2, ctx)


def log_2pi(ctx: PrecisionContext) -> Real:
    return _log_2pi(ctx.prec, ctx.digits, ctx.guard)


@lru_cache(maxsize=None)
def _bernoulli(n: int) -> Fraction:
    p, q = mpmath.bernfrac(n)
    return Fraction(int(p), int(q))


@lru_cache(maxsize=4096)
def _log_gamma_cached(x: Fraction, digits: int, guard: int) -> Real:
    ctx = PrecisionContext(digits, guard)
    mp = ctx.mp
    goal = ctx.target / 4
    # shift so that the Stirling series reaches the goal after a modest number
    # of terms; larger shifts trade Bernoulli terms for a longer exact product
    shift = int(ctx.digits + ctx.guard) + 10
    y = x + shift
    prod = Fraction(1)
    for k in range(shift):
        prod *= x + k

    ln_y = log(y, ctx)
    acc = (y - Fraction(1, 2)) * ln_y - y + log_2pi(ctx) / 2
    y_mp = mp.mpf(y.numerator) / y.denominator
    y2 = y_mp * y_mp
    ypow = y_mp  # y**(2k-1)
    series = mp.zero
    k = 1
    while True:
        b = _bernoulli(2 * k)
        term = mp.mpf(b.numerator) / (b.denominator * (2 * k) * (2 * k - 1)) / ypow
        series += term
        nb = _bernoulli(2 * k + 2)
        # for real y > 0 the remainder is bounded by the first omitted term
        bound = abs(mp.mpf(nb.numerator) / nb.denominator) / ((2 * k + 2) * (2 * k + 1)) / (ypow * y2)
        if bound < goal:
            break
        ypow *= y2
        k += 1
        if k > 10 * shift:
            raise PrecisionError("Stirling series failed to converge")
    rounding = (k + 4) * _ulp(mp, max(abs(series), mp.one))
    acc = acc + Real(series, bound + rounding, ctx.prec)
    return acc - log(prod, ctx)


def log_gamma(x, ctx: PrecisionContext) -> Real:
    """``log Γ(x)`` for an exact rational ``0 < x <= 1``.

    The argument is shifted to ``x + N`` where Stirling's series converges
    fast, and the exact rational product ``x (x+1) ... (x+N-1)`` is removed with
    a single logarithm.
    """
    x = Fraction(x)
    if x <= 0 or x > 1:
        raise ValueError(f"log_gamma expects 0 < x <= 1, got {x}")
    if x == 1:
        return Real(ctx.mp.zero, ctx.mp.zero, ctx.prec)
    return _log_gamma_cached(x, ctx.digits, ctx.guard)
