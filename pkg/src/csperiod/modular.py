"""Eisenstein series, the j-invariant and their values at real-q CM points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import hypergeom
from .hypergeom import HyperParams
from .precision import PrecisionContext, PrecisionError, Real, _mpctx, exp, pi, sqrt

# E_k = 1 + LEAD[k] * sum sigma_{k-1}(m) q^m
LEAD = {2: -24, 4: 240, 6: -504}


def sigma(k: int, m: int) -> int:
    """Divisor power sum ``sum_{d | m} d^k``."""
    total = 0
    d = 1
    while d * d <= m:
        if m % d == 0:
            total += d ** k
            e = m // d
            if e != d:
                total += e ** k
        d += 1
    return total


@dataclass(frozen=True)
class QSeries:
    """Truncated q-expansion ``sum_{m <= M} coeffs[m] q^m`` with exact coefficients.

    ``bound = (C, p)`` certifies ``|coeff(m)| <= C m^p`` for every ``m >= 1``,
    including the coefficients beyond the truncation.
    """

    coeffs: tuple[int, ...]
    bound: tuple[int, int]

    @property
    def M(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, m: int) -> int:
        return self.coeffs[m]

    def __mul__(self, other: "QSeries") -> "QSeries":
        M = min(self.M, other.M)
        out = [0] * (M + 1)
        for i, a in enumerate(self.coeffs[: M + 1]):
            if a:
                for j in range(M + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return QSeries(tuple(out), (0, 0))

    def theta(self) -> "QSeries":
        """``q d/dq`` applied termwise."""
        return QSeries(tuple(m * c for m, c in enumerate(self.coeffs)), (0, 0))


def eisenstein(k: int, M: int) -> QSeries:
    """E_2, E_4 or E_6 through ``q^M``."""
    if k not in LEAD:
        raise ValueError("k must be 2, 4 or 6")
    if M < 0:
        raise ValueError("M must be non-negative")
    lead = LEAD[k]
    coeffs = (1,) + tuple(lead * sigma(k - 1, m) for m in range(1, M + 1))
    # sigma_1(m) <= m^2; sigma_{k-1}(m) <= zeta(k-1) m^{k-1} <= 2 m^{k-1} for k >= 4
    bound = (abs(lead), 2) if k == 2 else (2 * abs(lead), k - 1)
    return QSeries(coeffs, bound)


def _tail(C: int, p: int, r: Fraction, M: int) -> Fraction | None:
    tb = hypergeom.tail_bound(p, r, M)
    return None if tb is None else C * tb


def _q_upper(q: Real) -> Fraction:
    r = Fraction(_mpctx(q.prec).nstr(q.abs_upper(), 20))
    return r * (1 + Fraction(1, 10 ** 15))


def terms_needed(k: int, q: Real, ctx: PrecisionContext) -> int:
    """Smallest truncation order whose tail bound meets the context goal."""
    C, p = eisenstein(k, 0).bound
    r = _q_upper(q)
    goal = Fraction(1, 10 ** (ctx.digits + ctx.guard))
    M = 1
    while True:
        tb = _tail(C, p, r, M)
        if tb is not None and tb < goal:
            return M
        M += 1


def eval_qseries(series: QSeries, q: Real, ctx: PrecisionContext) -> Real:
    """Evaluate a truncated series at real ``q`` with the tail folded into ``err``."""
    mp = _mpctx(max(ctx.prec, q.prec))
    r = _q_upper(q)
    if r >= Fraction(1, 2):
        raise ValueError("eval_qseries needs |q| < 1/2")
    C, p = series.bound
    tb = _tail(C, p, r, series.M)
    goal = Fraction(1, 10 ** (ctx.digits + ctx.guard))
    if tb is None or tb > goal:
        raise PrecisionError(f"truncation order M={series.M} too small for {ctx.digits} digits")
    acc = mp.zero
    for c in reversed(series.coeffs):
        acc = acc * q.value + c
    rounding = (series.M + 1) * 4 * mp.ldexp(max(abs(acc), mp.one), 1 - mp.prec)
    # |d/dq| <= sum m C m^p r^{m-1}
    deriv = sum(C * Fraction(m) ** (p + 1) * r ** (m - 1) for m in range(1, series.M + 2))
    if r:
        deriv += C * hypergeom.tail_bound(p + 1, r, series.M + 1) / r
    prop = q.err * mp.mpf(deriv.numerator) / deriv.denominator
    return Real(acc, rounding + prop + mp.mpf(tb.numerator) / tb.denominator, mp.prec)


@dataclass(frozen=True)
class CMPoint:
    """``tau = (b + sqrt(D))/2`` with ``b = D mod 2``, so ``q = e^{2 pi i tau}`` is real."""

    D: int

    def __post_init__(self):
        if self.D >= 0 or self.D % 4 not in (0, 1):
            raise ValueError(f"{self.D} does not give a CM point of the admitted shape")

    @classmethod
    def imaginary(cls, t: int) -> "CMPoint":
        """The point ``tau = t i``."""
        return cls(-4 * t * t)

    @property
    def b(self) -> int:
        return self.D % 2

    @property
    def imag(self) -> float:
        return abs(self.D) ** 0.5 / 2

    def label(self) -> str:
        if self.b:
            return f"(1+sqrt({self.D}))/2"
        return f"sqrt({self.D})/2"

    def q(self, ctx: PrecisionContext) -> Real:
        r = exp(-(pi(ctx) * sqrt(abs(self.D), ctx)), ctx)
        return -r if self.b else r


def eisenstein_values(tau: CMPoint, ctx: PrecisionContext, ks=(4, 6)) -> dict[int, Real]:
    q = tau.q(ctx)
    return {k: eval_qseries(eisenstein(k, terms_needed(k, q, ctx)), q, ctx) for k in ks}


def j_invariant(tau: CMPoint, ctx: PrecisionContext) -> Real:
    """``1728 E4^3 / (E4^3 - E6^2)`` from the q-expansions."""
    E = eisenstein_values(tau, ctx)
    e4c = E[4] ** 3
    den = e4c - E[6] ** 2
    if not den.is_positive() and not (-den).is_positive():
        raise PrecisionError("E4^3 - E6^2 is indistinguishable from zero")
    return e4c * 1728 / den


def check_f0_sqrtE4(tau: CMPoint, ctx: PrecisionContext) -> Real:
    """``|f_0(1728/j(tau)) - sqrt(E4(tau))|`` for s = 1/6."""
    j = j_invariant(tau, ctx)
    z = Real.from_number(1728, ctx) / j
    if z.abs_upper() >= 0.5:
        raise ValueError("1728/j(tau) is outside the region the evaluator covers")
    lhs = hypergeom.eval_real(HyperParams(Fraction(1, 6), 0), z, ctx)
    rhs = sqrt(eisenstein_values(tau, ctx, ks=(4,))[4], ctx)
    return abs(lhs - rhs)
