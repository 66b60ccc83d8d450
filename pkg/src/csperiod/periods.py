"""The Chowla-Selberg period and the constants derived from it."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .numtheory import class_number, kronecker, validate_discriminant
from .precision import PrecisionContext, Real, exp, log_gamma, pi, sqrt


def character_log_gamma_sum(D, ctx: PrecisionContext, *, reverse: bool = False,
                            coprime_only: bool = True) -> Real:
    """``sum_j (D/j) log Γ(j/|D|)`` over ``1 <= j <= |D|``.

    Summation order is fixed (ascending unless ``reverse``) so results are
    reproducible bit for bit.
    """
    n = abs(int(D))
    js = range(n, 0, -1) if reverse else range(1, n + 1)
    total = Real.from_number(0, ctx)
    for j in js:
        chi = kronecker(int(D), j)
        if chi == 0 and coprime_only:
            continue
        total = total + log_gamma(Fraction(j, n), ctx) * chi
    return total


def omega(D, h: int | None = None, ctx: PrecisionContext | None = None) -> Real:
    """Ω_D = (2π/|D|) · (∏ Γ(j/|D|)^{(D/j)})^{1/h}, evaluated through logarithms."""
    disc = validate_discriminant(D)
    if h is None:
        h = class_number(disc)
    if ctx is None:
        raise TypeError("omega needs a PrecisionContext")
    s = character_log_gamma_sum(disc.D, ctx)
    return pi(ctx) * 2 / disc.abs * exp(s / h, ctx)


@dataclass(frozen=True)
class PeriodValues:
    D: int
    d: int
    omega: Real
    pi_sqrt_d: Real
    omega_over_pi: Real
    pi_over_omega: Real
    # 1, sqrt(d) Ω/π², sqrt(d)/π, sqrt(d)/Ω
    span_entries: tuple[Real, Real, Real, Real]

    def rescaled_span(self, ctx: PrecisionContext) -> tuple[Real, ...]:
        """The span multiplied through by π/√d: ``π/√d, Ω/π, 1, π/Ω``."""
        factor = pi(ctx) / sqrt(self.d, ctx)
        return tuple(x * factor for x in self.span_entries)


def span_values(D, d: int, ctx: PrecisionContext, h: int | None = None) -> PeriodValues:
    if d < 1:
        raise ValueError("d must be a positive integer")
    disc = validate_discriminant(D)
    om = omega(disc, h, ctx)
    p = pi(ctx)
    sd = sqrt(d, ctx)
    one = Real.from_number(1, ctx)
    return PeriodValues(
        D=disc.D,
        d=d,
        omega=om,
        pi_sqrt_d=p * sd,
        omega_over_pi=om / p,
        pi_over_omega=p / om,
        span_entries=(one, sd * om / (p * p), sd / p, sd / om),
    )
