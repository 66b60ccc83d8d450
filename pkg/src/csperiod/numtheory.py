"""Discriminants, the Kronecker symbol and class numbers of imaginary quadratic fields."""

from __future__ import annotations

import math
from dataclasses import dataclass


class DiscriminantError(ValueError):
    """``D`` is not a negative integer congruent to 0 or 1 mod 4."""


class NotFundamentalError(DiscriminantError):
    """``D`` (or ``D/4``) fails the square-free requirement."""


@dataclass(frozen=True)
class Discriminant:
    D: int

    def __int__(self):
        return self.D

    @property
    def abs(self) -> int:
        return -self.D


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        if n % p == 0:
            n //= p
        p += 1 if p == 2 else 2
    return True


def validate_discriminant(D: int) -> Discriminant:
    """Return ``Discriminant(D)`` for a negative fundamental discriminant."""
    if isinstance(D, Discriminant):
        return D
    D = int(D)
    if D >= 0:
        raise DiscriminantError(f"{D} is not a valid discriminant: must be negative")
    if D % 4 not in (0, 1):
        raise DiscriminantError(f"{D} is not a valid discriminant: must be 0 or 1 mod 4")
    core = D if D % 4 == 1 else D // 4
    if not is_squarefree(core):
        raise NotFundamentalError(
            f"{D} is not a valid discriminant: {'D' if core == D else 'D/4'} is not square-free"
        )
    return Discriminant(D)


def kronecker(D: int, j: int) -> int:
    """Kronecker symbol ``(D/j)``.

    Powers of two are peeled off with the ``(D/2)`` table, the sign of ``j``
    with the ``(D/-1)`` rule, and the odd part goes through the Jacobi symbol.
    """
    D, j = int(D), int(j)
    if j == 0:
        return 1 if abs(D) == 1 else 0
    result = 1
    if j < 0:
        j = -j
        if D < 0:
            result = -result
    v = (j & -j).bit_length() - 1
    j >>= v
    if v:
        if D % 2 == 0:
            return 0
        if v & 1 and D % 8 in (3, 5):
            result = -result
    return result * jacobi(D, j)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol for odd positive ``n`` via quadratic reciprocity."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("jacobi needs an odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def reduced_forms(D: int) -> list[tuple[int, int, int]]:
    """Reduced primitive positive definite forms ``(a, b, c)`` with ``b^2 - 4ac = D``."""
    D = int(D)
    forms = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (b < 0 and c == a):
                continue
            if math.gcd(math.gcd(a, b), c) == 1:
                forms.append((a, b, c))
        a += 1
    return forms


def class_number(D) -> int:
    """``h_D`` by counting reduced forms; ``|b| <= a <= c`` with ``b >= 0`` on the boundary."""
    D = validate_discriminant(D).D
    return len(reduced_forms(D))
