"""Fundamental units of real quadratic fields by continued fractions.

The continued fraction of sqrt(m) yields the smallest solution of
x^2 - m y^2 = +-1; for m = 1 mod 4 the maximal order may contain a
smaller half-integer unit (x + y sqrt(m))/2 with x^2 - m y^2 = +-4,
recovered exactly from the trace identity Tr(eta^3) = Tr(eta)^3 - 3 N(eta) Tr(eta).
All arithmetic is exact on arbitrary-size integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .discriminants import is_squarefree


@dataclass(frozen=True)
class UnitResult:
    """Fundamental solution with its convention stamped in.

    convention "sqrt": unit = x + y sqrt(m), x^2 - m y^2 = norm (+-1).
    convention "half": unit = (x + y sqrt(m))/2, x^2 - m y^2 = 4 * norm.
    """

    m: int
    x: int
    y: int
    norm: int
    convention: str


def pell_minimal(m: int) -> tuple[int, int, int]:
    """Smallest (x, y, norm) with x^2 - m y^2 = norm in {+1, -1}, y >= 1,
    by the continued fraction of sqrt(m)."""
    a0 = isqrt(m)
    if a0 * a0 == m:
        raise ValueError(f"{m} is a perfect square")
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    P, Q = a0, m - a0 * a0
    length = 1
    while Q != 1:
        a = (P + a0) // Q
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        P = a * Q - P
        Q = (m - P * P) // Q
        length += 1
    norm = 1 if length % 2 == 0 else -1
    if h * h - m * k * k != norm:
        raise AssertionError(f"continued fraction unit failed for m={m}")
    return h, k, norm


def _icbrt(n: int) -> int:
    if n < 0:
        return -_icbrt(-n)
    x = round(n ** (1 / 3)) if n < 1 << 50 else 1 << ((n.bit_length() + 2) // 3)
    while x * x * x > n:
        x = (2 * x + n // (x * x)) // 3
    while (x + 1) ** 3 <= n:
        x += 1
    return x


def _half_unit_cube_root(m: int, X: int, Y: int, n1: int) -> tuple[int, int, int] | None:
    """Odd (x, y) with ((x + y sqrt(m))/2)^3 = X + Y sqrt(m), if it exists.

    The trace x solves x^3 - 3 n x = 2X with n the candidate norm.
    """
    for n in (1, -1):
        approx = _icbrt(2 * X)
        for x in range(max(1, approx - 2), approx + 3):
            if x * x * x - 3 * n * x != 2 * X:
                continue
            y_sq, rem = divmod(x * x - 4 * n, m)
            if rem != 0 or y_sq <= 0:
                continue
            y = isqrt(y_sq)
            if y * y != y_sq or x % 2 == 0 or y % 2 == 0:
                continue
            if (x ** 3 + 3 * m * x * y * y) == 8 * X and (3 * x * x * y + m * y ** 3) == 8 * Y:
                return x, y, n
    return None


def fundamental_unit_norm(m: int) -> UnitResult:
    """Fundamental unit of Q(sqrt(m)) with its norm sign.

    Integral convention (x^2 - m y^2 = +-1) unless m = 1 mod 4, where the
    half-integer convention x^2 - m y^2 = +-4 is reported (the unit is
    (x + y sqrt(m))/2, possibly with even x, y when it is integral).
    """
    if m <= 1:
        raise ValueError("need m > 1")
    if not is_squarefree(m):
        raise ValueError(f"{m} is not squarefree")
    x1, y1, n1 = pell_minimal(m)
    if m % 4 != 1:
        return UnitResult(m, x1, y1, n1, "sqrt")
    half = _half_unit_cube_root(m, x1, y1, n1)
    if half is not None:
        x, y, n = half
        if x * x - m * y * y != 4 * n:
            raise AssertionError(f"half-unit norm check failed for m={m}")
        return UnitResult(m, x, y, n, "half")
    return UnitResult(m, 2 * x1, 2 * y1, n1, "half")
