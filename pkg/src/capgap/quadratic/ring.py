"""Integer arithmetic in an imaginary quadratic field.

Elements of the maximal order are integer pairs (x, y) meaning x + y*w,
with w = sqrt(d)/2 for d = 0 mod 4 and w = (1 + sqrt(d))/2 for d = 1 mod 4.
Ideals are full-rank Z-modules in Hermite normal form.  Everything is
exact; searches are finite because the norm form is positive definite.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .discriminants import is_fundamental

Element = tuple[int, int]


class PrincipalitySearchError(RuntimeError):
    """No generator of the expected norm was found inside the search bound."""


@dataclass(frozen=True)
class QuadRing:
    d: int

    def __post_init__(self):
        if self.d >= 0 or not is_fundamental(self.d):
            raise ValueError(f"need a negative fundamental discriminant, got {self.d}")

    @property
    def even(self) -> bool:
        return self.d % 4 == 0

    def mul(self, u: Element, v: Element) -> Element:
        x1, y1 = u
        x2, y2 = v
        if self.even:
            return (x1 * x2 + y1 * y2 * (self.d // 4), x1 * y2 + x2 * y1)
        return (x1 * x2 + y1 * y2 * ((self.d - 1) // 4),
                x1 * y2 + x2 * y1 + y1 * y2)

    def conj(self, u: Element) -> Element:
        x, y = u
        return (x, -y) if self.even else (x + y, -y)

    def norm(self, u: Element) -> int:
        x, y = u
        if self.even:
            return x * x - y * y * (self.d // 4)
        return x * x + x * y + y * y * ((1 - self.d) // 4)

    def neg(self, u: Element) -> Element:
        return (-u[0], -u[1])

    def is_square_mod4(self, alpha: Element) -> bool:
        """Is alpha congruent to a square modulo 4 (exhausting all 16 residues)?"""
        ax, ay = alpha
        for x in range(4):
            for y in range(4):
                sx, sy = self.mul((x, y), (x, y))
                if (sx - ax) % 4 == 0 and (sy - ay) % 4 == 0:
                    return True
        return False

    def sqrt_d_coords(self) -> Element:
        """sqrt(d) itself: 2w for even d, 2w - 1 for odd d."""
        return (0, 2) if self.even else (-1, 2)


def _hnf_2xn(cols: list[Element]) -> tuple[int, int, int]:
    """Hermite normal form of the module spanned by the columns.

    Returns (a, b, c) for the basis { (a, 0), (b, c) } with c > 0, a > 0,
    0 <= b < a.  Requires full rank.
    """
    cols = [c for c in cols if c != (0, 0)]
    # eliminate second coordinates pairwise
    c_val = 0
    carrier: Element | None = None
    firsts: list[int] = []
    for (x, y) in cols:
        if y == 0:
            firsts.append(x)
            continue
        if carrier is None:
            carrier = (x, y)
            continue
        bx, by = carrier
        g, s, t = _xgcd(by, y)
        # s*by + t*y = g; combine to one vector with second coord g,
        # keep the quotient combination as a first-coord-only vector
        new_carrier = (s * bx + t * x, g)
        k1, k2 = y // g, by // g
        firsts.append(k1 * bx - k2 * x)
        carrier = new_carrier
    if carrier is None:
        raise ValueError("module has rank < 2")
    a = 0
    for f in firsts:
        a = gcd(a, abs(f))
    if a == 0:
        raise ValueError("module has rank < 2")
    b, c = carrier
    if c < 0:
        b, c = -b, -c
    b %= a
    return a, b, c


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class Ideal:
    """Nonzero ideal with HNF basis {(a, 0), (b, c)} in coordinates (1, w)."""

    ring: QuadRing
    a: int
    b: int
    c: int

    @classmethod
    def from_basis(cls, ring: QuadRing, cols: list[Element]) -> "Ideal":
        a, b, c = _hnf_2xn(cols)
        return cls(ring, a, b, c)

    @classmethod
    def from_form(cls, ring: QuadRing, fa: int, fb: int) -> "Ideal":
        """Module Z*a + Z*(-b + sqrt(d))/2 attached to a form (a, b, *)."""
        if (fb - ring.d) % 2 != 0:
            raise ValueError("form coefficient parity does not match the discriminant")
        if ring.even:
            second = (-fb // 2, 1)
        else:
            second = ((-fb - 1) // 2, 1)
        return cls.from_basis(ring, [(fa, 0), second])

    @classmethod
    def whole_ring(cls, ring: QuadRing) -> "Ideal":
        return cls(ring, 1, 0, 1)

    def basis(self) -> list[Element]:
        return [(self.a, 0), (self.b, self.c)]

    @property
    def norm(self) -> int:
        return self.a * self.c

    def contains(self, u: Element) -> bool:
        x, y = u
        if y % self.c != 0:
            return False
        k = y // self.c
        return (x - k * self.b) % self.a == 0

    def multiply(self, other: "Ideal") -> "Ideal":
        cols = []
        for u in self.basis():
            for v in other.basis():
                cols.append(self.ring.mul(u, v))
        return Ideal.from_basis(self.ring, cols)

    def square(self) -> "Ideal":
        return self.multiply(self)

    def generator_of_norm(self, n: int) -> Element:
        """An element alpha of this ideal with N(alpha) = n, if one exists.

        For an ideal of norm n this certifies principality: (alpha) = ideal.
        Raises PrincipalitySearchError when the exhaustive search (finite,
        |y| <= sqrt(4n/|d|) + 1) comes up empty.
        """
        ring = self.ring
        d = ring.d
        ymax = isqrt(4 * n // abs(d)) + 1
        for y in range(-ymax, ymax + 1):
            if ring.even:
                rem = n + (d // 4) * y * y   # x^2 = n - |d|/4 y^2
                if rem < 0:
                    continue
                x = isqrt(rem)
                if x * x != rem:
                    continue
                candidates = {(x, y), (-x, y)}
            else:
                rem = 4 * n + d * y * y      # (2x + y)^2 = 4n - |d| y^2
                if rem < 0:
                    continue
                u = isqrt(rem)
                if u * u != rem or (u - y) % 2 != 0:
                    continue
                candidates = {((u - y) // 2, y), ((-u - y) // 2, y)}
            for cand in candidates:
                if ring.norm(cand) == n and self.contains(cand):
                    return cand
        raise PrincipalitySearchError(
            f"no element of norm {n} in ideal {self} (search bound |y| <= {ymax})")
