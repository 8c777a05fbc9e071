"""Reduced binary quadratic forms and the class group of a negative
fundamental discriminant.

Forms (a, b, c) with b^2 - 4ac = d < 0, a > 0, primitive.  One reduced
form per ideal class; composition is the class-group law.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .discriminants import genus_two_rank, is_fundamental
from .ring import _xgcd
from ..groups import invariant_factors_from_orders


@dataclass(frozen=True)
class QuadraticForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def inverse(self) -> "QuadraticForm":
        return reduce_form(QuadraticForm(self.a, -self.b, self.c))

    def __repr__(self):
        return f"({self.a},{self.b},{self.c})"


def reduce_form(f: QuadraticForm) -> QuadraticForm:
    """The reduced representative of f's class (d < 0 only)."""
    a, b, c = f.a, f.b, f.c
    d = f.discriminant
    if d >= 0:
        raise ValueError("reduction implemented for negative discriminants only")
    if a <= 0:
        raise ValueError("definite forms must have a > 0")
    while True:
        if -a < b <= a:
            if a > c:
                a, b, c = c, -b, a
                continue
            if a == c and b < 0:
                b = -b
            break
        r = b % (2 * a)
        if r > a:
            r -= 2 * a
        c = (r * r - d) // (4 * a)
        b = r
    out = QuadraticForm(a, b, c)
    if out.discriminant != d or not out.is_reduced():
        raise AssertionError(f"reduction failed for {f}")
    return out


def principal_form(d: int) -> QuadraticForm:
    k = d % 2
    return QuadraticForm(1, k, (k * k - d) // 4)


def reduced_forms(d: int) -> list[QuadraticForm]:
    """Exactly one reduced form per class; the count is the class number."""
    if d >= 0:
        raise ValueError("only negative discriminants carry reduced definite forms")
    if not is_fundamental(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    out = []
    amax = isqrt(-d // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b - d) % 2 != 0:
                continue
            if (b * b - d) % (4 * a) != 0:
                continue
            c = (b * b - d) // (4 * a)
            if c < a:
                continue
            if a == c and b < 0:
                continue
            f = QuadraticForm(a, b, c)
            if f.is_primitive():
                out.append(f)
    return out


def _solve_linmod(a: int, b: int, m: int) -> tuple[int, int]:
    """x with a x = b (mod m), as (x0, step) so solutions are x0 + k*step."""
    g, s, _ = _xgcd(a, m)
    if b % g != 0:
        raise ValueError("congruence has no solution")
    m_abs = abs(m)
    x0 = (b // g) * s % m_abs
    return x0, m_abs // g


def compose_forms(f: QuadraticForm, g: QuadraticForm) -> QuadraticForm:
    """Reduced composite of two primitive forms of equal discriminant."""
    if f.discriminant != g.discriminant:
        raise ValueError("discriminant mismatch")
    if not (f.is_primitive() and g.is_primitive()):
        raise ValueError("composition needs primitive forms")
    a1, b1, c1 = f.a, f.b, f.c
    a2, b2, c2 = g.a, g.b, g.c
    s = (b1 + b2) // 2
    h = (b2 - b1) // 2
    w = gcd(gcd(a1, a2), s)
    j = w
    t_a = a1 // w
    t_b = a2 // w
    u = s // w
    mu, nu = _solve_linmod(t_b * u, h * u + t_a * c1, t_a * t_b)
    lam = _solve_linmod(t_b * nu, h - t_b * mu, t_a)[0] if t_a != 1 else 0
    k = mu + nu * lam
    ell = (k * t_b - h) // t_a
    m = (t_b * u * k - h * u - c1 * t_a) // (t_a * t_b)
    A = t_a * t_b
    B = j * u - (k * t_b + ell * t_a)
    C = k * ell - j * m
    out = QuadraticForm(A, B, C)
    if out.discriminant != f.discriminant:
        raise AssertionError(f"composition broke the discriminant: {f} * {g} -> {out}")
    return reduce_form(out)


@dataclass(frozen=True)
class ClassGroupData:
    """Class group of a negative fundamental discriminant, via reduced forms."""

    discriminant: int
    forms: tuple[QuadraticForm, ...]
    table: tuple[tuple[int, ...], ...]   # composition table on form indices
    invariants: tuple[int, ...]          # invariant factors d_1 | d_2 | ...
    two_rank: int
    two_torsion: tuple[int, ...]         # indices of classes of order <= 2

    @property
    def h(self) -> int:
        return len(self.forms)

    @property
    def principal_index(self) -> int:
        return self.forms.index(principal_form(self.discriminant))


def class_group(d: int) -> ClassGroupData:
    """Composition table, invariant factors, and 2-torsion of Cl(d).

    The 2-rank from the group structure is cross-checked against the
    genus-theory value t - 1.
    """
    forms = tuple(reduced_forms(d))
    index = {f: i for i, f in enumerate(forms)}
    table = tuple(
        tuple(index[compose_forms(f, g)] for g in forms) for f in forms
    )
    e = index[principal_form(d)]
    orders = []
    for i in range(len(forms)):
        k, cur = 1, i
        while cur != e:
            cur = table[cur][i]
            k += 1
        orders.append(k)
    invariants = invariant_factors_from_orders(len(forms), orders)
    two_rank = sum(1 for f_ in invariants if f_ % 2 == 0)
    expected = genus_two_rank(d)
    if two_rank != expected:
        raise AssertionError(
            f"2-rank mismatch for d={d}: table gives {two_rank}, genus theory {expected}")
    two_torsion = tuple(i for i, o in enumerate(orders) if o <= 2)
    if len(two_torsion) != 2 ** two_rank:
        raise AssertionError(f"2-torsion count mismatch for d={d}")
    return ClassGroupData(d, forms, table, invariants, two_rank, two_torsion)
