"""Square-mod-4 certificates for 2-torsion ideal classes.

A class of order dividing 2 passes when the square of a representative
ideal of odd norm has a generator alpha (up to sign) congruent to a
square modulo 4.  The passing classes form a subgroup whose size obeys
   #passing = #Cl[2] / (E4+ : E^2),
which is asserted on every call.  Totally-positive conditions are vacuous
for imaginary quadratic fields and recorded as such.
"""

from __future__ import annotations

from dataclasses import dataclass

from .discriminants import factor_into_prime_discriminants
from .forms import ClassGroupData, QuadraticForm, class_group, reduce_form
from .ring import Element, Ideal, QuadRing


def e4_plus_index(d: int) -> int:
    """(E_4^+ : E^2) for the imaginary quadratic field of discriminant d.

    2 exactly when -4 divides d as a prime discriminant; verified against
    the direct test -1 = xi^2 mod 4 over all residues.  The fields with
    d in {-3, -4} carry extra torsion units and the index is 1.
    """
    if d >= 0:
        raise ValueError("imaginary quadratic fields only")
    if d in (-3, -4):
        return 1
    factor_route = 2 if -4 in factor_into_prime_discriminants(d) else 1
    direct_route = 2 if QuadRing(d).is_square_mod4((-1, 0)) else 1
    if factor_route != direct_route:
        raise AssertionError(
            f"e4 index routes disagree for d={d}: factor {factor_route}, "
            f"direct {direct_route}")
    return factor_route


def odd_norm_form(f: QuadraticForm) -> QuadraticForm:
    """An equivalent form with odd leading coefficient.

    One of a, c, a+b+c is odd for a primitive form; the three cases come
    from the transformations (x,y)->(y,-x) and (x,y)->(x, x+y).
    """
    if f.a % 2 == 1:
        return f
    if f.c % 2 == 1:
        return QuadraticForm(f.c, -f.b, f.a)
    n = f.a + f.b + f.c
    if n % 2 == 0:
        raise ValueError(f"form {f} is not primitive")
    return QuadraticForm(n, f.b + 2 * f.c, f.c)


@dataclass(frozen=True)
class ClassCertificate:
    form: QuadraticForm          # reduced representative of the class
    odd_form: QuadraticForm      # equivalent form of odd norm used for the ideal
    alpha: Element               # generator of the squared ideal
    passes: bool                 # some sign of alpha is a square mod 4


@dataclass(frozen=True)
class SelmerData:
    discriminant: int
    class_group: ClassGroupData
    e4_index: int
    certificates: tuple[ClassCertificate, ...]   # one per 2-torsion class
    cl_star_indices: tuple[int, ...]             # passing classes (form indices)
    note: str = "totally-positive conditions are vacuous for imaginary fields"

    @property
    def cl2_size(self) -> int:
        return len(self.certificates)

    @property
    def cl_star_size(self) -> int:
        return len(self.cl_star_indices)


def cl_star_subgroup(d: int) -> SelmerData:
    """Certificates for every 2-torsion class, with the subgroup count law
    #Cl* * (E4+:E^2) = #Cl[2] asserted exactly."""
    cg = class_group(d)
    ring = QuadRing(d)
    e4 = e4_plus_index(d)
    certs = []
    passing = []
    for idx in cg.two_torsion:
        f = cg.forms[idx]
        odd = odd_norm_form(f)
        if reduce_form(odd) != f:
            raise AssertionError(f"odd-norm transform left the class of {f}")
        ideal = Ideal.from_form(ring, odd.a, odd.b)
        squared = ideal.square()
        alpha = squared.generator_of_norm(odd.a * odd.a)
        ok = ring.is_square_mod4(alpha) or ring.is_square_mod4(ring.neg(alpha))
        certs.append(ClassCertificate(f, odd, alpha, ok))
        if ok:
            passing.append(idx)
    if len(passing) * e4 != len(certs):
        raise AssertionError(
            f"exact-sequence count fails for d={d}: #Cl*={len(passing)}, "
            f"(E4+:E^2)={e4}, #Cl[2]={len(certs)}")
    pass_set = set(passing)
    for i in passing:
        for j in passing:
            if cg.table[i][j] not in pass_set:
                raise AssertionError(f"passing classes not closed under composition, d={d}")
    return SelmerData(d, cg, e4, tuple(certs), tuple(sorted(passing)))
