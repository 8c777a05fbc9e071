"""Imaginary quadratic class groups, square-mod-4 certificates, unit norms."""

from .discriminants import (
    factor_into_prime_discriminants,
    fundamental_discriminants,
    genus_two_rank,
    is_fundamental,
    is_squarefree,
    prime_discriminant,
)
from .forms import (
    ClassGroupData,
    QuadraticForm,
    class_group,
    compose_forms,
    principal_form,
    reduce_form,
    reduced_forms,
)
from .ring import Ideal, PrincipalitySearchError, QuadRing
from .selmer import ClassCertificate, SelmerData, cl_star_subgroup, e4_plus_index, odd_norm_form
from .screen import CandidateRecord, screen_candidates
from .units import UnitResult, fundamental_unit_norm, pell_minimal

__all__ = [
    "CandidateRecord", "ClassCertificate", "ClassGroupData", "Ideal",
    "PrincipalitySearchError", "QuadRing", "QuadraticForm", "SelmerData",
    "UnitResult", "class_group", "cl_star_subgroup", "compose_forms",
    "e4_plus_index", "factor_into_prime_discriminants",
    "fundamental_discriminants", "fundamental_unit_norm", "genus_two_rank",
    "is_fundamental", "is_squarefree", "odd_norm_form", "pell_minimal",
    "prime_discriminant", "principal_form", "reduce_form", "reduced_forms",
    "screen_candidates",
]
