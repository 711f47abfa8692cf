"""Exact computation with commutativity preservers of incidence algebras.

The package models the incidence algebra I(X, K) of a finite connected
poset X over an exact field K (the rationals or a prime field), verifies
commutativity/strongness/diagonality preservation of linear self-maps,
extracts the invariants of bijective strong diagonality preservers, and
synthesizes and decomposes such maps as a shift composed with a pure
preserver built from a quadruple (theta, sigma, c, kappa).
"""

from .algebra import (
    AlgebraElement,
    bracket,
    centralizer_of_diagonal,
    convolve,
    interval_centralizer_identity,
    radical_center_basis,
    split_diag_jacobson,
)
from .analysis import (
    LinearEndomorphism,
    PreserverInvariants,
    apply,
    check_commutativity_preserver,
    extract_invariants,
    is_diagonality_preserver,
    is_strong_preserver,
)
from .fields import Field, PrimeScalar, prime_field, rationals
from .poset import Poset, Walk, from_cover_relations
from .structure import (
    BasisBijection,
    ShiftData,
    build_shift,
    check_admissible,
    check_c_compatibility,
    check_c_constant_on_chains,
    theta_is_monotone,
    validate_alpha,
    walk_sums,
)
from .synthesis import (
    Decomposition,
    build_tau,
    decompose,
    explore_conjecture,
    is_lie_type,
)

__all__ = [
    "AlgebraElement",
    "BasisBijection",
    "Decomposition",
    "Field",
    "LinearEndomorphism",
    "Poset",
    "PreserverInvariants",
    "PrimeScalar",
    "ShiftData",
    "Walk",
    "apply",
    "bracket",
    "build_shift",
    "build_tau",
    "centralizer_of_diagonal",
    "check_admissible",
    "check_c_compatibility",
    "check_c_constant_on_chains",
    "check_commutativity_preserver",
    "convolve",
    "decompose",
    "explore_conjecture",
    "extract_invariants",
    "from_cover_relations",
    "interval_centralizer_identity",
    "is_diagonality_preserver",
    "is_lie_type",
    "is_strong_preserver",
    "prime_field",
    "radical_center_basis",
    "rationals",
    "split_diag_jacobson",
    "theta_is_monotone",
    "validate_alpha",
    "walk_sums",
]

__version__ = "0.1.0"
