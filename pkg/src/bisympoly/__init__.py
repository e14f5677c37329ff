"""Exact decision procedures for bisymmetry (mediality) of polynomial functions.

The library answers, with exact rational arithmetic, whether an n-variable
polynomial P satisfies P(P(rows)) == P(P(columns)) for every n-by-n argument
matrix, classifies the bisymmetric ones (univariate / affine / shifted
monomial), constructs shifted monomials from their parameters, and checks
whether those parameters keep integer coefficients over the integers.
"""

from .polyring import MultiIndex, Point, Polynomial, Rational, as_rational, total_degree
from .analysis import (
    HomogeneousDecomposition,
    conjugate_translate,
    decompose,
    essential_variables,
    homogeneous_component,
    identify,
    is_homogeneous,
    permute,
    taylor_shift,
)
from .bisymmetry import (
    Affine,
    Bisymmetric,
    ClassIIISpec,
    ClassLabel,
    NotBisymmetric,
    RandomizedConfig,
    ResourceLimitExceeded,
    ShiftedMonomial,
    Univariate,
    Verdict,
    bisymmetry_difference,
    bisymmetry_sides,
    check_randomized,
    check_symbolic,
    classify,
    construct_class_iii,
    integrality_check,
    projected_term_count,
)
from .cli import ParseError, format_polynomial, parse

__all__ = [
    "Affine",
    "Bisymmetric",
    "ClassIIISpec",
    "ClassLabel",
    "HomogeneousDecomposition",
    "MultiIndex",
    "NotBisymmetric",
    "ParseError",
    "Point",
    "Polynomial",
    "RandomizedConfig",
    "Rational",
    "ResourceLimitExceeded",
    "ShiftedMonomial",
    "Univariate",
    "Verdict",
    "as_rational",
    "bisymmetry_difference",
    "bisymmetry_sides",
    "check_randomized",
    "check_symbolic",
    "classify",
    "conjugate_translate",
    "construct_class_iii",
    "decompose",
    "essential_variables",
    "format_polynomial",
    "homogeneous_component",
    "identify",
    "integrality_check",
    "is_homogeneous",
    "parse",
    "permute",
    "projected_term_count",
    "taylor_shift",
    "total_degree",
]
