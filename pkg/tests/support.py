"""Seeded generators and shared assertions for the property suites."""

from __future__ import annotations

import random
from fractions import Fraction

from bisympoly import NotBisymmetric, Polynomial, bisymmetry_sides

# The running worked example: 9*x1*x2*x3 + 3*(x1*x2 + x2*x3 + x3*x1) + x1 + x2 + x3,
# equal to 9*(x1+1/3)(x2+1/3)(x3+1/3) - 1/3.
CUBIC_EXAMPLE = Polynomial(
    3,
    {
        (1, 1, 1): 9,
        (1, 1, 0): 3,
        (0, 1, 1): 3,
        (1, 0, 1): 3,
        (1, 0, 0): 1,
        (0, 1, 0): 1,
        (0, 0, 1): 1,
    },
)


def random_rational(rng: random.Random, low: int = -3, high: int = 3, max_den: int = 3) -> Fraction:
    return Fraction(rng.randint(low, high), rng.randint(1, max_den))


def nonzero_rational(rng: random.Random, low: int = -3, high: int = 3, max_den: int = 3) -> Fraction:
    while True:
        value = random_rational(rng, low, high, max_den)
        if value:
            return value


def random_exponents(rng: random.Random, arity: int, max_degree: int) -> tuple[int, ...]:
    alpha = [0] * arity
    for _ in range(rng.randint(0, max_degree)):
        alpha[rng.randrange(arity)] += 1
    return tuple(alpha)


def random_polynomial(
    rng: random.Random,
    arity: int,
    max_degree: int,
    max_terms: int = 6,
    coeff_low: int = -3,
    coeff_high: int = 3,
    rational_coeffs: bool = False,
) -> Polynomial:
    terms: dict[tuple[int, ...], Fraction] = {}
    for _ in range(rng.randint(0, max_terms)):
        alpha = random_exponents(rng, arity, max_degree)
        if rational_coeffs:
            coeff = random_rational(rng, coeff_low, coeff_high)
        else:
            coeff = Fraction(rng.randint(coeff_low, coeff_high))
        terms[alpha] = terms.get(alpha, Fraction(0)) + coeff
    return Polynomial(arity, terms)


def nonzero_polynomial(rng: random.Random, arity: int, max_degree: int, **kwargs) -> Polynomial:
    while True:
        poly = random_polynomial(rng, arity, max_degree, **kwargs)
        if not poly.is_zero():
            return poly


def random_point(rng: random.Random, arity: int, low: int = -4, high: int = 4, max_den: int = 3):
    return tuple(random_rational(rng, low, high, max_den) for _ in range(arity))


def assert_canonical(poly: Polynomial) -> None:
    """Audit the canonical-form invariants of a polynomial value."""
    for alpha, coeff in poly.terms.items():
        assert isinstance(alpha, tuple) and len(alpha) == poly.arity
        assert all(isinstance(e, int) and e >= 0 for e in alpha)
        assert isinstance(coeff, Fraction) and coeff != 0


def assert_valid_witness(poly: Polynomial, verdict: NotBisymmetric) -> None:
    """Re-evaluate both sides at the stored matrix and confirm the rejection."""
    lhs, rhs = bisymmetry_sides(poly, verdict.witness)
    assert lhs == verdict.lhs
    assert rhs == verdict.rhs
    assert lhs != rhs
