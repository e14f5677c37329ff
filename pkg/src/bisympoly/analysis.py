"""Structural decompositions and variable actions on polynomials.

Homogeneous components, shifting the argument by a constant vector (Taylor
expansion), conjugation by translations, variable permutation, variable
identification, and the set of essential variables.  These are the building
blocks the bisymmetry classifier and its property suites are made of.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .polyring import Polynomial, Scalar, as_rational

_ZERO = Fraction(0)


@dataclass(frozen=True)
class HomogeneousDecomposition:
    """All nonzero degree-homogeneous parts of a polynomial, keyed by degree."""

    arity: int
    components: Mapping[int, Polynomial]

    def reconstruct(self) -> Polynomial:
        """Sum of the components; equals the decomposed polynomial."""
        out = Polynomial.zero(self.arity)
        for part in self.components.values():
            out = out.add(part)
        return out


def homogeneous_component(poly: Polynomial, degree: int) -> Polynomial:
    """Sub-sum of the terms of total degree exactly `degree` (possibly zero)."""
    terms = {alpha: c for alpha, c in poly.terms.items() if sum(alpha) == degree}
    return Polynomial(poly.arity, terms)


def decompose(poly: Polynomial) -> HomogeneousDecomposition:
    """Split into homogeneous components; the zero polynomial yields an empty map."""
    grouped: dict[int, dict[tuple[int, ...], Fraction]] = {}
    for alpha, coeff in poly.terms.items():
        grouped.setdefault(sum(alpha), {})[alpha] = coeff
    components = {k: Polynomial(poly.arity, terms) for k, terms in sorted(grouped.items())}
    return HomogeneousDecomposition(poly.arity, components)


def is_homogeneous(poly: Polynomial) -> bool:
    """True iff all stored terms share one total degree (vacuously true for zero)."""
    degrees = {sum(alpha) for alpha in poly.terms}
    return len(degrees) <= 1


def taylor_shift(poly: Polynomial, shift: Sequence[Scalar]) -> Polynomial:
    """The polynomial x -> P(x + shift), via derivatives and factorials.

    Computed as the multi-binomial expansion, factored one variable at a time:
    sum_k shift_i^k / k! * (d/dx_i)^k applied in sequence for each i.  Division
    by k! is always exact over the rationals.
    """
    offsets = tuple(as_rational(v) for v in shift)
    if len(offsets) != poly.arity:
        raise ValueError(f"shift has length {len(offsets)}, expected arity {poly.arity}")
    result = poly
    for index, offset in enumerate(offsets, start=1):
        if not offset:
            continue
        total = result
        deriv = result
        weight = Fraction(1)  # offset^k / k!
        k = 0
        while True:
            deriv = deriv.partial_derivative(index)
            if deriv.is_zero():
                break
            k += 1
            weight = weight * offset / k
            total = total.add(deriv.scale(weight))
        result = total
    return result


def conjugate_translate(poly: Polynomial, b: Scalar) -> Polynomial:
    """Conjugation by the translation x -> x + b: P(x1+b, ..., xn+b) - b."""
    offset = as_rational(b)
    shifted = taylor_shift(poly, (offset,) * poly.arity)
    return shifted.sub(Polynomial.constant(poly.arity, offset))


def permute(poly: Polynomial, sigma: Sequence[int]) -> Polynomial:
    """Relabel variables: argument position j receives x_{sigma[j]} (1-based)."""
    images = tuple(sigma)
    n = poly.arity
    if sorted(images) != list(range(1, n + 1)):
        raise ValueError(f"{images} is not a permutation of 1..{n}")
    out: dict[tuple[int, ...], Fraction] = {}
    for alpha, coeff in poly.terms.items():
        beta = [0] * n
        for j, e in enumerate(alpha):
            beta[images[j] - 1] = e
        out[tuple(beta)] = coeff
    return Polynomial(n, out)


def identify(poly: Polynomial, i: int, j: int) -> Polynomial:
    """Restrict to the diagonal x_i = x_j and relabel to n-1 variables.

    Argument positions 1..j-1 keep their variables, position j receives the
    variable at position i, and positions after j shift down by one.  Only
    i < j is admitted.
    """
    n = poly.arity
    if n < 2:
        raise ValueError("identification needs at least two variables")
    if not (1 <= i < j <= n):
        raise ValueError(f"need 1 <= i < j <= {n}, got i={i}, j={j}")
    out: dict[tuple[int, ...], Fraction] = {}
    for alpha, coeff in poly.terms.items():
        beta = [0] * (n - 1)
        for q, e in enumerate(alpha, start=1):
            if q < j:
                beta[q - 1] += e
            elif q == j:
                beta[i - 1] += e
            else:
                beta[q - 2] += e
        key = tuple(beta)
        out[key] = out.get(key, _ZERO) + coeff
    return Polynomial(n - 1, out)


def essential_variables(poly: Polynomial) -> set[int]:
    """Indices i with a nonzero formal partial derivative (1-based)."""
    return {
        i for i in range(1, poly.arity + 1) if not poly.partial_derivative(i).is_zero()
    }
