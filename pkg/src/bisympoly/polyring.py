"""Sparse multivariate polynomial arithmetic over exact rationals.

A polynomial of fixed arity n is a finite map from exponent tuples (one
nonnegative integer per variable) to nonzero Fraction coefficients:

    x1^2*x2 + 3  ->  Polynomial(2, {(2, 1): Fraction(1), (0, 0): Fraction(3)})

The zero polynomial is the empty map.  Every operation returns a new value in
canonical form (a zero coefficient is never stored), and instances are never
mutated after construction, so they are safe to share across threads.

Variable indices in the public API are 1-based: x1 is the first coordinate of
an exponent tuple.
"""

from __future__ import annotations

import math
import operator
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Union

# Exponent tuple: entry i is the degree of variable x_{i+1} in the monomial.
MultiIndex = tuple[int, ...]

# Exact rational scalar; stdlib Fraction already keeps the canonical reduced
# form (gcd 1, positive denominator, 0 == 0/1).
Rational = Fraction

# Evaluation argument: one rational per variable.
Point = tuple[Fraction, ...]

Scalar = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def total_degree(alpha: MultiIndex) -> int:
    """Sum of the entries of an exponent tuple."""
    return sum(alpha)


def as_rational(value: Scalar | str) -> Fraction:
    """Coerce ints, Fractions, and "p/q" strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def _denominator_lcm(coefficients: Iterable[Fraction]) -> int:
    out = 1
    for c in coefficients:
        out = math.lcm(out, c.denominator)
    return out


class Polynomial:
    """Immutable sparse polynomial with a fixed number of variables."""

    __slots__ = ("arity", "_terms")

    arity: int
    _terms: dict[MultiIndex, Fraction]

    def __init__(self, arity: int, terms: Mapping[Sequence[int], Scalar] | None = None):
        if not isinstance(arity, int) or arity < 1:
            raise ValueError(f"arity must be a positive integer, got {arity!r}")
        canonical: dict[MultiIndex, Fraction] = {}
        for raw_alpha, raw_coeff in (terms or {}).items():
            alpha = tuple(raw_alpha)
            if len(alpha) != arity:
                raise ValueError(
                    f"exponent tuple {alpha} has length {len(alpha)}, expected arity {arity}"
                )
            if any(not isinstance(e, int) or e < 0 for e in alpha):
                raise ValueError(f"exponents must be nonnegative integers, got {alpha}")
            coeff = raw_coeff if isinstance(raw_coeff, Fraction) else Fraction(raw_coeff)
            if coeff:
                canonical[alpha] = coeff
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "_terms", canonical)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, arity: int) -> Polynomial:
        return cls(arity)

    @classmethod
    def constant(cls, arity: int, value: Scalar) -> Polynomial:
        return cls(arity, {(0,) * arity: value})

    @classmethod
    def variable(cls, arity: int, index: int) -> Polynomial:
        """The polynomial x_index (1-based)."""
        if not 1 <= index <= arity:
            raise ValueError(f"variable index {index} out of range 1..{arity}")
        alpha = [0] * arity
        alpha[index - 1] = 1
        return cls(arity, {tuple(alpha): _ONE})

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff: Scalar = 1) -> Polynomial:
        return cls(len(tuple(exponents)), {tuple(exponents): coeff})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[MultiIndex, Fraction]:
        """Read-only view of the term map."""
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int | None:
        """Max total degree of the stored terms; None for the zero polynomial.

        None is the explicit degenerate-case sentinel: callers must handle the
        zero polynomial before comparing degrees.
        """
        if not self._terms:
            return None
        return max(map(sum, self._terms))

    def coefficient(self, alpha: Sequence[int]) -> Fraction:
        """Coefficient of x^alpha (zero when the term is absent)."""
        return self._terms.get(tuple(alpha), _ZERO)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.arity, _ZERO)

    def is_monomial(self) -> bool:
        """True iff the term map has exactly one entry (zero is not a monomial)."""
        return len(self._terms) == 1

    def as_monomial(self) -> tuple[MultiIndex, Fraction] | None:
        """The single (exponents, coefficient) pair, or None if not a monomial."""
        if len(self._terms) != 1:
            return None
        [(alpha, coeff)] = self._terms.items()
        return alpha, coeff

    # -- ring operations ----------------------------------------------------

    def _require_same_arity(self, other: Polynomial) -> None:
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def add(self, other: Polynomial) -> Polynomial:
        self._require_same_arity(other)
        merged = dict(self._terms)
        for alpha, coeff in other._terms.items():
            merged[alpha] = merged.get(alpha, _ZERO) + coeff
        return Polynomial(self.arity, merged)

    def sub(self, other: Polynomial) -> Polynomial:
        self._require_same_arity(other)
        merged = dict(self._terms)
        for alpha, coeff in other._terms.items():
            merged[alpha] = merged.get(alpha, _ZERO) - coeff
        return Polynomial(self.arity, merged)

    def neg(self) -> Polynomial:
        return Polynomial(self.arity, {a: -c for a, c in self._terms.items()})

    def scale(self, factor: Scalar) -> Polynomial:
        f = as_rational(factor)
        if not f:
            return Polynomial(self.arity)
        return Polynomial(self.arity, {a: c * f for a, c in self._terms.items()})

    def mul(self, other: Polynomial) -> Polynomial:
        self._require_same_arity(other)
        if not self._terms or not other._terms:
            return Polynomial(self.arity)
        # Clear denominators so the convolution runs on plain ints; a single
        # exact division per output term restores the reduced rationals.
        da = _denominator_lcm(self._terms.values())
        db = _denominator_lcm(other._terms.values())
        left = [(a, c.numerator * (da // c.denominator)) for a, c in self._terms.items()]
        right = [(a, c.numerator * (db // c.denominator)) for a, c in other._terms.items()]
        acc: dict[MultiIndex, int] = {}
        get = acc.get
        for alpha_a, int_a in left:
            for alpha_b, int_b in right:
                key = tuple(map(operator.add, alpha_a, alpha_b))
                acc[key] = get(key, 0) + int_a * int_b
        scale = da * db
        return Polynomial(self.arity, {a: Fraction(v, scale) for a, v in acc.items() if v})

    def pow(self, exponent: int) -> Polynomial:
        """Nonnegative integer power by repeated squaring; P^0 = 1."""
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {exponent!r}")
        result = Polynomial.constant(self.arity, 1)
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result.mul(base)
            k >>= 1
            if k:
                base = base.mul(base)
        return result

    # -- evaluation and composition -----------------------------------------

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        """Exact value at a rational point of matching length."""
        values = tuple(as_rational(v) for v in point)
        if len(values) != self.arity:
            raise ValueError(f"point has length {len(values)}, expected arity {self.arity}")
        total = _ZERO
        for alpha, coeff in self._terms.items():
            term = coeff
            for value, exp in zip(values, alpha):
                if exp:
                    term *= value**exp
            total += term
        return total

    def substitute(self, args: Sequence[Polynomial]) -> Polynomial:
        """Compose: the polynomial P(args[0], ..., args[n-1]).

        All argument polynomials must share one arity m; the result is m-ary.
        """
        arguments = tuple(args)
        if len(arguments) != self.arity:
            raise ValueError(f"expected {self.arity} argument polynomials, got {len(arguments)}")
        out_arity = arguments[0].arity
        for arg in arguments:
            if arg.arity != out_arity:
                raise ValueError(f"argument arity mismatch: {arg.arity} vs {out_arity}")
        # Cache powers of each argument up to the largest exponent it receives.
        max_exp = [0] * self.arity
        for alpha in self._terms:
            for i, e in enumerate(alpha):
                if e > max_exp[i]:
                    max_exp[i] = e
        one = Polynomial.constant(out_arity, 1)
        powers: list[list[Polynomial]] = []
        for arg, top in zip(arguments, max_exp):
            cache = [one]
            for _ in range(top):
                cache.append(cache[-1].mul(arg))
            powers.append(cache)
        acc: dict[MultiIndex, Fraction] = {}
        for alpha, coeff in self._terms.items():
            prod: Polynomial | None = None
            for i, e in enumerate(alpha):
                if e:
                    prod = powers[i][e] if prod is None else prod.mul(powers[i][e])
            if prod is None:
                key = (0,) * out_arity
                acc[key] = acc.get(key, _ZERO) + coeff
            else:
                for mono, c in prod._terms.items():
                    acc[mono] = acc.get(mono, _ZERO) + coeff * c
        return Polynomial(out_arity, acc)

    def partial_derivative(self, index: int) -> Polynomial:
        """Formal partial derivative with respect to x_index (1-based)."""
        if not 1 <= index <= self.arity:
            raise ValueError(f"variable index {index} out of range 1..{self.arity}")
        pos = index - 1
        out: dict[MultiIndex, Fraction] = {}
        for alpha, coeff in self._terms.items():
            e = alpha[pos]
            if e:
                key = alpha[:pos] + (e - 1,) + alpha[pos + 1 :]
                out[key] = out.get(key, _ZERO) + coeff * e
        return Polynomial(self.arity, out)

    # -- operators and comparisons ------------------------------------------

    def __add__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.add(other)

    def __sub__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.sub(other)

    def __neg__(self) -> Polynomial:
        return self.neg()

    def __mul__(self, other: Polynomial | Scalar) -> Polynomial:
        if isinstance(other, Polynomial):
            return self.mul(other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: Scalar) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> Polynomial:
        return self.pow(exponent)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.arity == other.arity and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self._terms.items())))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        body = ", ".join(f"{alpha}: {c}" for alpha, c in sorted(self._terms.items(), reverse=True))
        return f"Polynomial({self.arity}, {{{body}}})"
