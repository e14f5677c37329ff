"""Deciding bisymmetry of polynomial functions over the rationals.

A polynomial P of arity n is bisymmetric when

    P(P(row 1), ..., P(row n)) == P(P(column 1), ..., P(column n))

holds for every n-by-n argument matrix.  Three checkers are provided:

* ``check_symbolic`` expands the identity as a polynomial in the n^2 matrix
  entries and tests it for zero -- exact but exponential, guarded by a term
  ceiling.
* ``check_randomized`` samples integer matrices from a seeded generator;
  a rejection carries a checked counterexample matrix and is certain, an
  acceptance is wrong with probability at most deg/(2*bound+1) per trial.
* ``classify`` runs the structure test: a non-degenerate bisymmetric
  polynomial must be a shifted monomial a*prod((x_i + b)^alpha_i) - b whose
  shift b is pinned down by the two top homogeneous components.

All verdicts are computed over the rationals; whether the shifted-monomial
parameters stay integral over the integers is a separate check
(``integrality_check``).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import count, islice
from typing import Sequence, Union

from .analysis import essential_variables, homogeneous_component, taylor_shift
from .polyring import MultiIndex, Polynomial, Scalar, as_rational

_ZERO = Fraction(0)

# Default cap on the projected term count of the expanded identity; beyond it
# check_symbolic refuses instead of thrashing memory.
DEFAULT_TERM_CEILING = 5_000_000

DEFAULT_TRIALS = 16
DEFAULT_BOUND = 10**6


class ResourceLimitExceeded(RuntimeError):
    """The symbolic expansion would exceed the configured term ceiling."""


Matrix = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class Univariate:
    """Depends on at most one variable: its 1-based position and the
    one-variable polynomial P reduces to."""

    index: int
    body: Polynomial


@dataclass(frozen=True)
class Affine:
    """P = a0 + a1*x1 + ... + an*xn; coefficients stored as (a0, ..., an)."""

    coefficients: tuple[Fraction, ...]


@dataclass(frozen=True)
class ShiftedMonomial:
    """P = a * prod_i (x_i + b)^alpha_i - b."""

    a: Fraction
    b: Fraction
    alpha: MultiIndex


ClassLabel = Union[Univariate, Affine, ShiftedMonomial]


@dataclass(frozen=True)
class Bisymmetric:
    label: ClassLabel


@dataclass(frozen=True)
class NotBisymmetric:
    """Counterexample: an n-by-n matrix where the two composed evaluations differ."""

    witness: Matrix
    lhs: Fraction
    rhs: Fraction


Verdict = Union[Bisymmetric, NotBisymmetric]


@dataclass(frozen=True)
class ClassIIISpec:
    """Parameters (a, b, alpha) of a shifted monomial; a must be nonzero."""

    a: Fraction
    b: Fraction
    alpha: MultiIndex

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", as_rational(self.a))
        object.__setattr__(self, "b", as_rational(self.b))
        object.__setattr__(self, "alpha", tuple(self.alpha))
        if not self.a:
            raise ValueError("a = 0 is rejected: the leading coefficient must be nonzero")
        if not self.alpha or any(not isinstance(e, int) or e < 0 for e in self.alpha):
            raise ValueError(f"alpha must be a nonempty tuple of nonnegative ints, got {self.alpha}")
        if sum(self.alpha) < 1:
            raise ValueError("alpha must have total degree at least 1")


@dataclass(frozen=True)
class RandomizedConfig:
    """Sampling parameters: entries are drawn uniformly from [-bound, bound]."""

    trials: int = DEFAULT_TRIALS
    bound: int = DEFAULT_BOUND
    seed: int = 0

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.bound < 1:
            raise ValueError("bound must be >= 1")


# -- the expanded identity ----------------------------------------------------


def matrix_entry_position(n: int, i: int, j: int) -> int:
    """1-based variable position of matrix entry (i, j) in row-major order."""
    return (i - 1) * n + j


def bisymmetry_difference(poly: Polynomial) -> Polynomial:
    """P(P(rows)) - P(P(columns)) as a polynomial in the n^2 matrix entries.

    Identically zero iff P is bisymmetric.  Entry (i, j) of the matrix is
    variable number (i-1)*n + j of the result.
    """
    n = poly.arity
    m = n * n
    entry = [
        [Polynomial.variable(m, matrix_entry_position(n, i, j)) for j in range(1, n + 1)]
        for i in range(1, n + 1)
    ]
    row_values = [poly.substitute(entry[i]) for i in range(n)]
    col_values = [poly.substitute([entry[i][j] for i in range(n)]) for j in range(n)]
    lhs = poly.substitute(row_values)
    rhs = poly.substitute(col_values)
    return lhs.sub(rhs)


def bisymmetry_sides(poly: Polynomial, matrix: Sequence[Sequence[Scalar]]) -> tuple[Fraction, Fraction]:
    """Evaluate (P(P(rows)), P(P(columns))) at a concrete n-by-n matrix."""
    n = poly.arity
    rows = [tuple(row) for row in matrix]
    if len(rows) != n or any(len(row) != n for row in rows):
        raise ValueError(f"expected an {n}x{n} matrix")
    row_values = [poly.evaluate(row) for row in rows]
    col_values = [poly.evaluate([rows[i][j] for i in range(n)]) for j in range(n)]
    return poly.evaluate(row_values), poly.evaluate(col_values)


# -- the fast structure test --------------------------------------------------


def _univariate_body(poly: Polynomial, index: int) -> Polynomial:
    pos = index - 1
    terms: dict[tuple[int, ...], Fraction] = {}
    for alpha, coeff in poly.terms.items():
        key = (alpha[pos],)
        terms[key] = terms.get(key, _ZERO) + coeff
    return Polynomial(1, terms)


def _affine_label(poly: Polynomial) -> Affine:
    n = poly.arity
    coeffs = [poly.constant_term()]
    for i in range(n):
        unit = tuple(1 if k == i else 0 for k in range(n))
        coeffs.append(poly.coefficient(unit))
    return Affine(tuple(coeffs))


def _classification_label(poly: Polynomial) -> ClassLabel | None:
    """The class of a bisymmetric polynomial, or None when P is not bisymmetric.

    Deterministic and random-free.  Order of the overlapping classes: constants
    (including the zero polynomial) report as affine, then univariate, then
    affine of degree 1, then shifted monomial.
    """
    n = poly.arity
    p = poly.degree()
    if p is None or p == 0:
        return Affine((poly.constant_term(),) + (_ZERO,) * n)
    essential = essential_variables(poly)
    if len(essential) == 1:
        index = min(essential)
        return Univariate(index, _univariate_body(poly, index))
    if p <= 1:
        return _affine_label(poly)
    # Degree >= 2 with >= 2 essential variables: the top component must be a
    # monomial c*x^gamma and the shift is b = P_{p-1}(1) / (p * P_p(1)).
    top = homogeneous_component(poly, p)
    mono = top.as_monomial()
    if mono is None:
        return None
    gamma, c = mono
    ones = (Fraction(1),) * n
    b = homogeneous_component(poly, p - 1).evaluate(ones) / (p * top.evaluate(ones))
    recentred = taylor_shift(poly, (-b,) * n).add(Polynomial.constant(n, b))
    if recentred == top:
        return ShiftedMonomial(c, b, gamma)
    return None


def classify(poly: Polynomial) -> Verdict:
    """Deterministic classification via the structure test.

    Rejections carry a counterexample matrix, found by cheap sampling first
    and by deterministic specialization of the expanded identity if sampling
    misses.
    """
    label = _classification_label(poly)
    if label is not None:
        return Bisymmetric(label)
    matrix = _random_witness(poly, RandomizedConfig())
    if matrix is None:
        matrix = _symbolic_witness(poly)
    lhs, rhs = bisymmetry_sides(poly, matrix)
    return NotBisymmetric(matrix, lhs, rhs)


# -- exact and randomized checkers ---------------------------------------------


def projected_term_count(poly: Polynomial) -> int:
    """Upper bound on terms held while expanding the identity.

    Every intermediate lives in n^2 variables with total degree at most p^2,
    so the monomial count of that space bounds the stored terms.
    """
    p = poly.degree() or 0
    m = poly.arity * poly.arity
    return math.comb(p * p + m, m)


def check_symbolic(poly: Polynomial, *, term_ceiling: int = DEFAULT_TERM_CEILING) -> Verdict:
    """Expand the identity and test it for zero; exact at desk scale.

    Raises ResourceLimitExceeded instead of attempting a composition whose
    projected term count exceeds the ceiling.
    """
    projected = projected_term_count(poly)
    if projected > term_ceiling:
        raise ResourceLimitExceeded(
            f"projected term count {projected} exceeds ceiling {term_ceiling}"
        )
    difference = bisymmetry_difference(poly)
    if difference.is_zero():
        label = _classification_label(poly)
        assert label is not None, "identity holds but the structure test rejected"
        return Bisymmetric(label)
    matrix = _witness_from_difference(difference, poly.arity)
    lhs, rhs = bisymmetry_sides(poly, matrix)
    return NotBisymmetric(matrix, lhs, rhs)


def check_randomized(poly: Polynomial, config: RandomizedConfig | None = None) -> Verdict:
    """One-sided randomized test; deterministic for a fixed seed.

    A NotBisymmetric verdict carries a re-checked witness and is certain.  An
    accepting run is labeled by the structure test; the per-trial false-accept
    probability is at most deg(difference)/(2*bound+1).
    """
    cfg = config or RandomizedConfig()
    matrix = _random_witness(poly, cfg)
    if matrix is not None:
        lhs, rhs = bisymmetry_sides(poly, matrix)
        return NotBisymmetric(matrix, lhs, rhs)
    label = _classification_label(poly)
    if label is not None:
        return Bisymmetric(label)
    # Sampling missed a nonzero difference (possible only with tiny bounds);
    # fall back to deterministic extraction so the verdict stays sound.
    matrix = _symbolic_witness(poly)
    lhs, rhs = bisymmetry_sides(poly, matrix)
    return NotBisymmetric(matrix, lhs, rhs)


def _random_witness(poly: Polynomial, cfg: RandomizedConfig) -> Matrix | None:
    """First sampled matrix (in trial order) where the two sides differ."""
    rng = random.Random(cfg.seed)
    n = poly.arity
    for _ in range(cfg.trials):
        matrix: Matrix = tuple(
            tuple(Fraction(rng.randint(-cfg.bound, cfg.bound)) for _ in range(n))
            for _ in range(n)
        )
        lhs, rhs = bisymmetry_sides(poly, matrix)
        if lhs != rhs:
            return matrix
    return None


def _symbolic_witness(poly: Polynomial) -> Matrix:
    difference = bisymmetry_difference(poly)
    assert not difference.is_zero()
    return _witness_from_difference(difference, poly.arity)


def _integer_candidates():
    """0, 1, -1, 2, -2, ..."""
    yield 0
    for k in count(1):
        yield k
        yield -k


def _fix_variable(poly: Polynomial, index: int, value: Fraction) -> Polynomial:
    """Partially evaluate: substitute a constant for one variable, same arity."""
    pos = index - 1
    out: dict[tuple[int, ...], Fraction] = {}
    for alpha, coeff in poly.terms.items():
        c = coeff * value ** alpha[pos] if alpha[pos] else coeff
        key = alpha[:pos] + (0,) + alpha[pos + 1 :]
        out[key] = out.get(key, _ZERO) + c
    return Polynomial(poly.arity, out)


def _witness_from_difference(difference: Polynomial, n: int) -> Matrix:
    """Deterministic counterexample from a nonzero expanded identity.

    Specialize one matrix entry at a time with the first value from
    0, 1, -1, 2, -2, ... that keeps the remaining polynomial nonzero; a
    nonzero polynomial of degree d in one variable survives one of any d+1
    distinct values, so this terminates.
    """
    current = difference
    assignment: list[Fraction] = []
    for position in range(1, difference.arity + 1):
        var_degree = max((alpha[position - 1] for alpha in current.terms), default=0)
        for candidate in islice(_integer_candidates(), 2 * var_degree + 2):
            value = Fraction(candidate)
            specialized = _fix_variable(current, position, value)
            if not specialized.is_zero():
                current = specialized
                assignment.append(value)
                break
        else:
            raise AssertionError("specialization exhausted candidates on a nonzero polynomial")
    return tuple(tuple(assignment[(i - 1) * n + j - 1] for j in range(1, n + 1)) for i in range(1, n + 1))


# -- shifted-monomial construction and integrality ------------------------------


def construct_class_iii(spec: ClassIIISpec) -> Polynomial:
    """Expand a * prod_i (x_i + b)^alpha_i - b into canonical form."""
    n = len(spec.alpha)
    out = Polynomial.constant(n, spec.a)
    for i, exp in enumerate(spec.alpha, start=1):
        if exp:
            base = Polynomial.variable(n, i).add(Polynomial.constant(n, spec.b))
            out = out.mul(base.pow(exp))
    return out.sub(Polynomial.constant(n, spec.b))


def integrality_check(spec: ClassIIISpec) -> bool:
    """Whether the shifted monomial restricts to integer coefficients.

    Requires integer a; checks a*b^k for k = 1..|alpha|-1 and a*b^|alpha| - b.
    """
    if spec.a.denominator != 1:
        raise ValueError(f"integrality check needs an integer leading coefficient, got a={spec.a}")
    total = sum(spec.alpha)
    b = spec.b
    for k in range(1, total):
        if (spec.a * b**k).denominator != 1:
            return False
    return (spec.a * b**total - b).denominator == 1
