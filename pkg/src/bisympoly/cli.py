"""Command-line front end: expression parsing, formatting, and reports.

Grammar (whitespace insignificant, no implicit multiplication):

    expr     := term (('+'|'-') term)*
    term     := ('-')? factor ('*' factor)*
    factor   := base ('^' natural)?
    base     := rational | variable | '(' expr ')'
    rational := integer ('/' positive-integer)?
    variable := 'x' positive-integer

Rationals in every output are exact "p/q" or "p" strings, never floats.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .analysis import conjugate_translate, decompose, identify
from .bisymmetry import (
    Affine,
    Bisymmetric,
    ClassIIISpec,
    NotBisymmetric,
    RandomizedConfig,
    ResourceLimitExceeded,
    ShiftedMonomial,
    Univariate,
    Verdict,
    check_randomized,
    check_symbolic,
    classify,
    construct_class_iii,
    integrality_check,
    projected_term_count,
    DEFAULT_BOUND,
    DEFAULT_TERM_CEILING,
    DEFAULT_TRIALS,
)
from .polyring import Polynomial, as_rational

# Literal exponents beyond this are refused outright; expanding them could not
# end well anyway.
MAX_EXPONENT = 10**6


class ParseError(ValueError):
    """Syntax or validation error in a polynomial expression, with position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (column {position + 1})")
        self.position = position


# -- expression AST -------------------------------------------------------------


@dataclass(frozen=True)
class RationalLiteral:
    value: Fraction


@dataclass(frozen=True)
class Variable:
    index: int


@dataclass(frozen=True)
class Add:
    left: "ExpressionAST"
    right: "ExpressionAST"


@dataclass(frozen=True)
class Sub:
    left: "ExpressionAST"
    right: "ExpressionAST"


@dataclass(frozen=True)
class Neg:
    operand: "ExpressionAST"


@dataclass(frozen=True)
class Mul:
    left: "ExpressionAST"
    right: "ExpressionAST"


@dataclass(frozen=True)
class Pow:
    base: "ExpressionAST"
    exponent: int


ExpressionAST = Union[RationalLiteral, Variable, Add, Sub, Neg, Mul, Pow]


@dataclass(frozen=True)
class _Token:
    kind: str  # "int" | "var" | "op" | "end"
    text: str
    position: int
    value: int = 0


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    length = len(text)
    while i < length:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/^()":
            tokens.append(_Token("op", ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < length and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], i, int(text[i:j])))
            i = j
            continue
        if ch == "x":
            j = i + 1
            while j < length and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError("expected a variable index after 'x'", i)
            index = int(text[i + 1 : j])
            if index < 1:
                raise ParseError("variable index must be a positive integer", i)
            tokens.append(_Token("var", text[i:j], i, index))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", "", length))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], arity: int):
        self.tokens = tokens
        self.arity = arity
        self.cursor = 0

    def peek(self) -> _Token:
        return self.tokens[self.cursor]

    def advance(self) -> _Token:
        token = self.tokens[self.cursor]
        self.cursor += 1
        return token

    def accept_op(self, *symbols: str) -> _Token | None:
        token = self.peek()
        if token.kind == "op" and token.text in symbols:
            return self.advance()
        return None

    def parse_expression(self) -> ExpressionAST:
        node = self.parse_term()
        while True:
            op = self.accept_op("+", "-")
            if op is None:
                return node
            right = self.parse_term()
            node = Add(node, right) if op.text == "+" else Sub(node, right)

    def parse_term(self) -> ExpressionAST:
        negated = self.accept_op("-") is not None
        node = self.parse_factor()
        while self.accept_op("*") is not None:
            node = Mul(node, self.parse_factor())
        return Neg(node) if negated else node

    def parse_factor(self) -> ExpressionAST:
        base = self.parse_base()
        if self.accept_op("^") is not None:
            token = self.peek()
            if token.kind != "int":
                raise ParseError("exponent must be a natural number", token.position)
            self.advance()
            if token.value > MAX_EXPONENT:
                raise ParseError(f"exponent overflow: {token.value} > {MAX_EXPONENT}", token.position)
            return Pow(base, token.value)
        return base

    def parse_base(self) -> ExpressionAST:
        token = self.peek()
        if token.kind == "int":
            self.advance()
            if self.accept_op("/") is not None:
                denom = self.peek()
                if denom.kind != "int" or denom.value < 1:
                    raise ParseError("denominator must be a positive integer", denom.position)
                self.advance()
                return RationalLiteral(Fraction(token.value, denom.value))
            return RationalLiteral(Fraction(token.value))
        if token.kind == "var":
            self.advance()
            if token.value > self.arity:
                raise ParseError(
                    f"variable x{token.value} exceeds declared arity {self.arity}", token.position
                )
            return Variable(token.value)
        if token.kind == "op" and token.text == "(":
            self.advance()
            node = self.parse_expression()
            closing = self.peek()
            if not (closing.kind == "op" and closing.text == ")"):
                raise ParseError("expected ')'", closing.position)
            self.advance()
            return node
        raise ParseError("expected a rational, a variable, or '('", token.position)


def _to_polynomial(node: ExpressionAST, arity: int) -> Polynomial:
    if isinstance(node, RationalLiteral):
        return Polynomial.constant(arity, node.value)
    if isinstance(node, Variable):
        return Polynomial.variable(arity, node.index)
    if isinstance(node, Add):
        return _to_polynomial(node.left, arity).add(_to_polynomial(node.right, arity))
    if isinstance(node, Sub):
        return _to_polynomial(node.left, arity).sub(_to_polynomial(node.right, arity))
    if isinstance(node, Neg):
        return _to_polynomial(node.operand, arity).neg()
    if isinstance(node, Mul):
        return _to_polynomial(node.left, arity).mul(_to_polynomial(node.right, arity))
    if isinstance(node, Pow):
        return _to_polynomial(node.base, arity).pow(node.exponent)
    raise TypeError(f"unknown AST node {node!r}")


def parse_ast(text: str, arity: int) -> ExpressionAST:
    """Parse an expression to its syntax tree without expanding it."""
    parser = _Parser(_tokenize(text), arity)
    node = parser.parse_expression()
    trailing = parser.peek()
    if trailing.kind != "end":
        raise ParseError(f"unexpected trailing input {trailing.text!r}", trailing.position)
    return node


def parse(text: str, arity: int) -> Polynomial:
    """Parse an expression into a canonical polynomial of the given arity."""
    if not isinstance(arity, int) or arity < 1:
        raise ValueError(f"arity must be a positive integer, got {arity!r}")
    return _to_polynomial(parse_ast(text, arity), arity)


# -- formatting ------------------------------------------------------------------


def format_polynomial(poly: Polynomial) -> str:
    """Deterministic rendering: descending lexicographic order of exponents."""
    if poly.is_zero():
        return "0"
    pieces: list[str] = []
    for alpha in sorted(poly.terms, reverse=True):
        coeff = poly.terms[alpha]
        variables = "*".join(
            f"x{i}^{e}" if e > 1 else f"x{i}" for i, e in enumerate(alpha, start=1) if e
        )
        magnitude = abs(coeff)
        if variables:
            body = variables if magnitude == 1 else f"{magnitude}*{variables}"
        else:
            body = str(magnitude)
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(pieces)


# -- reports ---------------------------------------------------------------------


def _label_payload(label: Univariate | Affine | ShiftedMonomial) -> dict:
    if isinstance(label, Univariate):
        return {
            "kind": "univariate",
            "index": label.index,
            "body": format_polynomial(label.body),
        }
    if isinstance(label, Affine):
        return {"kind": "affine", "coefficients": [str(c) for c in label.coefficients]}
    return {
        "kind": "shifted_monomial",
        "a": str(label.a),
        "b": str(label.b),
        "alpha": list(label.alpha),
    }


def build_report(verdict: Verdict, method: str, seed: int | None, elapsed_ms: float) -> dict:
    """The structured output document; field names and order are fixed."""
    if isinstance(verdict, Bisymmetric):
        return {
            "verdict": "bisymmetric",
            "class": _label_payload(verdict.label),
            "witness": None,
            "method": method,
            "seed": seed,
            "elapsed_ms": elapsed_ms,
        }
    return {
        "verdict": "not_bisymmetric",
        "class": None,
        "witness": [[str(v) for v in row] for row in verdict.witness],
        "method": method,
        "seed": seed,
        "elapsed_ms": elapsed_ms,
    }


def _render_report_text(verdict: Verdict, method: str, seed: int | None, elapsed_ms: float) -> str:
    lines = []
    if isinstance(verdict, Bisymmetric):
        lines.append("verdict: bisymmetric")
        label = verdict.label
        if isinstance(label, Univariate):
            lines.append(f"class: univariate (variable x{label.index}, body: {format_polynomial(label.body)})")
        elif isinstance(label, Affine):
            coeffs = ", ".join(f"a{i}={c}" for i, c in enumerate(label.coefficients))
            lines.append(f"class: affine ({coeffs})")
        else:
            alpha = ",".join(str(e) for e in label.alpha)
            lines.append(f"class: shifted_monomial (a={label.a}, b={label.b}, alpha={alpha})")
    else:
        lines.append("verdict: not_bisymmetric")
        lines.append("witness:")
        for row in verdict.witness:
            lines.append("  " + " ".join(str(v) for v in row))
        lines.append(f"lhs: {verdict.lhs}")
        lines.append(f"rhs: {verdict.rhs}")
    lines.append(f"method: {method}")
    if seed is not None:
        lines.append(f"seed: {seed}")
    lines.append(f"elapsed_ms: {elapsed_ms}")
    return "\n".join(lines)


def _emit(args: argparse.Namespace, structured: dict, text: str) -> None:
    if args.output == "structured":
        print(json.dumps(structured))
    else:
        print(text)


# -- command handlers --------------------------------------------------------------


def _cmd_check(args: argparse.Namespace, method: str | None = None) -> int:
    poly = parse(args.expr, args.arity)
    method = method or args.method
    config = RandomizedConfig(trials=args.trials, bound=args.bound, seed=args.seed)
    start = time.perf_counter()
    if method == "classify":
        verdict = classify(poly)
    elif method == "symbolic":
        verdict = check_symbolic(poly, term_ceiling=args.term_ceiling)
    elif method == "randomized":
        verdict = check_randomized(poly, config)
    else:  # all: every applicable method must agree on the bisymmetric bit
        verdicts: dict[str, Verdict] = {
            "classify": classify(poly),
            "randomized": check_randomized(poly, config),
        }
        if projected_term_count(poly) <= args.term_ceiling:
            verdicts["symbolic"] = check_symbolic(poly, term_ceiling=args.term_ceiling)
        bits = {name: isinstance(v, Bisymmetric) for name, v in verdicts.items()}
        if len(set(bits.values())) > 1:
            detail = ", ".join(
                f"{name}={'bisymmetric' if bit else 'not_bisymmetric'}" for name, bit in bits.items()
            )
            print(f"error: cross-check disagreement: {detail}", file=sys.stderr)
            return 4
        verdict = verdicts["classify"]
    elapsed_ms = round((time.perf_counter() - start) * 1000.0, 3)
    seed = args.seed if method in ("randomized", "all") else None
    if (
        args.ring == "Z"
        and isinstance(verdict, Bisymmetric)
        and isinstance(verdict.label, ShiftedMonomial)
        and verdict.label.b.denominator != 1
    ):
        print(
            f"warning: declared over Z but the shift b = {verdict.label.b} is not an integer "
            "(the restriction to Z can still be bisymmetric)",
            file=sys.stderr,
        )
    _emit(
        args,
        build_report(verdict, method, seed, elapsed_ms),
        _render_report_text(verdict, method, seed, elapsed_ms),
    )
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    return _cmd_check(args, method="classify")


def _parse_alpha(text: str) -> tuple[int, ...]:
    try:
        alpha = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"--alpha expects a comma-separated list of integers, got {text!r}")
    return alpha


def _cmd_construct(args: argparse.Namespace) -> int:
    a = as_rational(args.a)
    b = as_rational(args.b)
    alpha = _parse_alpha(args.alpha)
    if args.ring == "Z" and a.denominator != 1:
        raise ValueError(f"ring Z requires an integer leading coefficient, got a={a}")
    spec = ClassIIISpec(a, b, alpha)
    poly = construct_class_iii(spec)
    integrality = integrality_check(spec) if args.ring == "Z" else None
    structured = {
        "polynomial": format_polynomial(poly),
        "degree": sum(alpha),
        "ring": args.ring,
        "integrality": integrality,
    }
    lines = [f"polynomial: {format_polynomial(poly)}", f"degree: {sum(alpha)}"]
    if integrality is not None:
        lines.append(f"integrality: {'true' if integrality else 'false'}")
    _emit(args, structured, "\n".join(lines))
    return 0


def _cmd_components(args: argparse.Namespace) -> int:
    poly = parse(args.expr, args.arity)
    decomposition = decompose(poly)
    ordered = sorted(decomposition.components.items(), reverse=True)
    structured = {
        "arity": poly.arity,
        "components": {str(k): format_polynomial(part) for k, part in ordered},
    }
    text = "\n".join(f"degree {k}: {format_polynomial(part)}" for k, part in ordered) or "0"
    _emit(args, structured, text)
    return 0


def _cmd_conjugate(args: argparse.Namespace) -> int:
    poly = parse(args.expr, args.arity)
    result = conjugate_translate(poly, as_rational(args.b))
    _emit(args, {"polynomial": format_polynomial(result)}, format_polynomial(result))
    return 0


def _cmd_identify(args: argparse.Namespace) -> int:
    poly = parse(args.expr, args.arity)
    result = identify(poly, args.i, args.j)
    _emit(args, {"polynomial": format_polynomial(result)}, format_polynomial(result))
    return 0


# -- argument parsing ----------------------------------------------------------------


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _add_output_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", choices=("text", "structured"), default="text")


def _add_check_flags(parser: argparse.ArgumentParser, with_method: bool) -> None:
    parser.add_argument("--arity", type=_positive_int, required=True)
    if with_method:
        parser.add_argument(
            "--method", choices=("classify", "symbolic", "randomized", "all"), default="classify"
        )
    parser.add_argument("--trials", type=_positive_int, default=DEFAULT_TRIALS)
    parser.add_argument("--bound", type=_positive_int, default=DEFAULT_BOUND)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--ring", choices=("Z", "Q"), default="Q")
    parser.add_argument("--term-ceiling", type=_positive_int, default=DEFAULT_TERM_CEILING)
    _add_output_flag(parser)
    parser.add_argument("expr", help="polynomial expression, e.g. 'x1^2 + 2*x1*x2'")


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bisympoly",
        description="Decide bisymmetry (mediality) of polynomial functions with exact arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="decide bisymmetry of a polynomial expression")
    _add_check_flags(check, with_method=True)
    check.set_defaults(handler=_cmd_check)

    classify_cmd = sub.add_parser("classify", help="alias for check --method classify")
    _add_check_flags(classify_cmd, with_method=False)
    classify_cmd.set_defaults(handler=_cmd_classify)

    construct = sub.add_parser("construct", help="expand a shifted monomial from its parameters")
    construct.add_argument("--a", required=True, help="leading coefficient, e.g. 9")
    construct.add_argument("--b", required=True, help="shift, e.g. 1/3")
    construct.add_argument("--alpha", required=True, help="comma-separated exponents, e.g. 1,1,1")
    construct.add_argument("--ring", choices=("Z", "Q"), default="Q")
    _add_output_flag(construct)
    construct.set_defaults(handler=_cmd_construct)

    components = sub.add_parser("components", help="homogeneous components by degree")
    components.add_argument("--arity", type=_positive_int, required=True)
    _add_output_flag(components)
    components.add_argument("expr")
    components.set_defaults(handler=_cmd_components)

    conjugate = sub.add_parser("conjugate", help="conjugate by the translation x -> x + b")
    conjugate.add_argument("--arity", type=_positive_int, required=True)
    conjugate.add_argument("--b", required=True, help="translation amount, e.g. 1/3")
    _add_output_flag(conjugate)
    conjugate.add_argument("expr")
    conjugate.set_defaults(handler=_cmd_conjugate)

    identify_cmd = sub.add_parser("identify", help="identify variable j with variable i (i < j)")
    identify_cmd.add_argument("--arity", type=_positive_int, required=True)
    identify_cmd.add_argument("--i", type=_positive_int, required=True)
    identify_cmd.add_argument("--j", type=_positive_int, required=True)
    _add_output_flag(identify_cmd)
    identify_cmd.add_argument("expr")
    identify_cmd.set_defaults(handler=_cmd_identify)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
