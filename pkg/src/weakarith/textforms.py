"""Canonical text forms for rationals, field elements, polynomials and series.

Parsing goes through :mod:`ast` so expressions like ``"(x1 + 1)/2"``,
``"[0, 1/3]*x^2 + 5"`` or ``"lam*x - 7"`` are read with Python's own grammar
(``^`` is accepted for powers). Field elements use power-basis brackets
``[c0, c1, ...]``; ``lam`` names the field generator.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from typing import Sequence

from .exactmath import to_rational
from .mpoly import MPoly

__all__ = [
    "ParseError",
    "parse_rational",
    "parse_field_element",
    "parse_poly",
    "format_coeff",
    "format_poly",
    "parse_series_pairs",
]


class ParseError(ValueError):
    pass


def _parse(text: str, mode: str = "eval") -> ast.AST:
    if not isinstance(text, str):
        raise ParseError(f"expected text, got {type(text).__name__}")
    try:
        return ast.parse(text.replace("^", "**"), mode=mode).body
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None


def _rational_node(node) -> Fraction:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Fraction(node.value)
    if isinstance(node, ast.Constant) and isinstance(node.value, str):
        return to_rational(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _rational_node(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        a, b = _rational_node(node.left), _rational_node(node.right)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            if b == 0:
                raise ParseError("zero denominator")
            return a / b
        if isinstance(node.op, ast.Pow) and b.denominator == 1:
            return a ** int(b)
    raise ParseError(f"not a rational literal: {ast.dump(node)}")


def parse_rational(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return to_rational(text)
    try:
        return to_rational(text)
    except (ValueError, TypeError):
        pass
    return _rational_node(_parse(str(text)))


def _field_const(field, node):
    if isinstance(node, ast.List):
        coords = [_rational_node(e) for e in node.elts]
        if getattr(field, "name", None) == "QQ":
            if len(coords) > 1 and any(coords[1:]):
                raise ParseError("field element given for a rational coefficient domain")
            return coords[0] if coords else Fraction(0)
        return field.element(coords)
    raise ParseError("not a field element")


def parse_field_element(field, text):
    node = _parse(text) if isinstance(text, str) else None
    if node is None:
        if isinstance(text, (list, tuple)):
            return field.element([parse_rational(c) for c in text]) if field.name != "QQ" else parse_rational(text[0])
        return field.coerce(text)
    poly = _eval_poly(node, field, {})
    if not poly.is_constant():
        raise ParseError(f"{text!r} is not a constant")
    return field.coerce(poly.constant_term(0))


def _eval_poly(node, field, names: dict) -> MPoly:
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, str)):
            raise ParseError(f"unsupported literal {node.value!r}")
        return MPoly.const(field.coerce(to_rational(node.value)))
    if isinstance(node, ast.List):
        return MPoly.const(field.coerce(_field_const(field, node)))
    if isinstance(node, ast.Name):
        if node.id in names:
            return MPoly.var(names[node.id], field.one)
        if node.id in ("lam", "lambda_", "l") and getattr(field, "name", "QQ") != "QQ":
            return MPoly.const(field.gen)
        raise ParseError(f"unknown name {node.id!r}")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_poly(node.operand, field, names)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        a = _eval_poly(node.left, field, names)
        if isinstance(node.op, ast.Pow):
            e = _rational_node(node.right)
            if e.denominator != 1 or e < 0:
                raise ParseError("exponents must be non-negative integers")
            return a ** int(e)
        b = _eval_poly(node.right, field, names)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            if not b.is_constant() or b.is_zero():
                raise ParseError("division only by nonzero constants")
            inv = field.one / b.constant_term()
            return a * inv
    raise ParseError(f"unsupported expression: {ast.dump(node)}")


def parse_poly(text: str, variables: Sequence[str], field) -> MPoly:
    """Parse a polynomial in the named variables with coefficients in ``field``."""
    names = {name: i for i, name in enumerate(variables)}
    return _eval_poly(_parse(str(text)), field, names)


def format_coeff(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    if isinstance(c, int):
        return str(c)
    return str(c)


def _is_rational_like(c) -> bool:
    return isinstance(c, (int, Fraction)) or (hasattr(c, "is_rational") and c.is_rational())


def _as_fraction(c) -> Fraction:
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    return c.rational_value()


def format_poly(poly: MPoly, variables: Sequence[str]) -> str:
    """Canonical text: terms in descending order, later variables dominating."""
    if poly.is_zero():
        return "0"
    pieces = []
    for mono, c in poly.sorted_terms():
        factors = []
        for i, e in enumerate(mono):
            if e == 1:
                factors.append(variables[i])
            elif e > 1:
                factors.append(f"{variables[i]}^{e}")
        mono_txt = "*".join(factors)
        if _is_rational_like(c):
            q = _as_fraction(c)
            sign = "-" if q < 0 else "+"
            q = abs(q)
            if mono_txt:
                body = mono_txt if q == 1 else f"{q}*{mono_txt}"
            else:
                body = str(q)
        else:
            sign = "+"
            body = f"{c}*{mono_txt}" if mono_txt else str(c)
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def parse_series_pairs(text) -> list[tuple[Fraction, object]]:
    """Read ``"[(1/2, 1), (0, 1/2)]"`` into (exponent, coefficient-node) pairs.

    Coefficients are returned as text so the caller can read them in its field.
    """
    if isinstance(text, list):
        return [(parse_rational(e), c) for e, c in text]
    node = _parse(str(text))
    if not isinstance(node, (ast.List, ast.Tuple)):
        raise ParseError("series literal must be a list of (exponent, coefficient) pairs")
    out = []
    for elt in node.elts:
        if not isinstance(elt, ast.Tuple) or len(elt.elts) != 2:
            raise ParseError("each series term must be a pair (exponent, coefficient)")
        exp = _rational_node(elt.elts[0])
        out.append((exp, ast.unparse(elt.elts[1])))
    return out
