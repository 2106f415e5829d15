"""Puiseux series in descending powers of x over an ordered coefficient field.

A series is a finite map exponent -> coefficient plus an optional truncation
order ``trunc``: terms with exponent >= ``trunc`` are known exactly, anything
strictly below it is unknown. ``trunc is None`` marks an exact (finitely
supported) series. x is infinitely large, so the sign of a series is the sign
of its largest-exponent coefficient.

The coefficient field is ``QQ`` or a ``NumberField`` (see
:mod:`weakarith.numberfield`); real algebraic coefficients are carried as
elements of Q(lambda) with the field's isolating interval as certificate.
"""

from __future__ import annotations

import ast
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .numberfield import QQ
from .textforms import ParseError, _parse as _parse_expr, _rational_node, parse_rational, parse_series_pairs

__all__ = [
    "PuiseuxSeries",
    "SeriesPoly",
    "ps_arith",
    "ps_sign",
    "UNKNOWN",
    "newton_polygon",
    "newton_puiseux",
    "expand_roots",
    "RootExpansion",
    "plug_back_ok",
    "ps_floor",
    "FloorReport",
    "InsufficientTruncation",
    "format_series_pairs",
    "parse_series",
    "parse_series_poly",
]

UNKNOWN = "unknown"
SIGN_NAMES = {-1: "negative", 0: "zero", 1: "positive", UNKNOWN: UNKNOWN}


class InsufficientTruncation(ValueError):
    """The known terms do not determine the requested quantity."""


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _max_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def _top(s: "PuiseuxSeries") -> Fraction:
    return s.leading_exponent if s.terms else s.trunc


class PuiseuxSeries:
    __slots__ = ("field", "terms", "trunc")

    def __init__(self, terms=None, trunc=None, field=QQ):
        self.field = field
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                e = Fraction(e)
                c = field.coerce(c)
                if trunc is not None and e < trunc:
                    continue
                if e in clean:
                    c = clean[e] + c
                if c == 0:
                    clean.pop(e, None)
                else:
                    clean[e] = c
        self.terms = clean
        self.trunc = None if trunc is None else Fraction(trunc)

    # -- constructors --------------------------------------------------
    @classmethod
    def constant(cls, c, field=QQ) -> "PuiseuxSeries":
        return cls({0: c}, field=field)

    @classmethod
    def monomial(cls, coeff, exponent, field=QQ) -> "PuiseuxSeries":
        return cls({exponent: coeff}, field=field)

    @classmethod
    def x(cls, field=QQ) -> "PuiseuxSeries":
        return cls({1: 1}, field=field)

    @classmethod
    def zero(cls, field=QQ) -> "PuiseuxSeries":
        return cls({}, field=field)

    # -- queries -------------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.trunc is None

    @property
    def ramification(self) -> int:
        r = 1
        for e in self.terms:
            r = _lcm(r, e.denominator)
        if self.trunc is not None:
            r = _lcm(r, self.trunc.denominator)
        return r

    def is_zero(self) -> bool:
        """Exact zero only; a truncated series with no known terms is not known to vanish."""
        return not self.terms and self.trunc is None

    @property
    def leading_exponent(self):
        return max(self.terms) if self.terms else None

    @property
    def leading_coeff(self):
        return self.terms[max(self.terms)] if self.terms else None

    @property
    def min_exponent(self):
        return min(self.terms) if self.terms else None

    def coeff(self, exponent):
        return self.terms.get(Fraction(exponent), self.field.zero)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def truncate(self, order) -> "PuiseuxSeries":
        order = Fraction(order)
        return PuiseuxSeries(self.terms, _max_trunc(self.trunc, order), self.field)

    def part_above(self, exponent, inclusive=False) -> "PuiseuxSeries":
        if inclusive:
            return PuiseuxSeries({e: c for e, c in self.terms.items() if e >= exponent}, None, self.field)
        return PuiseuxSeries({e: c for e, c in self.terms.items() if e > exponent}, None, self.field)

    # -- arithmetic ----------------------------------------------------
    def _lift(self, other) -> "PuiseuxSeries":
        if isinstance(other, PuiseuxSeries):
            return other
        return PuiseuxSeries.constant(other, self.field)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return PuiseuxSeries(out, _max_trunc(self.trunc, other.trunc), self.field)

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries({e: -c for e, c in self.terms.items()}, self.trunc, self.field)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, PuiseuxSeries):
            c = self.field.coerce(other)
            if c == 0 and self.trunc is None:
                return PuiseuxSeries.zero(self.field)
            return PuiseuxSeries({e: v * c for e, v in self.terms.items()}, self.trunc, self.field)
        if self.is_zero() or other.is_zero():
            return PuiseuxSeries.zero(self.field)
        out: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = ea + eb
                v = ca * cb
                out[e] = out[e] + v if e in out else v
        # a = A + (unknown below t_a): the product is unknown below top(a) + t_b and t_a + top(b)
        trunc = None
        if other.trunc is not None:
            trunc = _max_trunc(trunc, _top(self) + other.trunc)
        if self.trunc is not None:
            trunc = _max_trunc(trunc, self.trunc + _top(other))
        return PuiseuxSeries(out, trunc, self.field)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = PuiseuxSeries.constant(1, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exponent) -> "PuiseuxSeries":
        """Multiply by x^exponent."""
        exponent = Fraction(exponent)
        trunc = None if self.trunc is None else self.trunc + exponent
        return PuiseuxSeries({e + exponent: c for e, c in self.terms.items()}, trunc, self.field)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PuiseuxSeries):
            try:
                other = self._lift(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.terms == other.terms and self.trunc == other.trunc

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.trunc))

    def sign(self):
        return ps_sign(self)

    def __repr__(self) -> str:
        return f"PuiseuxSeries({self})"

    def __str__(self) -> str:
        if not self.terms:
            body = "0"
        else:
            body = ""
            for e, c in self.sorted_terms():
                mono = "" if e == 0 else ("x" if e == 1 else f"x^({e})")
                txt = self.field.format(c)
                neg = txt.startswith("-")
                if neg:
                    txt = txt[1:]
                if mono:
                    txt = mono if txt == "1" else f"{txt}*{mono}"
                if not body:
                    body = ("-" if neg else "") + txt
                else:
                    body += (" - " if neg else " + ") + txt
        if self.trunc is not None:
            body += f" + O(x^({self.trunc}))"
        return body

    # -- text form -----------------------------------------------------
    def to_pairs(self) -> list[list[str]]:
        return [[str(e), self.field.format(c)] for e, c in self.sorted_terms()]

    def to_json(self) -> dict:
        return {
            "terms": self.to_pairs(),
            "ramification": self.ramification,
            "truncation": "exact" if self.trunc is None else str(self.trunc),
        }


def ps_arith(a: PuiseuxSeries, b: PuiseuxSeries, op: str) -> PuiseuxSeries:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown series operation {op!r}")


def ps_sign(a: PuiseuxSeries):
    """-1, 0, 1, or ``UNKNOWN`` when no known term remains and the series is truncated."""
    if a.terms:
        return a.field.sign(a.leading_coeff)
    return 0 if a.trunc is None else UNKNOWN


def ps_compare(a: PuiseuxSeries, b: PuiseuxSeries):
    return ps_sign(a - b)


# ---------------------------------------------------------------------------
# polynomials in y with series coefficients


class SeriesPoly:
    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Sequence, field=None):
        field = field or next((c.field for c in coeffs if isinstance(c, PuiseuxSeries)), QQ)
        cs = [c if isinstance(c, PuiseuxSeries) else PuiseuxSeries.constant(c, field) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)
        self.field = field

    @classmethod
    def from_roots(cls, roots: Iterable[PuiseuxSeries], field=QQ) -> "SeriesPoly":
        p = cls([PuiseuxSeries.constant(1, field)], field)
        for r in roots:
            p = p * cls([-r, PuiseuxSeries.constant(1, field)], field)
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "SeriesPoly") -> "SeriesPoly":
        if not self.coeffs or not other.coeffs:
            return SeriesPoly([], self.field)
        out = [PuiseuxSeries.zero(self.field)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return SeriesPoly(out, self.field)

    def __call__(self, y) -> PuiseuxSeries:
        if not isinstance(y, PuiseuxSeries):
            y = PuiseuxSeries.constant(y, self.field)
        acc = PuiseuxSeries.zero(self.field)
        for c in reversed(self.coeffs):
            acc = acc * y + c
        return acc

    def taylor_shift(self, s: PuiseuxSeries) -> "SeriesPoly":
        """Coefficients of z -> f(s + z)."""
        cs = list(self.coeffs)
        n = len(cs)
        # repeated synthetic division by (z - s) in Horner form
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] = cs[j] + cs[j + 1] * s
        return SeriesPoly(cs, self.field)

    def drop_zero_roots(self) -> tuple[int, "SeriesPoly"]:
        m = 0
        while m < len(self.coeffs) and self.coeffs[m].is_zero():
            m += 1
        return m, SeriesPoly(self.coeffs[m:], self.field)

    def __str__(self) -> str:
        return " + ".join(f"({c})*y^{i}" for i, c in enumerate(self.coeffs))

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]


@dataclass(frozen=True)
class Edge:
    slope: Fraction  # exponent of the root's leading term
    points: tuple[tuple[int, Fraction], ...]  # (degree in y, leading exponent) on this edge
    balance: Fraction  # max_i (e_i + i*slope)

    def characteristic(self, f: SeriesPoly) -> list:
        i0 = self.points[0][0]
        length = self.points[-1][0] - i0
        coeffs = [f.field.zero] * (length + 1)
        for i, _e in self.points:
            coeffs[i - i0] = f.coeffs[i].leading_coeff
        return coeffs


def newton_polygon(f: SeriesPoly) -> list[Edge]:
    """Edges of the upper hull of {(i, lead exponent of c_i)}, in increasing slope order."""
    pts = [(i, c.leading_exponent) for i, c in enumerate(f.coeffs) if c.terms]
    if len(pts) < 2:
        return []
    hull: list[tuple[int, Fraction]] = []
    for p in pts:
        # keep the upper hull: drop points below the chord
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (p[0] - x1) <= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    edges = []
    for (i1, e1), (i2, e2) in zip(hull, hull[1:]):
        slope = -(e2 - e1) / (i2 - i1)
        balance = e1 + i1 * slope
        on = tuple((i, e) for i, e in pts if i1 <= i <= i2 and e + i * slope == balance)
        edges.append(Edge(slope, on, balance))
    edges.sort(key=lambda ed: ed.slope)
    return edges


@dataclass
class RootExpansion:
    series: PuiseuxSeries
    exact: bool
    last_exponent: Fraction | None
    balance: Fraction | None  # dominant order before the last term was fixed
    resolved: bool  # False when the branch still carried a repeated characteristic root


def _root_multiplicity(field, coeffs: list, c) -> int:
    from .exactmath import Poly

    p = Poly([field.coerce(v) for v in coeffs])
    lin = Poly([-c, field.one])
    m = 0
    while True:
        q, r = p.divmod(lin)
        if not r.is_zero():
            return m
        m += 1
        p = q


def _hidden_ok(f: SeriesPoly, slope: Fraction, balance: Fraction) -> bool:
    # unknown tails of truncated coefficients must stay strictly below the balance
    for i, c in enumerate(f.coeffs):
        if c.trunc is not None and c.trunc + i * slope >= balance:
            return False
    return True


def expand_roots(f: SeriesPoly, p: int, depth: int = 8) -> list[RootExpansion]:
    """Newton-Puiseux expansion of the real roots of ``f``, ``depth`` terms per branch."""
    if f.degree > p:
        raise ValueError(f"degree {f.degree} exceeds p = {p}")
    if f.degree < 1:
        return []
    if depth < 1:
        raise ValueError("depth must be positive")
    field = f.field
    out: list[RootExpansion] = []

    def walk(g: SeriesPoly, prefix: PuiseuxSeries, upper, steps: int, last_balance, mult: int):
        m, g = g.drop_zero_roots()
        if m:
            out.append(RootExpansion(prefix, True, upper, last_balance, True))
        if g.degree < 1:
            return
        if steps == 0:
            if any(upper is None or ed.slope < upper for ed in newton_polygon(g)):
                out.append(RootExpansion(prefix.truncate(upper), False, upper, last_balance, mult == 1))
            return
        for edge in newton_polygon(g):
            if upper is not None and edge.slope >= upper:
                continue
            if not _hidden_ok(g, edge.slope, edge.balance):
                if m == 0 and upper is not None:
                    out.append(RootExpansion(prefix.truncate(upper), False, upper, last_balance, False))
                return
            char = edge.characteristic(g)
            for c in field.roots(char):
                if c == 0:
                    continue
                term = PuiseuxSeries.monomial(c, edge.slope, field)
                k = _root_multiplicity(field, char, c)
                walk(g.taylor_shift(term), prefix + term, edge.slope, steps - 1, edge.balance, k)

    walk(f, PuiseuxSeries.zero(field), None, depth, None, 1)
    out.sort(key=_SeriesKey)
    return out


class _SeriesKey:
    __slots__ = ("s",)

    def __init__(self, r: RootExpansion):
        self.s = r.series.part_above(r.last_exponent, inclusive=True) if r.last_exponent is not None else r.series

    def __lt__(self, other):
        d = ps_sign(PuiseuxSeries(self.s.terms, None, self.s.field) - PuiseuxSeries(other.s.terms, None, other.s.field))
        return d == -1


def newton_puiseux(f: SeriesPoly, p: int, depth: int = 8) -> list[PuiseuxSeries]:
    """Real series roots of ``f`` (degree <= p), ascending; truncated ones carry ``trunc``.

    Branches whose characteristic equation has no root in the coefficient
    field are dropped: they carry no real root over that field.
    """
    return [r.series for r in expand_roots(f, p, depth)]


def plug_back_ok(f: SeriesPoly, root: RootExpansion) -> bool:
    """Residual check: f(root) vanishes, or its order is below the last balance."""
    exact_series = PuiseuxSeries(root.series.terms, None, root.series.field)
    residual = f(exact_series)
    if root.exact:
        return residual.is_zero() or (not f.coeffs or any(not c.is_exact for c in f.coeffs))
    if residual.is_zero():
        return True
    if root.balance is None:
        return False
    return residual.leading_exponent < root.balance


# ---------------------------------------------------------------------------
# integer parts


@dataclass(frozen=True)
class FloorReport:
    integer_part: PuiseuxSeries
    remainder: PuiseuxSeries
    remainder_sign: object
    remainder_minus_one_sign: object
    corrected: bool

    def to_json(self) -> dict:
        return {
            "integer_part": self.integer_part.to_pairs(),
            "remainder": self.remainder.to_pairs(),
            "remainder_truncation": "exact" if self.remainder.trunc is None else str(self.remainder.trunc),
            "remainder_sign": SIGN_NAMES[self.remainder_sign],
            "remainder_minus_one_sign": SIGN_NAMES[self.remainder_minus_one_sign],
            "corrected": self.corrected,
        }


def ps_floor(a: PuiseuxSeries) -> FloorReport:
    """Integer part b with 0 <= a - b < 1 in the ring of series with integer constant term."""
    if a.trunc is not None and a.trunc >= 0:
        raise InsufficientTruncation(f"constant term unknown: series truncated at x^({a.trunc})")
    field = a.field
    const = a.coeff(0)
    b = PuiseuxSeries({e: c for e, c in a.terms.items() if e > 0}, None, field)
    b = b + PuiseuxSeries.constant(field.floor(const), field)
    rem = a - b
    s = ps_sign(rem)
    if s == UNKNOWN:
        raise InsufficientTruncation("sign of the infinitesimal tail is unknown")
    corrected = False
    if s == -1:
        b = b - 1
        rem = a - b
        s = ps_sign(rem)
        corrected = True
    s1 = ps_sign(rem - 1)
    if s not in (0, 1) or s1 != -1:
        raise ArithmeticError(f"integer part certification failed for {a}")
    return FloorReport(b, rem, s, s1, corrected)


# ---------------------------------------------------------------------------
# text forms


def format_series_pairs(s: PuiseuxSeries) -> str:
    """``[(e, c), ...]`` in descending exponent order, the CLI's series notation."""
    return "[" + ", ".join(f"({e}, {s.field.format(c)})" for e, c in s.sorted_terms()) + "]"


def parse_series(text, field=QQ) -> PuiseuxSeries:
    """Read a pair list ``[(1/2, 1), (0, 1/2)]`` or an expression like ``x^(1/2) + 1/2``."""
    f = parse_series_poly(text, field)
    if f.degree > 0:
        raise ParseError(f"{text!r} mentions y; expected a series in x")
    return f.coeffs[0] if f.coeffs else PuiseuxSeries.zero(field)


def parse_series_poly(text, field=QQ) -> SeriesPoly:
    """Read a polynomial in y with series coefficients, e.g. ``y^2 - x`` or ``(y - x^(1/2))*(y + 3)``."""
    if isinstance(text, list) or (isinstance(text, str) and (text.lstrip().startswith("[(") or text.replace(" ", "") == "[]")):
        pairs = parse_series_pairs(text)
        return SeriesPoly([PuiseuxSeries({e: field.parse(str(c)) for e, c in pairs}, field=field)], field)
    node = _parse_expr(str(text))
    return _series_eval(node, field)


def _series_eval(node, field) -> SeriesPoly:
    def const(c):
        return SeriesPoly([PuiseuxSeries.constant(c, field)], field)

    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, str)):
            raise ParseError(f"unsupported literal {node.value!r}")
        return const(field.coerce(parse_rational(node.value)))
    if isinstance(node, ast.List):
        return const(field.parse(ast.unparse(node)))
    if isinstance(node, ast.Name):
        if node.id == "x":
            return SeriesPoly([PuiseuxSeries.x(field)], field)
        if node.id == "y":
            return SeriesPoly([PuiseuxSeries.zero(field), PuiseuxSeries.constant(1, field)], field)
        if node.id in ("lam", "l") and field is not QQ:
            return const(field.gen)
        raise ParseError(f"unknown name {node.id!r}")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _series_eval(node.operand, field)
        return SeriesPoly([-c for c in v.coeffs], field) if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        a = _series_eval(node.left, field)
        if isinstance(node.op, ast.Pow):
            e = _rational_node(node.right)
            mono = _as_x_power(a)
            if mono is not None:
                return SeriesPoly([PuiseuxSeries({mono * e: 1}, field=field)], field)
            if e.denominator != 1 or e < 0:
                raise ParseError("fractional or negative powers are only allowed on x")
            out = const(field.one)
            for _ in range(int(e)):
                out = out * a
            return out
        b = _series_eval(node.right, field)
        if isinstance(node.op, ast.Add):
            return _sp_add(a, b, field)
        if isinstance(node.op, ast.Sub):
            return _sp_add(a, SeriesPoly([-c for c in b.coeffs], field), field)
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            if b.degree != 0 or len(b.coeffs[0].terms) != 1:
                raise ParseError("division only by a nonzero monomial c*x^e")
            (e, c), = b.coeffs[0].terms.items()
            inv = PuiseuxSeries({-e: field.one / c}, field=field)
            return SeriesPoly([s * inv for s in a.coeffs], field)
    raise ParseError(f"unsupported expression: {ast.dump(node)}")


def _as_x_power(p: SeriesPoly):
    if p.degree != 0 or len(p.coeffs[0].terms) != 1:
        return None
    (e, c), = p.coeffs[0].terms.items()
    return e if c == 1 else None


def _sp_add(a: SeriesPoly, b: SeriesPoly, field) -> SeriesPoly:
    n = max(len(a.coeffs), len(b.coeffs))
    z = PuiseuxSeries.zero(field)
    ca = list(a.coeffs) + [z] * (n - len(a.coeffs))
    cb = list(b.coeffs) + [z] * (n - len(b.coeffs))
    return SeriesPoly([u + v for u, v in zip(ca, cb)], field)
