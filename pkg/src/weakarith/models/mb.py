"""The ring M = Z[r x; r in A<S>] and its multi-indeterminate variant.

Elements are polynomials over Q(lambda) with a rational-integer constant term;
in the localized mode every other coefficient must lie in A<S>, in the field
mode (used with several indeterminates) any coefficient of Q(lambda) is
allowed. Each indeterminate is infinitely large, later ones infinitely larger
than everything built from earlier ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..mpoly import MPoly, sign_of
from ..numberfield import FieldElement, NumberField, PrimeSet, is_prime, s_integrality_check
from ..textforms import format_poly, parse_poly

__all__ = ["MBConfig", "MBElement", "Rejection", "mb_admit", "mb_compare", "mb_arith"]

LOCALIZED = "localized"
FIELD = "field"


@dataclass(frozen=True)
class MBConfig:
    field: NumberField
    S: PrimeSet
    q: int | None = None
    indeterminates: int = 1
    coefficients: str = LOCALIZED

    def __post_init__(self):
        if self.indeterminates < 1:
            raise ValueError("need at least one indeterminate")
        if self.coefficients not in (LOCALIZED, FIELD):
            raise ValueError(f"coefficient ring must be {LOCALIZED!r} or {FIELD!r}")
        if self.coefficients == LOCALIZED and not len(self.S):
            raise ValueError("S must be nonempty")
        if self.q is not None:
            if not is_prime(self.q):
                raise ValueError(f"q = {self.q} is not prime")
            if self.q in self.S:
                raise ValueError(f"q = {self.q} must not lie in S")

    @property
    def normality_level(self) -> int:
        """n with [Q(lambda):Q] = n + 1."""
        return self.field.degree - 1

    @property
    def variables(self) -> list[str]:
        if self.indeterminates == 1:
            return ["x"]
        return [f"x{i + 1}" for i in range(self.indeterminates)]

    def parse(self, text: str) -> MPoly:
        return parse_poly(text, self.variables, self.field)

    def element(self, text_or_poly) -> "MBElement":
        """Admit or raise; convenience for trusted inputs."""
        res = mb_admit(text_or_poly, self)
        if isinstance(res, Rejection):
            raise ValueError(res.message)
        return res

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "S": self.S.to_json(),
            "q": self.q,
            "indeterminates": self.indeterminates,
            "coefficients": self.coefficients,
        }


class MBElement:
    __slots__ = ("poly", "config")

    def __init__(self, poly: MPoly, config: MBConfig):
        self.poly = poly
        self.config = config

    accepted = True

    def __add__(self, other):
        return mb_arith(self, other, "add")

    def __sub__(self, other):
        return mb_arith(self, other, "sub")

    def __mul__(self, other):
        return mb_arith(self, other, "mul")

    def __neg__(self):
        return MBElement(-self.poly, self.config)

    def __eq__(self, other):
        if isinstance(other, MBElement):
            return self.poly == other.poly
        return NotImplemented

    def __hash__(self):
        return hash(self.poly)

    def __str__(self):
        return format_poly(self.poly, self.config.variables)

    def __repr__(self):
        return f"MBElement({self})"

    def is_zero(self) -> bool:
        return self.poly.is_zero()


@dataclass(frozen=True)
class Rejection:
    reason: str
    monomial: tuple | None = None
    coefficient: object = None
    offending_prime: int | None = None

    accepted = False

    @property
    def message(self) -> str:
        return f"rejected: {self.reason}"

    def to_json(self) -> dict:
        out = {"reason": self.reason}
        if self.coefficient is not None:
            out["coefficient"] = str(self.coefficient)
        if self.monomial is not None:
            out["monomial"] = list(self.monomial)
        if self.offending_prime is not None:
            out["offending_prime"] = self.offending_prime
        return out


def _as_poly(raw, cfg: MBConfig) -> MPoly:
    if isinstance(raw, MBElement):
        return raw.poly
    if isinstance(raw, MPoly):
        return raw.map_coeffs(cfg.field.coerce)
    if isinstance(raw, str):
        return cfg.parse(raw)
    return MPoly.const(cfg.field.coerce(raw))


def mb_admit(raw, cfg: MBConfig):
    """Return an MBElement, or a Rejection naming the first violated coefficient."""
    poly = _as_poly(raw, cfg)
    if poly.nvars > cfg.indeterminates:
        return Rejection(f"uses {poly.nvars} indeterminates, model has {cfg.indeterminates}")
    const = poly.constant_term(cfg.field.zero)
    if not cfg.field.is_integer(const):
        return Rejection("constant coefficient is not a rational integer", (), const)
    if cfg.coefficients == LOCALIZED:
        for mono, c in poly.sorted_terms():
            if mono == ():
                continue
            chk = s_integrality_check(c, cfg.S)
            if not chk.member:
                return Rejection(
                    f"coefficient {c} is not in A<S> (denominator prime {chk.offending_prime})",
                    mono,
                    c,
                    chk.offending_prime,
                )
    return MBElement(poly, cfg)


def mb_compare(a: MBElement, b: MBElement) -> int:
    """-1, 0, 1 with every indeterminate infinitely large."""
    return sign_of((a.poly - b.poly), a.config.field.sign)


def mb_arith(a: MBElement, b, op: str) -> MBElement:
    cfg = a.config
    bp = b.poly if isinstance(b, MBElement) else _as_poly(b, cfg)
    if op == "add":
        poly = a.poly + bp
    elif op == "sub":
        poly = a.poly - bp
    elif op == "mul":
        poly = a.poly * bp
    else:
        raise ValueError(f"unknown operation {op!r}")
    return MBElement(poly, cfg)


def random_element(cfg: MBConfig, rng, degree: int = 3, height: int = 20, density: float = 0.7) -> MBElement:
    """Random admissible element with coordinate numerators and <S>-denominators bounded by ``height``."""
    denoms = [1] + cfg.S.monoid_up_to(height) if cfg.coefficients == LOCALIZED else list(range(1, height + 1))
    d = cfg.field.degree
    terms = {}
    for mono in _monomials(cfg.indeterminates, degree):
        if mono == ():
            terms[()] = cfg.field.coerce(rng.randint(-height, height))
            continue
        if rng.random() > density:
            continue
        coords = []
        for _ in range(d):
            coords.append(rng.randint(-height, height) / _frac(rng.choice(denoms)))
        terms[mono] = _basis_combination(cfg.field, coords)
    return MBElement(MPoly(terms), cfg)


def _frac(n):
    from fractions import Fraction

    return Fraction(n)


def _basis_combination(field: NumberField, integral_coords: Sequence) -> FieldElement:
    acc = field.zero
    for c, row in zip(integral_coords, field.integral_basis):
        acc = acc + field.element(row) * c
    return acc


def _monomials(nvars: int, degree: int):
    def rec(i, left):
        if i == nvars:
            yield ()
            return
        for e in range(left + 1):
            for rest in rec(i + 1, left - e):
                yield (e,) + rest

    seen = set()
    for m in rec(0, degree):
        m = tuple(m)
        while m and m[-1] == 0:
            m = m[:-1]
        if m not in seen:
            seen.add(m)
            yield m
