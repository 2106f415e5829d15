"""Exact rational arithmetic, univariate polynomials, Sturm root isolation, CRT.

Rationals are :class:`fractions.Fraction` throughout; ``Fraction`` already keeps
numerator and denominator gcd-reduced with a positive denominator, which is the
canonical form every other module relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Rational",
    "to_rational",
    "Poly",
    "RatPoly",
    "poly_gcd",
    "poly_ext_gcd",
    "squarefree_part",
    "cauchy_bound",
    "sturm_chain",
    "sign_variations",
    "count_roots_in",
    "EndpointIsRoot",
    "IsolatingInterval",
    "isolate_roots",
    "refine_interval",
    "rational_roots",
    "ResiduePair",
    "CRTIncompatible",
    "crt_combine",
    "ext_gcd",
]

Rational = Fraction


def to_rational(value) -> Fraction:
    """Parse ``"a/b"``, decimal strings, ints and Fractions into a Fraction.

    Floats are rejected: every rational entering the library must be exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float {value!r}; write it as a string")
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise ValueError(f"zero denominator in {value!r}") from None
    raise TypeError(f"cannot read {value!r} as a rational")


def _is_zero(c) -> bool:
    return c == 0


class Poly:
    """Dense univariate polynomial over any exact field.

    ``coeffs[i]`` is the coefficient of ``t**i``. Coefficients only need
    ``+ - * /`` and comparison with ``0``; :class:`RatPoly` pins them to
    Fractions, number-field polynomials use ``FieldElement``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [self._coerce(c) for c in coeffs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def _coerce(c):
        return c

    def _new(self, coeffs) -> "Poly":
        return type(self)(coeffs)

    def _zero_coeff(self):
        # zero of the coefficient domain; int 0 mixes with Fraction and FieldElement
        return 0

    # -- basic queries -------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        if not self.coeffs:
            return self._zero_coeff()
        return self.coeffs[-1]

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self._zero_coeff()

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return len(self.coeffs) == len(other.coeffs) and all(
                a == b for a, b in zip(self.coeffs, other.coeffs)
            )
        if other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if _is_zero(c):
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if isinstance(c, (int, Fraction)):
                sign, mag = ("-" if c < 0 else "+"), abs(c)
                body = mono if mono and mag == 1 else (f"{mag}*{mono}" if mono else f"{mag}")
            else:
                sign, body = "+", (f"({c})*{mono}" if mono else f"({c})")
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        return out + "".join(f" {sg} {b}" for sg, b in parts[1:])

    # -- arithmetic ----------------------------------------------------
    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return self._new([other])

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return self._new([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return self._new([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self._new([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return self._new([])
        out = [self._zero_coeff()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return self._new(out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        result = self._new([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        acc = self._zero_coeff()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        acc = self._new([])
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lc
        if len(rem) - 1 < dq:
            return self._new([]), self
        quot = [self._zero_coeff()] * (len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] / lead
            quot[k] = c
            if _is_zero(c):
                continue
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * b
        return self._new(quot), self._new(rem[:dq])

    def __floordiv__(self, other):
        return self.divmod(self._lift(other))[0]

    def __mod__(self, other):
        return self.divmod(self._lift(other))[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def derivative(self) -> "Poly":
        return self._new([c * i for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.lc
        return self._new([c / lead for c in self.coeffs])


class RatPoly(Poly):
    """Polynomial with Fraction coefficients."""

    __slots__ = ()

    @staticmethod
    def _coerce(c):
        return to_rational(c)

    def _zero_coeff(self):
        return Fraction(0)

    @classmethod
    def from_roots(cls, roots) -> "RatPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-to_rational(r), 1])
        return p

    def primitive_integer(self) -> "RatPoly":
        """Scale to integer coefficients with content 1 and positive lead."""
        if self.is_zero():
            return self
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return RatPoly([Fraction(v, g) for v in ints])

    def sign_at(self, x) -> int:
        v = self(x)
        return (v > 0) - (v < 0)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm (zero only if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_ext_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (s, t, g) with s*a + t*b = g, g monic."""
    zero, one = a._new([]), a._new([1])
    old_r, r = a, b
    old_s, s = one, zero
    old_t, t = zero, one
    while not r.is_zero():
        q, rem = old_r.divmod(r)
        old_r, r = r, rem
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r.is_zero():
        return old_s, old_t, old_r
    lead = old_r.lc
    return old_s * (1 / lead), old_t * (1 / lead), old_r.monic()


def squarefree_part(p: Poly) -> Poly:
    if p.is_zero():
        raise ValueError("zero polynomial has no squarefree part")
    g = poly_gcd(p, p.derivative())
    return p.exact_div(g).monic()


def cauchy_bound(p: RatPoly) -> Fraction:
    """Strict bound: every complex root z satisfies |z| < 1 + max|c_i / c_lead|."""
    if p.degree < 1:
        return Fraction(1)
    lead = abs(p.lc)
    return 1 + max(abs(c) / lead for c in p.coeffs[:-1])


def sturm_chain(p: RatPoly) -> list[RatPoly]:
    """Sturm sequence p, p', -rem(...), ... stopping before the first zero remainder."""
    if p.is_zero():
        raise ValueError("Sturm chain of the zero polynomial")
    chain = [p]
    if p.degree < 1:
        return chain
    chain.append(p.derivative())
    while True:
        r = chain[-2] % chain[-1]
        if r.is_zero():
            return chain
        chain.append(-r)


def sign_variations(values: Sequence) -> int:
    signs = [(v > 0) - (v < 0) for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


class EndpointIsRoot(ValueError):
    """An interval endpoint is itself a root; callers nudge and retry."""

    def __init__(self, point):
        super().__init__(f"endpoint {point} is a root")
        self.point = point


def _count(chain, lo, hi) -> int:
    return sign_variations([q(lo) for q in chain]) - sign_variations([q(hi) for q in chain])


def count_roots_in(p: RatPoly, lo, hi) -> int:
    """Number of distinct real roots of ``p`` in the open interval (lo, hi)."""
    lo, hi = to_rational(lo), to_rational(hi)
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    sq = squarefree_part(p)
    for end in (lo, hi):
        if sq(end) == 0:
            raise EndpointIsRoot(end)
    return _count(sturm_chain(sq), lo, hi)


@dataclass(frozen=True)
class IsolatingInterval:
    """``polynomial`` has exactly one real root in (lo, hi] (a root at hi is allowed)."""

    lo: Fraction
    hi: Fraction
    polynomial: RatPoly

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"isolating interval needs lo < hi, got ({self.lo}, {self.hi})")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def root_is_hi(self) -> bool:
        return self.polynomial(self.hi) == 0

    def validate(self) -> bool:
        # Sturm counts roots in (lo, hi] as long as lo itself is not a root
        sq = squarefree_part(self.polynomial)
        if sq(self.lo) == 0:
            return False
        return _count(sturm_chain(sq), self.lo, self.hi) == 1

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi), "polynomial": [str(c) for c in self.polynomial.coeffs]}


def _nudge(point: Fraction, degree: int) -> Fraction:
    return Fraction(1, 2 * point.denominator * (1 + degree))


def isolate_roots(p: RatPoly) -> list[IsolatingInterval]:
    """Disjoint rational intervals, one per distinct real root, in increasing order."""
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    sq = squarefree_part(p)
    if sq.degree < 1:
        return []
    chain = sturm_chain(sq)
    bound = cauchy_bound(sq)
    out: list[IsolatingInterval] = []
    stack = [(-bound, bound, _count(chain, -bound, bound))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append(IsolatingInterval(lo, hi, sq))
            continue
        mid = (lo + hi) / 2
        step = _nudge(mid, sq.degree)
        while sq(mid) == 0:
            cand = mid + step
            while not lo < cand < hi:
                step /= 2
                cand = mid + step
            mid = cand
            step = _nudge(mid, sq.degree)
        left = _count(chain, lo, mid)
        stack.append((mid, hi, n - left))
        stack.append((lo, mid, left))
    out.sort(key=lambda iv: iv.lo)
    return out


def refine_interval(iv: IsolatingInterval, width_bound) -> IsolatingInterval:
    """Bisect until the width is at most ``width_bound``; endpoints stay rational."""
    width_bound = to_rational(width_bound)
    if width_bound <= 0:
        raise ValueError("width bound must be positive")
    if iv.width <= width_bound:
        return iv
    p = iv.polynomial
    lo, hi = iv.lo, iv.hi
    if p(hi) == 0:
        root = hi
    else:
        s_lo = _sgn(p(lo))
        root = None
        while hi - lo > width_bound:
            mid = (lo + hi) / 2
            v = p(mid)
            if v == 0:
                root = mid
                break
            if _sgn(v) == s_lo:
                lo = mid
            else:
                hi = mid
        if root is None:
            return IsolatingInterval(lo, hi, p)
    half = width_bound / 2
    return IsolatingInterval(max(iv.lo, root - half), min(iv.hi, root + half), p)


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


def rational_roots(p: RatPoly) -> list[Fraction]:
    """All rational roots of ``p`` in increasing order (distinct).

    A rational root a/b of the primitive integer form has b | lead, and any two
    such fractions are at least 1/lead^2 apart, so refining each isolating
    interval below 1/(2 lead^2) leaves exactly one candidate near its midpoint.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    prim = squarefree_part(p).primitive_integer()
    if prim.degree < 1:
        return []
    lead = int(prim.lc)
    found = []
    for iv in isolate_roots(prim):
        if prim(iv.hi) == 0:
            found.append(iv.hi)
            continue
        fine = refine_interval(iv, Fraction(1, 2 * lead * lead + 1))
        if prim(fine.hi) == 0:
            found.append(fine.hi)
            continue
        cand = ((fine.lo + fine.hi) / 2).limit_denominator(lead)
        if prim(cand) == 0:
            found.append(cand)
    return found


@dataclass(frozen=True)
class ResiduePair:
    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus <= 0:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        if not 0 <= self.residue < self.modulus:
            raise ValueError(f"residue {self.residue} not reduced mod {self.modulus}")

    @classmethod
    def of(cls, value: int, modulus: int) -> "ResiduePair":
        return cls(value % modulus, modulus)

    def __str__(self) -> str:
        return f"{self.residue} mod {self.modulus}"


class CRTIncompatible(ValueError):
    def __init__(self, first: ResiduePair, second: ResiduePair):
        super().__init__(f"incompatible congruences: {first} vs {second}")
        self.pair = (first, second)


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (s, t, g) with s*a + t*b = g = gcd(a, b) >= 0."""
    old_s, s = 1, 0
    old_t, t = 0, 1
    old_r, r = a, b
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_s, old_t, old_r


def crt_combine(pairs: Sequence[ResiduePair]) -> ResiduePair:
    """Combine congruences with possibly non-coprime moduli into one mod their lcm."""
    acc = ResiduePair(0, 1)
    for pair in pairs:
        if not isinstance(pair, ResiduePair):
            pair = ResiduePair.of(*pair)
        s, _, g = ext_gcd(acc.modulus, pair.modulus)
        diff = pair.residue - acc.residue
        if diff % g:
            # name the earliest input clashing with this one
            for prev in pairs:
                if prev is pair:
                    break
                if (pair.residue - prev.residue) % math.gcd(prev.modulus, pair.modulus):
                    raise CRTIncompatible(prev, pair)
            raise CRTIncompatible(acc, pair)
        lcm = acc.modulus // g * pair.modulus
        value = acc.residue + acc.modulus * (diff // g * s % (pair.modulus // g))
        acc = ResiduePair(value % lcm, lcm)
    return acc
