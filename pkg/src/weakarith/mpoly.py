"""Sparse multivariate polynomials with exact coefficients.

Monomials are exponent tuples with trailing zeros stripped, so ``()`` is the
constant monomial and ``(0, 2)`` is ``x2^2``. Variables are indexed from 0.

The ordering helpers implement the "each later variable is infinitely larger
than everything built from earlier ones" order used by every model in the
package: monomials compare by the exponent of the highest-index variable
first, so the sign of a polynomial is the sign of its leading coefficient.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Mapping


def _strip(mono: Iterable[int]) -> tuple[int, ...]:
    m = list(mono)
    while m and m[-1] == 0:
        m.pop()
    return tuple(m)


def _mono_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, e in enumerate(b):
        out[i] += e
    return tuple(out)


def mono_key(mono: tuple[int, ...], nvars: int) -> tuple[int, ...]:
    """Sort key: highest-index variable most significant."""
    padded = list(mono) + [0] * (nvars - len(mono))
    return tuple(reversed(padded))


class MPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                if c == 0:
                    continue
                m = _strip(mono)
                if m in clean:
                    s = clean[m] + c
                    if s == 0:
                        del clean[m]
                    else:
                        clean[m] = s
                else:
                    clean[m] = c
        self.terms = clean

    # -- constructors --------------------------------------------------
    @classmethod
    def const(cls, c) -> "MPoly":
        return cls({(): c})

    @classmethod
    def var(cls, index: int, coeff=1) -> "MPoly":
        return cls({(0,) * index + (1,): coeff})

    # -- queries -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def nvars(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def constant_term(self, zero=0):
        return self.terms.get((), zero)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, var: int) -> int:
        return max((m[var] if var < len(m) else 0 for m in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def variables(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def sorted_terms(self, descending: bool = True):
        n = self.nvars
        return sorted(self.terms.items(), key=lambda kv: mono_key(kv[0], n), reverse=descending)

    def leading_term(self):
        """(monomial, coefficient) of the largest monomial; later variables dominate."""
        if not self.terms:
            return None
        n = self.nvars
        mono = max(self.terms, key=lambda m: mono_key(m, n))
        return mono, self.terms[mono]

    def nonconstant_part(self) -> "MPoly":
        return MPoly({m: c for m, c in self.terms.items() if m != ()})

    def map_coeffs(self, fn: Callable) -> "MPoly":
        return MPoly({m: fn(c) for m, c in self.terms.items()})

    # -- arithmetic ----------------------------------------------------
    def _lift(self, other) -> "MPoly":
        return other if isinstance(other, MPoly) else MPoly.const(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return MPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return MPoly({m: c * other for m, c in self.terms.items()})
        out: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = _mono_mul(ma, mb)
                v = ca * cb
                out[m] = out[m] + v if m in out else v
        return MPoly(out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        result = MPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, MPoly):
            other = MPoly.const(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"MPoly({self.terms!r})"

    # -- evaluation ----------------------------------------------------
    def evaluate(self, values: Mapping[int, object] | list, one=1, zero=0):
        """Substitute ``values[i]`` for variable i (values may be any ring elements)."""
        acc = zero
        for mono, c in self.terms.items():
            t = c * one
            for i, e in enumerate(mono):
                if e:
                    t = t * values[i] ** e
            acc = acc + t
        return acc

    def divmod_lex(self, divisor: "MPoly") -> tuple["MPoly", "MPoly"]:
        """Division by one polynomial in the leading-term order; remainder 0 iff divisible."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lm, lc = divisor.leading_term()
        quot: dict = {}
        rem: dict = {}
        p = self
        while not p.is_zero():
            m, c = p.leading_term()
            if len(m) >= len(lm) and all(m[i] >= lm[i] for i in range(len(lm))):
                qm = tuple(m[i] - (lm[i] if i < len(lm) else 0) for i in range(len(m)))
                qc = c / lc
                quot[_strip(qm)] = qc
                p = p - MPoly({qm: qc}) * divisor
            else:
                rem[m] = c
                p = MPoly({k: v for k, v in p.terms.items() if k != m})
        return MPoly(quot), MPoly(rem)


def sign_of(poly: MPoly, coeff_sign: Callable) -> int:
    """Sign when every later variable is infinitely larger than the earlier ones."""
    lt = poly.leading_term()
    if lt is None:
        return 0
    return coeff_sign(lt[1])


def rational_content(poly: MPoly) -> tuple[int, MPoly]:
    """Common denominator D of Fraction coefficients and D*poly with integer coefficients."""
    den = 1
    for c in poly.terms.values():
        d = Fraction(c).denominator
        den = den * d // math.gcd(den, d)
    return den, poly.map_coeffs(lambda c: int(Fraction(c) * den))
