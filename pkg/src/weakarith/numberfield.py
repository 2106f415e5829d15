"""Real algebraic number fields Q(lambda), S-integrality and coefficient fields.

A :class:`NumberField` is fixed by a monic irreducible minimal polynomial, an
isolating interval choosing the real root used as lambda, and an integral basis
supplied by configuration. Elements are coordinate vectors over the power
basis 1, lambda, ..., lambda^(d-1).

Both ``QQ`` and every ``NumberField`` implement the small coefficient-field
protocol used by the Puiseux code: ``zero``, ``one``, ``coerce``, ``sign``,
``floor``, ``is_integer``, ``roots`` and ``format``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from .exactmath import (
    IsolatingInterval,
    Poly,
    RatPoly,
    cauchy_bound,
    count_roots_in,
    isolate_roots,
    poly_ext_gcd,
    poly_gcd,
    rational_roots,
    refine_interval,
    squarefree_part,
    to_rational,
)

__all__ = [
    "QQ",
    "RationalField",
    "NumberField",
    "FieldElement",
    "PrimeSet",
    "IntegralityResult",
    "nf_arith",
    "nf_compare",
    "s_integrality_check",
    "element_min_poly",
    "is_prime",
    "field_poly_roots",
]


# ---------------------------------------------------------------------------
# small exact linear algebra


def _det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        p = m[col][col]
        det *= p
        for r in range(col + 1, n):
            f = m[r][col] / p
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def _inverse(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(rows)
    m = [list(map(Fraction, r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [row[n:] for row in m]


def _kernel_relation(vectors: Sequence[Sequence[Fraction]]):
    """Coefficients c with sum c_i v_i = -v_last if v_last depends on the others, else None."""
    *basis, target = vectors
    k = len(basis)
    dim = len(target)
    # augmented system: columns are basis vectors, rhs is -target
    m = [[basis[j][i] for j in range(k)] + [-target[i]] for i in range(dim)]
    pivots = []
    row = 0
    for col in range(k):
        piv = next((r for r in range(row, dim) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        p = m[row][col]
        m[row] = [v / p for v in m[row]]
        for r in range(dim):
            if r != row and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
    if any(m[r][k] != 0 for r in range(row, dim)):
        return None
    sol = [Fraction(0)] * k
    for r, col in enumerate(pivots):
        sol[col] = m[r][k]
    return sol


# ---------------------------------------------------------------------------
# primes and the monoid <S>


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24, trial division below 1000."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


@dataclass(frozen=True)
class PrimeSet:
    """A finite set S of rational primes and its multiplicative monoid <S>."""

    primes: tuple[int, ...]

    def __init__(self, primes: Iterable[int]):
        ps = tuple(sorted(set(int(p) for p in primes)))
        for p in ps:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "primes", ps)

    def __contains__(self, p: int) -> bool:
        return p in self.primes

    def __iter__(self):
        return iter(self.primes)

    def __len__(self) -> int:
        return len(self.primes)

    def split(self, n: int) -> tuple[dict[int, int], int]:
        """Factor ``n`` as (exponents over S, cofactor coprime to S)."""
        n = abs(int(n))
        if n == 0:
            raise ValueError("0 has no factorization")
        exps = {}
        for p in self.primes:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e:
                exps[p] = e
        return exps, n

    def in_monoid(self, n: int) -> bool:
        """True iff n > 0 is a product of primes from S (1 included)."""
        return n > 0 and self.split(n)[1] == 1

    def monoid_up_to(self, bound: int, include_one: bool = False) -> list[int]:
        out = {1}
        for p in self.primes:
            frontier = sorted(out)
            for m in frontier:
                v = m * p
                while v <= bound:
                    out.add(v)
                    v *= p
        if not include_one:
            out.discard(1)
        return sorted(out)

    def to_json(self) -> list[int]:
        return list(self.primes)


# ---------------------------------------------------------------------------
# coefficient field: the rationals


class RationalField:
    """Q viewed as an ordered coefficient field."""

    name = "QQ"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x) -> Fraction:
        if isinstance(x, FieldElement):
            return x.rational_value()
        return to_rational(x)

    def sign(self, a) -> int:
        return (a > 0) - (a < 0)

    def floor(self, a) -> int:
        return math.floor(a)

    def is_integer(self, a) -> bool:
        return Fraction(a).denominator == 1

    def roots(self, coeffs: Sequence) -> list[Fraction]:
        """Rational roots of the polynomial with the given coefficients, ascending."""
        return rational_roots(RatPoly(coeffs))

    def format(self, a) -> str:
        return str(Fraction(a))

    def parse(self, text) -> Fraction:
        from .textforms import parse_rational

        return parse_rational(text)

    def __repr__(self) -> str:
        return "QQ"

    def to_json(self):
        return "QQ"


QQ = RationalField()


# ---------------------------------------------------------------------------
# number fields


def _interval_horner(coeffs, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    a = b = Fraction(0)
    for c in reversed(coeffs):
        prods = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(prods) + c, max(prods) + c
    return a, b


class NumberField:
    """Q(lambda) for a real root lambda of an irreducible monic polynomial."""

    def __init__(
        self,
        min_poly: RatPoly | Sequence,
        embedding: IsolatingInterval | tuple,
        integral_basis: Sequence[Sequence] | None = None,
        name: str | None = None,
        check: bool = True,
    ):
        if not isinstance(min_poly, RatPoly):
            min_poly = RatPoly(min_poly)
        if min_poly.degree < 1 or min_poly.lc != 1:
            raise ValueError(f"minimal polynomial must be monic of degree >= 1: {min_poly}")
        self.min_poly = min_poly
        self.degree = min_poly.degree
        if not isinstance(embedding, IsolatingInterval):
            lo, hi = embedding
            embedding = IsolatingInterval(to_rational(lo), to_rational(hi), min_poly)
        self.embedding = embedding
        d = self.degree
        if integral_basis is None:
            integral_basis = [[int(i == j) for j in range(d)] for i in range(d)]
        self.integral_basis = tuple(tuple(to_rational(c) for c in row) for row in integral_basis)
        if len(self.integral_basis) != d or any(len(r) != d for r in self.integral_basis):
            raise ValueError("integral basis must be a d x d matrix")
        self._basis_inv = _inverse(self.integral_basis)
        self.name = name or f"Q[t]/({min_poly})"
        self._refined: dict[int, IsolatingInterval] = {}
        if check:
            self.sanity_check()

    # -- configuration checks ------------------------------------------
    def sanity_check(self) -> None:
        """Cheap irreducibility evidence and embedding validity.

        Rejects rational roots and monic quadratic factors; complete for degree <= 5.
        """
        p = self.min_poly
        if p.degree > 1 and rational_roots(p):
            raise ValueError(f"{p} has a rational root")
        if p.degree >= 4 and _has_quadratic_factor(p):
            raise ValueError(f"{p} has a quadratic factor")
        if p.degree > 1 and squarefree_part(p).degree != p.degree:
            raise ValueError(f"{p} is not squarefree")
        if not self.embedding.validate():
            raise ValueError(f"embedding {self.embedding} does not isolate exactly one root")

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, NumberField):
            return NotImplemented
        if self.min_poly != other.min_poly:
            return False
        # same root iff the two intervals overlap on a common root
        lo = max(self.embedding.lo, other.embedding.lo)
        hi = min(self.embedding.hi, other.embedding.hi)
        if lo > hi:
            return False
        if lo == hi:
            return self.min_poly(hi) == 0
        if self.min_poly(hi) == 0:
            return True
        if self.min_poly(lo) == 0:
            return False
        return count_roots_in(self.min_poly, lo, hi) == 1

    def __hash__(self):
        return hash(self.min_poly)

    def __repr__(self) -> str:
        return f"NumberField({self.name})"

    # -- elements ------------------------------------------------------
    def __call__(self, coords) -> "FieldElement":
        return self.element(coords)

    def element(self, coords) -> "FieldElement":
        if isinstance(coords, FieldElement):
            return coords
        if isinstance(coords, (int, Fraction, str)):
            return FieldElement(self, [to_rational(coords)])
        return FieldElement(self, [to_rational(c) for c in coords])

    @property
    def gen(self) -> "FieldElement":
        return FieldElement(self, [0, 1])

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, [])

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, [1])

    def coerce(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.field is not self and x.field != self:
                raise ValueError("element of a different field")
            return x
        return FieldElement(self, [to_rational(x)])

    # -- ordering support ----------------------------------------------
    def refined_embedding(self, bits: int) -> IsolatingInterval:
        """Embedding interval of width <= 2^-bits (memoized, never mutates ``embedding``)."""
        iv = self._refined.get(bits)
        if iv is None:
            iv = refine_interval(self.embedding, Fraction(1, 1 << bits))
            self._refined[bits] = iv
        return iv

    def enclose(self, a: "FieldElement", bits: int) -> tuple[Fraction, Fraction]:
        iv = self.refined_embedding(bits)
        return _interval_horner(a.coords, iv.lo, iv.hi)

    def sign(self, a: "FieldElement") -> int:
        a = self.coerce(a)
        if a.is_zero():
            return 0
        if a.is_rational():
            c = a.coords[0]
            return (c > 0) - (c < 0)
        # a(lambda) != 0 because deg a < deg min_poly; enclosures shrink to exclude 0
        bits = 8
        while True:
            lo, hi = self.enclose(a, bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def floor(self, a: "FieldElement") -> int:
        a = self.coerce(a)
        if a.is_rational():
            return math.floor(a.coords[0])
        bits = 8
        while True:
            lo, hi = self.enclose(a, bits)
            if math.floor(lo) == math.floor(hi):
                return math.floor(lo)
            bits *= 2

    def approx(self, a: "FieldElement", bits: int = 53) -> Fraction:
        lo, hi = self.enclose(self.coerce(a), bits)
        return (lo + hi) / 2

    def is_integer(self, a) -> bool:
        a = self.coerce(a)
        return a.is_rational() and a.rational_value().denominator == 1

    # -- coefficient-field protocol -------------------------------------
    def roots(self, coeffs: Sequence) -> list["FieldElement"]:
        return field_poly_roots(self, coeffs)

    def format(self, a) -> str:
        a = self.coerce(a)
        return str(a.rational_value()) if a.is_rational() else str(a)

    def parse(self, text) -> "FieldElement":
        from .textforms import parse_field_element

        return parse_field_element(self, text)

    # -- serialization --------------------------------------------------
    def to_json(self) -> dict:
        return {
            "name": self.name,
            "min_poly": [str(c) for c in self.min_poly.coeffs],
            "embedding": [str(self.embedding.lo), str(self.embedding.hi)],
            "integral_basis": [[str(c) for c in row] for row in self.integral_basis],
        }

    @classmethod
    def from_json(cls, data: dict) -> "NumberField":
        if "preset" in data:
            return cls.preset(data["preset"])
        return cls(
            [to_rational(c) for c in data["min_poly"]],
            tuple(to_rational(c) for c in data["embedding"]),
            data.get("integral_basis"),
            name=data.get("name"),
        )

    @classmethod
    def preset(cls, name: str) -> "NumberField":
        """Shipped fields: ``sqrt2`` = Q(2^(1/2)) and ``cbrt2`` = Q(2^(1/3)), basis = power basis."""
        if name == "sqrt2":
            return cls([-2, 0, 1], (1, 2), name="sqrt2")
        if name == "cbrt2":
            return cls([-2, 0, 0, 1], (1, 2), name="cbrt2")
        if name == "rational":
            return cls([0, 1], (-1, 1), name="rational")
        raise KeyError(f"unknown field preset {name!r}")

    # -- integral basis coordinates -------------------------------------
    def integral_coords(self, a: "FieldElement") -> list[Fraction]:
        pc = a.padded()
        d = self.degree
        return [sum((pc[j] * self._basis_inv[j][i] for j in range(d)), Fraction(0)) for i in range(d)]

    def multiplication_matrix(self, a: "FieldElement") -> list[list[Fraction]]:
        """Matrix (rows = coordinates) of x -> a*x on the power basis."""
        d = self.degree
        cols = [(a * FieldElement(self, [0] * j + [1])).padded() for j in range(d)]
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def norm(self, a: "FieldElement") -> Fraction:
        return _det(self.multiplication_matrix(a))


def _has_quadratic_factor(p: RatPoly) -> bool:
    prim = p.primitive_integer()
    if prim.lc != 1:
        return False  # only monic integer inputs get the bounded search
    bound = cauchy_bound(prim)
    cmax = math.floor(bound * bound)
    bmax = math.floor(2 * bound)
    const = int(prim[0])
    if const == 0:
        return True
    divisors = [c for c in range(1, min(abs(const), cmax) + 1) if const % c == 0]
    for c in divisors:
        for cc in (c, -c):
            for b in range(-bmax, bmax + 1):
                if (prim % RatPoly([cc, b, 1])).is_zero():
                    return True
    return False


class FieldElement:
    """Immutable element of a NumberField in power-basis coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: Sequence):
        d = field.degree
        cs = [to_rational(c) for c in coords]
        if len(cs) > d:
            cs = list((RatPoly(cs) % field.min_poly).coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coords = tuple(cs)

    # -- helpers ---------------------------------------------------------
    def padded(self) -> list[Fraction]:
        return list(self.coords) + [Fraction(0)] * (self.field.degree - len(self.coords))

    def is_zero(self) -> bool:
        return not self.coords

    def is_rational(self) -> bool:
        return len(self.coords) <= 1

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0] if self.coords else Fraction(0)

    def _other(self, other) -> "FieldElement | None":
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("elements of different number fields")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return FieldElement(self.field, [other])
        return None

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coords), len(o.coords))
        a, b = self.coords, o.coords
        return FieldElement(self.field, [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-c for c in self.coords])

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o.is_rational():
            c = o.coords[0] if o.coords else 0
            return FieldElement(self.field, [x * c for x in self.coords])
        if self.is_rational():
            c = self.coords[0] if self.coords else 0
            return FieldElement(self.field, [x * c for x in o.coords])
        prod = RatPoly(self.coords) * RatPoly(o.coords)
        return FieldElement(self.field, (prod % self.field.min_poly).coeffs)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in number field")
        if self.is_rational():
            return FieldElement(self.field, [1 / self.coords[0]])
        s, _, g = poly_ext_gcd(RatPoly(self.coords), self.field.min_poly)
        if g.degree != 0:
            raise ArithmeticError("minimal polynomial is reducible")
        return FieldElement(self.field, s.coeffs)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = FieldElement(self.field, [1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.coords == other.coords and (other.field is self.field or other.field == self.field)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.coords == FieldElement(self.field, [other]).coords
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0] if self.coords else Fraction(0))
        return hash(self.coords)

    def __lt__(self, other):
        return nf_compare(self, self._coerce_cmp(other)) < 0

    def __le__(self, other):
        return nf_compare(self, self._coerce_cmp(other)) <= 0

    def __gt__(self, other):
        return nf_compare(self, self._coerce_cmp(other)) > 0

    def __ge__(self, other):
        return nf_compare(self, self._coerce_cmp(other)) >= 0

    def _coerce_cmp(self, other):
        o = self._other(other)
        if o is None:
            raise TypeError(f"cannot compare FieldElement with {type(other).__name__}")
        return o

    def __repr__(self) -> str:
        return f"FieldElement({self.field.name}, {str(self)})"

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.padded()) + "]"


def nf_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def nf_compare(a: FieldElement, b: FieldElement) -> int:
    """-1, 0 or 1 according to the real order under the chosen embedding."""
    diff = a - b
    if diff.is_zero():
        return 0
    return diff.field.sign(diff)


@dataclass(frozen=True)
class IntegralityResult:
    member: bool
    denominator: int
    factorization: dict = dc_field(default_factory=dict)
    offending_prime: int | None = None

    def certificate(self) -> dict:
        if self.member:
            return {"denominator": self.denominator, "factorization": {str(p): e for p, e in sorted(self.factorization.items())}}
        return {"denominator": self.denominator, "offending_prime": self.offending_prime}


def s_integrality_check(a: FieldElement, S: PrimeSet) -> IntegralityResult:
    """Membership of ``a`` in the localization A<S> of the ring of integers."""
    coords = a.field.integral_coords(a)
    den = 1
    for c in coords:
        den = den * c.denominator // math.gcd(den, c.denominator)
    exps, rest = S.split(den)
    if rest == 1:
        return IntegralityResult(True, den, exps)
    return IntegralityResult(False, den, exps, _smallest_prime_factor(rest))


def element_min_poly(a: FieldElement) -> RatPoly:
    """Monic minimal polynomial of ``a`` over Q via the first linear relation among its powers."""
    powers = [FieldElement(a.field, [1]).padded()]
    cur = FieldElement(a.field, [1])
    for k in range(1, a.field.degree + 1):
        cur = cur * a
        powers.append(cur.padded())
        rel = _kernel_relation(powers)
        if rel is not None:
            return RatPoly(list(rel) + [1])
    raise ArithmeticError("no relation found: minimal polynomial is not irreducible")


# ---------------------------------------------------------------------------
# roots in Q(lambda) of polynomials with Q(lambda) coefficients


def _interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> RatPoly:
    # Newton divided differences
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = RatPoly([coef[-1]])
    for i in range(n - 2, -1, -1):
        poly = poly * RatPoly([-xs[i], 1]) + coef[i]
    return poly


def _norm_poly(field: NumberField, g: Poly) -> RatPoly:
    """Norm from Q(lambda)[t] down to Q[t], by evaluation and interpolation."""
    deg = g.degree * field.degree
    xs = [Fraction(i) for i in range(deg + 1)]
    ys = [field.norm(field.coerce(g(x))) for x in xs]
    return _interpolate(xs, ys)


def _factor_over_q(p: RatPoly) -> list[RatPoly]:
    import sympy

    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * t**i for i, c in enumerate(p.coeffs))
    _, factors = sympy.factor_list(expr, t)
    out = []
    for fac, _mult in factors:
        coeffs = sympy.Poly(fac, t).all_coeffs()[::-1]
        out.append(RatPoly([Fraction(int(sympy.numer(c)), int(sympy.denom(c))) for c in coeffs]))
    return out


def field_poly_roots(field: NumberField, coeffs: Sequence) -> list[FieldElement]:
    """Distinct roots in Q(lambda) of sum coeffs[i] t^i, ascending.

    Trager's method: shift t -> t - k*lambda until the norm is squarefree, then
    every degree-d rational factor h of the norm yields gcd(g, h) of degree one
    exactly for the linear factors of g.
    """
    f = Poly([field.coerce(c) for c in coeffs])
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.degree < 1:
        return []
    f = f.exact_div(poly_gcd(f, f.derivative())).monic()
    if f.degree == 1:
        return [-f[0] / f[1]]
    lam = field.gen
    for k in range(0, 4 * f.degree * field.degree + 2):
        shift = Poly([-lam * k, field.one])
        g = f.compose(shift)
        norm = _norm_poly(field, g)
        if poly_gcd(norm, norm.derivative()).degree == 0:
            break
    else:  # pragma: no cover - finitely many bad shifts exist
        raise ArithmeticError("no squarefree norm shift found")
    roots = []
    for h in _factor_over_q(norm):
        if h.degree != field.degree:
            continue
        G = poly_gcd(g, Poly([field.coerce(c) for c in h.coeffs]))
        if G.degree == 1:
            roots.append(-G[0] / G[1] - lam * k)
    roots.sort(key=_CmpKey)
    return roots


class _CmpKey:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return nf_compare(self.v, other.v) < 0
