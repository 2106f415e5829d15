"""Decision procedures and witnesses for axiom instances over the models.

Every public function re-verifies its own output before returning (division
re-multiplies, normality quotients re-multiply, Bezout identities are
checked as rational functions) and raises ``SoundnessError`` if that fails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactmath import IsolatingInterval, Poly, RatPoly, cauchy_bound, ext_gcd, isolate_roots, rational_roots
from .models.chain import ChainState, ModulusOutOfRange, PreconditionError, chain_zhat_step
from .models.mb import MBConfig, MBElement, Rejection, mb_admit
from .mpoly import MPoly
from .numberfield import QQ, s_integrality_check
from .puiseux import PuiseuxSeries, SeriesPoly, newton_polygon, ps_sign

__all__ = [
    "SoundnessError",
    "Undecided",
    "CheckReport",
    "DivisionResult",
    "NormalityVerdict",
    "BezoutWitness",
    "BezoutPending",
    "ObstructionReport",
    "zr_divide",
    "normality_check",
    "polyfield_gcd",
    "bezout_witness",
    "oi_obstruction",
    "constructed_normality_instance",
]


class SoundnessError(AssertionError):
    """A produced witness failed its own re-verification."""


class Undecided(Exception):
    """The engine has no certificate either way for this instance."""


@dataclass
class CheckReport:
    operation: str
    inputs: dict
    outcome: str
    details: dict
    audit: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "operation": self.operation,
            "inputs": self.inputs,
            "outcome": self.outcome,
            "details": self.details,
            "audit_length": len(self.audit),
            "audit": list(self.audit),
        }


# ---------------------------------------------------------------------------
# Euclidean division by a standard n


@dataclass
class DivisionResult:
    outcome: str  # "witness" or "refuted"
    n: int
    g: object
    q: object = None
    r: int | None = None
    certificate: dict | None = None
    state: ChainState | None = None  # updated chain state when the quotient had to be adjoined
    audit: list = field(default_factory=list)

    @property
    def is_witness(self) -> bool:
        return self.outcome == "witness"

    def report(self, fmt) -> CheckReport:
        details = {"n": self.n}
        if self.is_witness:
            details.update(q=fmt(self.q), r=self.r)
        else:
            details["certificate"] = self.certificate
        return CheckReport("zr_divide", {"g": fmt(self.g), "n": self.n}, self.outcome, details, self.audit)


def zr_divide(model, g, n: int) -> DivisionResult:
    """Decide whether g = n*q + r with 0 <= r < n has a solution in the model."""
    if not isinstance(n, int) or n < 2:
        raise ValueError("n must be an integer >= 2")
    if isinstance(model, MBConfig):
        return _mb_divide(model, g, n)
    if isinstance(model, ChainState):
        return _chain_divide(model, g, n)
    raise TypeError(f"unsupported model {type(model).__name__}")


def _mb_divide(cfg: MBConfig, g, n: int) -> DivisionResult:
    elem = g if isinstance(g, MBElement) else mb_admit(g, cfg)
    if isinstance(elem, Rejection):
        raise ValueError(f"g is not an element of the model: {elem.reason}")
    poly = elem.poly
    K = cfg.field
    audit = []
    quot = {}
    for mono, c in poly.sorted_terms():
        if mono == ():
            continue
        cn = c / n
        if cfg.coefficients == "localized":
            chk = s_integrality_check(cn, cfg.S)
            audit.append(f"coefficient of {mono}: {K.format(cn)} member={chk.member}")
            if not chk.member:
                cert = {
                    "coefficient": K.format(c),
                    "monomial": list(mono),
                    "quotient_coefficient": K.format(cn),
                    "offending_prime": chk.offending_prime,
                    "reason": f"{K.format(c)}/{n} is not in A<S>: prime {chk.offending_prime} of {n} is outside S",
                }
                return DivisionResult("refuted", n, elem, certificate=cert, audit=audit)
        quot[mono] = cn
    const = K.coerce(poly.constant_term(K.zero))
    g0 = int(const if isinstance(const, Fraction) else const.rational_value())
    quot[()] = K.coerce(g0 // n)
    r = g0 % n
    q = MBElement(MPoly(quot), cfg)
    if q.poly * K.coerce(n) + K.coerce(r) != poly or not 0 <= r < n:
        raise SoundnessError("division witness does not re-multiply")
    if isinstance(mb_admit(q.poly, cfg), Rejection):
        raise SoundnessError("quotient left the model")
    audit.append("re-multiplied: g = n*q + r")
    return DivisionResult("witness", n, elem, q=q, r=r, audit=audit)


def _chain_divide(state: ChainState, g, n: int) -> DivisionResult:
    poly = state.parse(g)
    audit = []
    if state.S.in_monoid(n):
        if n > state.n_max:
            raise ModulusOutOfRange(n)
        r = state.residue(poly, n)
        audit.append(f"residue mod {n} = {r}")
        new_state, q = chain_zhat_step(state, poly - r, n)
        if q.poly * Fraction(n) + r != poly:
            raise SoundnessError("chain division witness does not re-multiply")
        audit.append("re-multiplied: g = n*q + r")
        return DivisionResult("witness", n, poly, q=q.poly, r=r, state=new_state, audit=audit)
    # n has a prime outside S. Elements are polynomials over Z<S> in the generators,
    # and the later generators are independent of x1, so a quotient of a
    # polynomial in x1 alone would have to be a polynomial in x1 with every
    # nonconstant coefficient equal to c/n.
    _, outside = state.S.split(n)
    x1 = state.names.index("x1") if "x1" in state.names else None
    if x1 is not None and poly.variables() <= {x1}:
        for mono, c in poly.sorted_terms():
            if mono == ():
                continue
            cn = Fraction(c) / n
            _, cof = state.S.split(cn.denominator)
            if cof != 1:
                p = _smallest_prime(cof)
                cert = {
                    "coefficient": str(c),
                    "monomial": list(mono),
                    "quotient_coefficient": str(cn),
                    "offending_prime": p,
                    "reason": f"{c}/{n} is not in Z<S>: prime {p} of {n} is outside S",
                }
                audit.append(f"x1-degree argument: coefficient {c} of {mono}")
                return DivisionResult("refuted", n, poly, certificate=cert, audit=audit)
    raise Undecided(f"no certificate for dividing {state.fmt(poly)} by {n} ({outside} is outside <S>)")


def _smallest_prime(n: int) -> int:
    p = 2
    while n % p:
        p += 1
    return p


# ---------------------------------------------------------------------------
# normality


@dataclass
class NormalityVerdict:
    outcome: str  # "member", "nonmember" or "premise_failure"
    quotient: object = None
    reason: str = ""
    rejection: Rejection | None = None
    audit: list = field(default_factory=list)

    def report(self, fmt, inputs: dict) -> CheckReport:
        details = {"reason": self.reason}
        if self.quotient is not None:
            details["quotient"] = fmt(self.quotient)
        if self.rejection is not None:
            details["rejection"] = self.rejection.to_json()
        return CheckReport("normality_check", inputs, self.outcome, details, self.audit)


def normality_check(model: MBConfig, u, v, zs: Sequence) -> NormalityVerdict:
    """Is u/v in the model, given u^s + z_1 u^(s-1) v + ... + z_s v^s = 0?"""
    if not zs:
        raise ValueError("need at least one equation coefficient")
    K = model.field

    def poly_of(e):
        if isinstance(e, MBElement):
            return e.poly
        res = mb_admit(e, model)
        if isinstance(res, Rejection):
            raise ValueError(f"argument is not an element of the model: {res.reason}")
        return res.poly

    up, vp = poly_of(u), poly_of(v)
    if vp.is_zero():
        raise ValueError("v must be nonzero")
    zp = [poly_of(z) for z in zs]
    s = len(zp)
    total = up**s
    for i, z in enumerate(zp, start=1):
        total = total + z * up ** (s - i) * vp**i
    total = total.map_coeffs(K.coerce)
    audit = [f"homogenized equation of degree {s} evaluated exactly"]
    if not total.is_zero():
        return NormalityVerdict("premise_failure", reason="the monic equation does not hold", audit=audit)
    q, rem = up.divmod_lex(vp)
    audit.append("exact division of u by v")
    if not rem.is_zero():
        return NormalityVerdict("nonmember", reason="not a polynomial", audit=audit)
    if (q * vp).map_coeffs(K.coerce) != up.map_coeffs(K.coerce):
        raise SoundnessError("normality quotient does not re-multiply")
    adm = mb_admit(q, model)
    if isinstance(adm, Rejection):
        return NormalityVerdict("nonmember", quotient=MBElement(q, model), reason=adm.reason, rejection=adm, audit=audit)
    return NormalityVerdict("member", quotient=adm, audit=audit)


# ---------------------------------------------------------------------------
# gcd in K[x]


def polyfield_gcd(a, b, field=QQ) -> Poly:
    """Monic gcd in K[x] by the Euclidean algorithm; inputs are Poly or coefficient lists."""
    pa = a if isinstance(a, Poly) else Poly([field.coerce(c) for c in a])
    pb = b if isinstance(b, Poly) else Poly([field.coerce(c) for c in b])
    if pa.is_zero() and pb.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not pb.is_zero():
        pa, pb = pb, pa % pb
    g = pa.monic()
    for src in (a, b):
        ps = src if isinstance(src, Poly) else Poly([field.coerce(c) for c in src])
        if not (ps % g).is_zero():
            raise SoundnessError("gcd does not divide its inputs")
    return g


# ---------------------------------------------------------------------------
# Bezout in the chain


@dataclass
class BezoutWitness:
    z: MPoly
    t: MPoly
    d: MPoly
    a_over_d: MPoly
    b_over_d: MPoly
    audit: list = field(default_factory=list)

    outcome = "witness"


@dataclass
class BezoutPending:
    pair: tuple[str, str]

    outcome = "pending"


def _factor_int(m: int) -> list[int]:
    out, p = [], 2
    m = abs(m)
    while p * p <= m:
        while m % p == 0:
            out.append(p)
            m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def _factorization(state: ChainState, desc):
    """(integer part, [registered nonstandard prime polys with multiplicity])."""
    if isinstance(desc, (list, tuple)) and not isinstance(desc, MPoly):
        unit, primes = 1, []
        for item in desc:
            elem, exp = (item if isinstance(item, (list, tuple)) else (item, 1))
            u, ps = _factorization(state, elem)
            unit *= u**exp
            primes.extend(ps * exp)
        return unit, primes
    poly = state.parse(desc)
    if poly.is_zero():
        raise ValueError("Bezout arguments must be nonzero")
    if poly.is_constant():
        c = Fraction(poly.constant_term(0))
        if c.denominator != 1:
            raise PreconditionError(f"{c} is not an integer")
        return c.numerator, []
    entry, sgn = state.find_prime(poly)
    if entry is None or entry.kind != "nonstandard":
        raise PreconditionError(f"unregistered factor {state.fmt(poly)}: no primality certificate")
    return sgn, [entry.poly]


def _combine_right(A, B, C, rs1, rs2):
    # from A r1 + B s1 = 1 and A r2 + C s2 = 1 get a pair for (A, BC)
    (r1, s1), (r2, s2) = rs1, rs2
    return r1 * A * r2 + r1 * C * s2 + B * s1 * r2, s1 * s2


def _combine_left(A, B, C, rs1, rs2):
    # from A r1 + C s1 = 1 and B r2 + C s2 = 1 get a pair for (AB, C)
    (r1, s1), (r2, s2) = rs1, rs2
    return r1 * r2, A * r1 * s2 + s1 * B * r2 + s1 * C * s2


def _const(c) -> MPoly:
    return MPoly.const(Fraction(c))


def _atom_pair(state: ChainState, A, B):
    """Bezout pair for two atoms (int or prime poly), or the missing prime pair."""
    if isinstance(A, int) and isinstance(B, int):
        s, t, g = ext_gcd(A, B)
        if g != 1:
            raise SoundnessError("integer atoms should be coprime")
        return (_const(s), _const(t)), None
    if isinstance(A, int):
        primes = _factor_int(A)
        acc, accA = None, None
        for p in primes:
            rel = state.relation_for(_const(p), B)
            if rel is None:
                return None, (str(p), state.fmt(B))
            if acc is None:
                acc, accA = rel, _const(p)
            else:
                acc = _combine_left(accA, _const(p), B, acc, rel)
                accA = accA * _const(p)
        return acc, None
    if isinstance(B, int):
        swapped, missing = _atom_pair(state, B, A)
        if swapped is None:
            return None, (missing[1], missing[0])
        return (swapped[1], swapped[0]), None
    rel = state.relation_for(A, B)
    if rel is None:
        return None, (state.fmt(A), state.fmt(B))
    return rel, None


def _as_poly(atom) -> MPoly:
    return _const(atom) if isinstance(atom, int) else atom


def bezout_witness(state: ChainState, a, b):
    """(z, t, d) with d = a z + b t dividing a and b, or the first prime pair still lacking an F-stage.

    ``a`` and ``b`` are integers, registered primes, or lists of such factors
    (optionally as (factor, exponent) pairs).
    """
    ua, pa = _factorization(state, a)
    ub, pb = _factorization(state, b)
    if ua == 0 or ub == 0:
        raise ValueError("Bezout arguments must be nonzero")
    g = math.gcd(ua, ub)
    common = []
    rest_b = list(pb)
    rest_a = []
    for P in pa:
        match = next((i for i, Q in enumerate(rest_b) if state.equal(P, Q)), None)
        if match is None:
            rest_a.append(P)
        else:
            common.append(P)
            rest_b.pop(match)
    ia, ib = ua // g, ub // g
    atoms_a = ([abs(ia)] if abs(ia) > 1 else []) + rest_a
    atoms_b = ([abs(ib)] if abs(ib) > 1 else []) + rest_b
    sa, sb = (1 if ia > 0 else -1), (1 if ib > 0 else -1)

    if not atoms_a:
        r, s = _const(1), _const(0)
    elif not atoms_b:
        r, s = _const(0), _const(1)
    else:
        row_pairs = []
        for A in atoms_a:
            acc, accB = None, None
            for B in atoms_b:
                pair, missing = _atom_pair(state, A, B)
                if pair is None:
                    return BezoutPending(missing)
                if acc is None:
                    acc, accB = pair, _as_poly(B)
                else:
                    acc = _combine_right(_as_poly(A), accB, _as_poly(B), acc, pair)
                    accB = accB * _as_poly(B)
            row_pairs.append((_as_poly(A), acc))
        Bprod = _const(1)
        for B in atoms_b:
            Bprod = Bprod * _as_poly(B)
        accA, acc = row_pairs[0]
        for A, pair in row_pairs[1:]:
            acc = _combine_left(accA, A, Bprod, acc, pair)
            accA = accA * A
        r, s = acc
    r, s = r * Fraction(sa), s * Fraction(sb)

    def prod(unit, polys):
        out = _const(unit)
        for P in polys:
            out = out * P
        return out

    d = prod(g, common)
    a_poly, b_poly = prod(ua, pa), prod(ub, pb)
    a_d, b_d = prod(ia, rest_a), prod(ib, rest_b)
    audit = []
    if not state.equal(a_poly * r + b_poly * s, d):
        raise SoundnessError("a z + b t != d")
    audit.append("a z + b t = d as rational functions")
    if d * a_d != a_poly or d * b_d != b_poly:
        raise SoundnessError("d does not divide a and b")
    audit.append("d * (a/d) = a and d * (b/d) = b")
    return BezoutWitness(r, s, d, a_d, b_d, audit)


# ---------------------------------------------------------------------------
# the degree-bounded open-induction obstruction


OUTSIDE = "outside"
INSIDE = "inside"


@dataclass
class ObstructionReport:
    P: RatPoly
    p: int
    candidate_roots: list[IsolatingInterval]
    rational_roots: list[Fraction]
    certificates: list  # per root: "outside", "inside" or None
    conclusion: str  # "obstructed", "not_obstructed" or "undetermined"
    edge_slope: Fraction
    characteristic_matches: bool
    bracket: dict
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "P": [str(c) for c in self.P.coeffs],
            "p": self.p,
            "candidate_roots": [iv.to_json() for iv in self.candidate_roots],
            "rational_roots": [str(r) for r in self.rational_roots],
            "certificates": list(self.certificates),
            "conclusion": self.conclusion,
            "newton_edge_slope": str(self.edge_slope),
            "characteristic_is_P": self.characteristic_matches,
            "bracket": self.bracket,
            "notes": list(self.notes),
        }


def oi_obstruction(P, p: int, certs: Sequence | None = None) -> ObstructionReport:
    """Analyse Q(y) = x^d P(y/x), d = deg P <= p + 1: a y with Q(y) <= 0 < Q(y+1) needs a real root of P in RC_p(Q).

    ``certs`` gives, per real root of P in increasing order, whether that root
    is certified "outside" or "inside" RC_p(Q) (``True``/``False`` are read as
    outside/inside). These flags are trusted inputs; for p = 1, RC_1(Q) = Q so
    irrational roots are outside without a flag.
    """
    P = P if isinstance(P, RatPoly) else RatPoly(P)
    if p < 1:
        raise ValueError("p must be positive")
    if not 2 <= P.degree <= p + 1:
        raise ValueError(f"P must have degree between 2 and p + 1 = {p + 1}")
    if P.lc != 1 or any(Fraction(c).denominator != 1 for c in P.coeffs):
        raise ValueError("P must be monic with integer coefficients")
    if not P(0) < 0:
        raise ValueError("P(0) must be negative")

    x = PuiseuxSeries.x()
    d = P.degree
    Q = SeriesPoly([PuiseuxSeries({Fraction(d - i): c}) for i, c in enumerate(P.coeffs)])
    edges = newton_polygon(Q)
    slope = edges[0].slope if len(edges) == 1 else None
    char_ok = len(edges) == 1 and [Fraction(c) for c in edges[0].characteristic(Q)] == list(P.coeffs)
    if slope != 1 or not char_ok:
        raise SoundnessError("Newton polygon of Q is not the single slope-1 edge with characteristic P")

    roots = isolate_roots(P)
    rats = rational_roots(P)
    if certs is None:
        certs = [None] * len(roots)
    if len(certs) != len(roots):
        raise ValueError(f"expected {len(roots)} certificates, one per real root, got {len(certs)}")
    flags = []
    notes = []
    for iv, c in zip(roots, certs):
        flag = {True: OUTSIDE, False: INSIDE}.get(c, c) if isinstance(c, bool) else c
        if flag not in (OUTSIDE, INSIDE, None):
            raise ValueError(f"certificate must be 'outside', 'inside' or empty, got {c!r}")
        rational = next((r for r in rats if iv.lo < r <= iv.hi), None)
        if rational is not None:
            if flag == OUTSIDE:
                notes.append(f"root {rational} is rational; its 'outside' flag is overridden")
            flag = INSIDE
        elif flag is None and p == 1:
            flag = OUTSIDE
            notes.append(f"root in ({iv.lo}, {iv.hi}] is irrational, hence outside RC_1(Q) = Q")
        flags.append(flag)
    if any(f == INSIDE for f in flags):
        conclusion = "not_obstructed"
    elif any(f is None for f in flags):
        conclusion = "undetermined"
    else:
        conclusion = "obstructed"

    N = math.ceil(1 + cauchy_bound(P))
    q0 = ps_sign(Q(PuiseuxSeries.zero()))
    qN = ps_sign(Q(x * N))
    bracket = {"N": N, "sign_Q_at_0": q0, "sign_Q_at_Nx": qN, "holds": q0 == -1 and qN == 1}
    if not bracket["holds"]:
        raise SoundnessError("sanity bracket Q(0) < 0 < Q(N x) failed")
    return ObstructionReport(P, p, roots, rats, flags, conclusion, slope, char_ok, bracket, notes)


def constructed_normality_instance(cfg: MBConfig, rng, s: int, degree: int = 2, height: int = 6):
    """Random (u, v, zs, h) with u = v*h and h a root of a monic degree-s equation over the model.

    h, v and a monic cofactor m(t) of degree s - 1 are drawn at random; the
    z_i are the lower coefficients of (t - h) * m(t), so the homogenized
    equation holds by construction.
    """
    from .models.mb import random_element

    h = random_element(cfg, rng, degree=degree, height=height)
    v = random_element(cfg, rng, degree=degree, height=height)
    while v.is_zero():
        v = random_element(cfg, rng, degree=degree, height=height)
    one = MPoly.const(cfg.field.one)
    # descending coefficient lists in t
    m = [one] + [random_element(cfg, rng, degree=1, height=height).poly for _ in range(s - 1)]
    eq = [one]
    for i in range(1, s + 1):
        above = m[i] if i < len(m) else MPoly()
        eq.append(above - h.poly * m[i - 1])
    zs = [MBElement(c, cfg) for c in eq[1:]]
    u = MBElement(v.poly * h.poly, cfg)
    return u, v, zs, h
