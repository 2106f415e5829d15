"""Finite-stage engine for the alternating F / Z_S-hat extension chain.

A state starts from Z with its natural residue maps Z -> Z/n for n in <S>,
n <= N_max. Two kinds of step grow it:

* F-step on registered primes (v, w): adjoin x_k and y_k = (1 - x_k v)/w, so
  that x_k v + y_k w = 1. The residues of x_k are units at every tracked
  modulus (smallest admissible choice), which keeps the residue map
  parsimonious.
* Z-hat step: adjoin a/n whenever the residue of a mod n is 0.

Elements are polynomials in the generators with rational coefficients. Their
residues are computed prime power by prime power: clearing a denominator D
with p^a || D needs generator residues mod p^(e+a), so operations report
``ModulusOutOfRange`` instead of guessing when that exceeds N_max.

For ordering, elements are normalized to rational functions in x_1..x_k (y_k
replaced by its defining fraction); x_(i+1) is infinitely larger than any
rational function of x_1..x_i.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from ..exactmath import ResiduePair, crt_combine
from ..mpoly import MPoly, rational_content, sign_of
from ..numberfield import QQ, PrimeSet, is_prime
from ..textforms import format_poly, parse_poly

__all__ = [
    "ChainError",
    "PreconditionError",
    "ModulusOutOfRange",
    "DivisibilityError",
    "ResidueInfeasible",
    "InvariantBreach",
    "Generator",
    "Relation",
    "Adjoined",
    "PrimeEntry",
    "ChainElement",
    "ChainState",
    "RatFunc",
    "ResidueAssignment",
    "chain_init",
    "chain_f_step",
    "chain_zhat_step",
    "chain_residue_extend",
    "register_prime",
]

FORMAT_TAG = "weakarith.chain/1"


class ChainError(Exception):
    pass


class PreconditionError(ChainError):
    pass


class ModulusOutOfRange(ChainError):
    def __init__(self, modulus: int, detail: str = ""):
        self.modulus = modulus
        super().__init__(f"modulus {modulus} is outside the tracked range" + (f" ({detail})" if detail else ""))


class DivisibilityError(ChainError):
    def __init__(self, element: str, n: int, residue: int):
        self.element, self.n, self.residue = element, n, residue
        super().__init__(f"{element} has residue {residue} mod {n}, not divisible")


class ResidueInfeasible(ChainError):
    def __init__(self, modulus: int, detail: str = ""):
        self.modulus = modulus
        super().__init__(f"no admissible residue modulo {modulus}" + (f": {detail}" if detail else ""))


class InvariantBreach(ChainError):
    pass


# ---------------------------------------------------------------------------
# rational functions in x_1..x_k


class RatFunc:
    """num/den with MPoly parts over Fraction; no gcd reduction, equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = num if isinstance(num, MPoly) else MPoly.const(Fraction(num))
        self.den = MPoly.const(Fraction(1)) if den is None else den
        if self.den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")

    @staticmethod
    def _lift(x) -> "RatFunc":
        return x if isinstance(x, RatFunc) else RatFunc(x)

    def __add__(self, other):
        o = self._lift(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.num * Fraction(other), self.den)
        o = self._lift(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __pow__(self, k: int):
        return RatFunc(self.num**k, self.den**k)

    def __eq__(self, other):
        o = self._lift(other)
        return self.num * o.den == o.num * self.den

    __hash__ = None

    def sign(self) -> int:
        return sign_of(self.num, _qsign) * sign_of(self.den, _qsign)

    def is_constant(self) -> bool:
        if self.num.is_zero():
            return True
        _, ln = self.num.leading_term()
        _, ld = self.den.leading_term()
        return self.num * ld == self.den * ln


def _qsign(c) -> int:
    return (c > 0) - (c < 0)


# ---------------------------------------------------------------------------
# state records


@dataclass(frozen=True)
class Generator:
    name: str
    kind: str  # "x" or "y"
    k: int
    stage: int


@dataclass(frozen=True)
class Relation:
    k: int
    v: MPoly
    w: MPoly
    stage: int


@dataclass(frozen=True)
class Adjoined:
    a: MPoly
    n: int
    result: MPoly
    stage: int
    residues: tuple  # ((m, r), ...) where determined
    stale: tuple  # moduli where the residue of a/n is not determined


@dataclass(frozen=True)
class PrimeEntry:
    poly: MPoly
    kind: str  # "standard" or "nonstandard"
    certificate: str
    stage: int


@dataclass(frozen=True)
class ChainElement:
    poly: MPoly
    provenance: str = ""


@dataclass(frozen=True)
class ResidueAssignment:
    x: dict
    y: dict


@dataclass(frozen=True, eq=False)
class ChainState:
    S: PrimeSet
    n_max: int
    stage: int = 0
    gens: tuple = ()
    relations: tuple = ()
    adjoined: tuple = ()
    residues: dict = field(default_factory=dict)  # gen name -> {modulus: residue}
    registry: tuple = ()
    kill_log: tuple = ()
    bezout_log: tuple = ()

    # -- static structure ---------------------------------------------
    @property
    def moduli(self) -> list[int]:
        return self.S.monoid_up_to(self.n_max)

    @property
    def tops(self) -> dict[int, int]:
        """Largest tracked power of each prime in S."""
        out = {}
        for p in self.S:
            q = p
            while q * p <= self.n_max:
                q *= p
            out[p] = q
        return out

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.gens]

    def generator(self, name: str) -> Generator:
        for g in self.gens:
            if g.name == name:
                return g
        raise KeyError(name)

    def gen_poly(self, name: str) -> MPoly:
        return MPoly.var(self.names.index(name), Fraction(1))

    def x_count(self) -> int:
        return sum(1 for g in self.gens if g.kind == "x")

    # -- elements -----------------------------------------------------
    def parse(self, text) -> MPoly:
        if isinstance(text, ChainElement):
            return text.poly
        if isinstance(text, MPoly):
            return text
        if isinstance(text, (int, Fraction)):
            return MPoly.const(Fraction(text))
        return parse_poly(str(text), self.names, QQ)

    def fmt(self, elem) -> str:
        return format_poly(self.parse(elem), self.names)

    def element(self, text, provenance: str = "input") -> ChainElement:
        return ChainElement(self.parse(text), provenance)

    def check_coefficients(self, poly: MPoly) -> None:
        for c in poly.terms.values():
            _, cof = self.S.split(Fraction(c).denominator)
            if cof != 1:
                raise PreconditionError(f"coefficient {c} has a denominator outside <S>")

    # -- residues -----------------------------------------------------
    def residue(self, elem, m: int) -> int:
        """Residue of an element modulo m in <S>, via prime powers and CRT."""
        poly = self.parse(elem)
        if m == 1:
            return 0
        exps, cof = self.S.split(m)
        if cof != 1 or m > self.n_max:
            raise ModulusOutOfRange(m, "not a tracked modulus")
        den, h = rational_content(poly)
        pairs = []
        for p, e in sorted(exps.items()):
            a = 0
            d = den
            while d % p == 0:
                d //= p
                a += 1
            big = p ** (e + a)
            if big > self.n_max:
                raise ModulusOutOfRange(big, f"needed to clear denominator {den} of {self.fmt(poly)}")
            vals = [self.residues[name][big] for name in self.names]
            hv = h.evaluate(vals) % big
            pa = p**a
            if hv % pa:
                raise InvariantBreach(f"{self.fmt(poly)} is not integral at {p} under the residue map")
            pe = p**e
            pairs.append(ResiduePair((hv // pa) * pow(d, -1, pe) % pe, pe))
        return crt_combine(pairs).residue

    def residue_profile(self, elem) -> tuple[dict, list]:
        """(residues at the tracked moduli where determined, moduli that are stale)."""
        known, stale = {}, []
        for m in self.moduli:
            try:
                known[m] = self.residue(elem, m)
            except ModulusOutOfRange:
                stale.append(m)
        return known, stale

    def zero_moduli(self, elem) -> list[int]:
        """Tracked n with residue 0 (finite by construction; reported for parsimony audits)."""
        known, _ = self.residue_profile(elem)
        return [m for m, r in known.items() if r == 0]

    def is_phi_unit(self, elem) -> bool:
        return all(self.residue(elem, p) % p != 0 for p in self.S)

    # -- ordering -----------------------------------------------------
    def rational_function(self, elem) -> RatFunc:
        poly = self.parse(elem)
        subs = self._substitutions()
        return poly.evaluate(subs, one=RatFunc(1), zero=RatFunc(0))

    def _substitutions(self) -> list[RatFunc]:
        subs: list[RatFunc] = []
        xidx = {}
        for g in self.gens:
            if g.kind == "x":
                xidx[g.k] = len(xidx)
                subs.append(RatFunc(MPoly.var(xidx[g.k], Fraction(1))))
            else:
                rel = next(r for r in self.relations if r.k == g.k)
                xk = subs[self.names.index(f"x{g.k}")]
                v = rel.v.evaluate(subs, one=RatFunc(1), zero=RatFunc(0))
                w = rel.w.evaluate(subs, one=RatFunc(1), zero=RatFunc(0))
                subs.append((RatFunc(1) - xk * v) / w)
        return subs

    def sign(self, elem) -> int:
        return self.rational_function(elem).sign()

    def compare(self, a, b) -> int:
        return self.sign(self.parse(a) - self.parse(b))

    def equal(self, a, b) -> bool:
        return self.rational_function(a) == self.rational_function(b)

    def is_nonstandard(self, elem) -> bool:
        return not self.rational_function(elem).is_constant()

    # -- registry -----------------------------------------------------
    def find_prime(self, elem):
        """(entry, sign) with elem = sign * entry.poly, or (None, 0)."""
        rf = self.rational_function(elem)
        for entry in self.registry:
            er = self.rational_function(entry.poly)
            if rf == er:
                return entry, 1
            if rf == -er:
                return entry, -1
        return None, 0

    def nonstandard_primes(self) -> list[PrimeEntry]:
        return [e for e in self.registry if e.kind == "nonstandard"]

    def relation_for(self, a: MPoly, b: MPoly):
        """(x_k, y_k) polys with a*x + b*y = 1 from a recorded F-stage, or None."""
        ra, rb = self.rational_function(a), self.rational_function(b)
        for rel in self.relations:
            rv, rw = self.rational_function(rel.v), self.rational_function(rel.w)
            xk, yk = self.gen_poly(f"x{rel.k}"), self.gen_poly(f"y{rel.k}")
            for sa in (1, -1):
                for sb in (1, -1):
                    if ra == rv * sa and rb == rw * sb:
                        return xk * Fraction(sa), yk * Fraction(sb)
                    if ra == rw * sa and rb == rv * sb:
                        return yk * Fraction(sa), xk * Fraction(sb)
        return None

    # -- invariants ---------------------------------------------------
    def check_invariants(self) -> list[str]:
        problems = []
        mods = self.moduli
        for name in self.names:
            table = self.residues[name]
            for m in mods:
                if m not in table:
                    problems.append(f"{name}: no residue mod {m}")
                    continue
                if not 0 <= table[m] < m:
                    problems.append(f"{name}: residue {table[m]} mod {m} not canonical")
            for m in mods:
                for n in mods:
                    if n % m == 0 and m in table and n in table and table[n] % m != table[m]:
                        problems.append(f"{name}: residue mod {n} does not reduce to residue mod {m}")
        for rel in self.relations:
            x, y = f"x{rel.k}", f"y{rel.k}"
            for m in mods:
                try:
                    lhs = (self.residues[y][m] * self.residue(rel.w, m)) % m
                    rhs = (1 - self.residues[x][m] * self.residue(rel.v, m)) % m
                except ModulusOutOfRange:
                    continue
                if lhs != rhs:
                    problems.append(f"relation {rel.k} fails mod {m}")
        for adj in self.adjoined:
            if self.residue(adj.a, adj.n) != 0:
                problems.append(f"adjoined {self.fmt(adj.a)}/{adj.n} but residue is not 0")
            if adj.result * Fraction(adj.n) != adj.a:
                problems.append(f"adjoined {self.fmt(adj.result)} times {adj.n} is not {self.fmt(adj.a)}")
        for entry in self.nonstandard_primes():
            if not self.is_phi_unit(entry.poly):
                problems.append(f"registered prime {self.fmt(entry.poly)} is not a residue unit")
        return problems

    def assert_invariants(self) -> None:
        problems = self.check_invariants()
        if problems:
            raise InvariantBreach("; ".join(problems))

    # -- serialization ------------------------------------------------
    def to_json(self) -> dict:
        f = self.fmt
        return {
            "format": FORMAT_TAG,
            "S": self.S.to_json(),
            "n_max": self.n_max,
            "stage": self.stage,
            "generators": [{"name": g.name, "kind": g.kind, "k": g.k, "stage": g.stage} for g in self.gens],
            "relations": [{"k": r.k, "v": f(r.v), "w": f(r.w), "stage": r.stage} for r in self.relations],
            "adjoined": [
                {
                    "a": f(a.a),
                    "n": a.n,
                    "result": f(a.result),
                    "stage": a.stage,
                    "residues": {str(m): r for m, r in a.residues},
                    "stale": list(a.stale),
                }
                for a in self.adjoined
            ],
            "residues": {
                name: {str(m): r for m, r in sorted(self.residues[name].items())} for name in self.names
            },
            "registry": [
                {"element": f(e.poly), "kind": e.kind, "certificate": e.certificate, "stage": e.stage}
                for e in self.registry
            ],
            "kill_log": list(self.kill_log),
            "bezout_log": list(self.bezout_log),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> "ChainState":
        if data.get("format") != FORMAT_TAG:
            raise PreconditionError(f"not a chain state document (format {data.get('format')!r})")
        gens = tuple(Generator(g["name"], g["kind"], int(g["k"]), int(g["stage"])) for g in data["generators"])
        names = [g.name for g in gens]

        def p(text):
            return parse_poly(text, names, QQ)

        return cls(
            S=PrimeSet(data["S"]),
            n_max=int(data["n_max"]),
            stage=int(data["stage"]),
            gens=gens,
            relations=tuple(Relation(int(r["k"]), p(r["v"]), p(r["w"]), int(r["stage"])) for r in data["relations"]),
            adjoined=tuple(
                Adjoined(
                    p(a["a"]),
                    int(a["n"]),
                    p(a["result"]),
                    int(a["stage"]),
                    tuple(sorted((int(m), int(r)) for m, r in a["residues"].items())),
                    tuple(int(m) for m in a["stale"]),
                )
                for a in data["adjoined"]
            ),
            residues={name: {int(m): int(r) for m, r in tbl.items()} for name, tbl in data["residues"].items()},
            registry=tuple(
                PrimeEntry(p(e["element"]), e["kind"], e["certificate"], int(e["stage"])) for e in data["registry"]
            ),
            kill_log=tuple(data.get("kill_log", [])),
            bezout_log=tuple(data.get("bezout_log", [])),
        )

    @classmethod
    def loads(cls, text: str) -> "ChainState":
        return cls.from_json(json.loads(text))


# ---------------------------------------------------------------------------
# operations


def chain_init(S: PrimeSet, n_max: int) -> ChainState:
    if not isinstance(S, PrimeSet):
        S = PrimeSet(S)
    if not len(S):
        raise PreconditionError("S must be nonempty")
    if n_max < max(S):
        raise PreconditionError(f"N_max = {n_max} must be at least max(S) = {max(S)}")
    return ChainState(S=S, n_max=n_max)


def _crt_spread(state: ChainState, at_tops: dict[int, int]) -> dict[int, int]:
    """Extend residues given at each prime's top power to every tracked modulus."""
    out = {}
    for m in state.moduli:
        exps, _ = state.S.split(m)
        pairs = [ResiduePair(at_tops[p] % (p**e), p**e) for p, e in exps.items()]
        out[m] = crt_combine(pairs).residue
    return out


def chain_residue_extend(state: ChainState, new_generator: str, constraints: dict | None) -> ResidueAssignment:
    """Choose residues for a new x (and y) generator.

    ``constraints`` maps "v" and "w" to residues at each prime's top tracked
    power (keys are the prime powers); ``None`` means a lone generator with no
    relation. For each top power P the smallest unit x is taken such that
    y*w = 1 - x*v is solvable mod P, and y is the smallest solution.
    """
    tops = state.tops
    xs, ys = {}, {}
    for p, P in sorted(tops.items()):
        if constraints is None:
            xs[p] = 1
            continue
        v = constraints["v"][P] % P
        w = constraints["w"][P] % P
        chosen = None
        for x in range(1, P):
            if x % p == 0:
                continue
            target = (1 - x * v) % P
            g = math.gcd(w, P)
            if target % g == 0:
                chosen = x
                mod = P // g
                y = 0 if mod == 1 else (target // g) * pow(w // g, -1, mod) % mod
                break
        if chosen is None:
            raise ResidueInfeasible(P, f"{new_generator}: w = {w}, v = {v}")
        xs[p], ys[p] = chosen, y
    x_table = _crt_spread(state, xs)
    y_table = _crt_spread(state, ys) if constraints is not None else {}
    return ResidueAssignment(x_table, y_table)


def _recheck_units(state: ChainState, stage: int) -> ChainState:
    kept, kills = [], list(state.kill_log)
    for entry in state.registry:
        if entry.kind == "nonstandard":
            try:
                ok = state.is_phi_unit(entry.poly)
                why = "residue is divisible by a prime of S"
            except ModulusOutOfRange as exc:
                ok, why = False, str(exc)
            if not ok:
                kills.append({"element": state.fmt(entry.poly), "stage": stage, "reason": why})
                continue
        kept.append(entry)
    return replace(state, registry=tuple(kept), kill_log=tuple(kills))


def register_prime(state: ChainState, elem) -> ChainState:
    """Add an element to the prime registry if a certificate applies.

    Integers are certified by trial division. Nonstandard candidates must be
    +-(x_k - c) with c built from earlier generators (integer coefficients, or
    an earlier adjoined fraction plus an integer) and a residue unit at every
    prime of S.
    """
    poly = state.parse(elem)
    entry, _ = state.find_prime(poly)
    if entry is not None:
        return state
    if poly.is_constant():
        c = Fraction(poly.constant_term(0))
        if c.denominator != 1 or not is_prime(abs(c.numerator)):
            raise PreconditionError(f"{c} is not a rational prime")
        cert = f"|{c.numerator}| is prime by trial division"
        return replace(state, registry=state.registry + (PrimeEntry(poly, "standard", cert, state.stage),))
    cert = _linear_certificate(state, poly)
    if not state.is_phi_unit(poly):
        raise PreconditionError(f"{state.fmt(poly)} is not a residue unit at every prime of S")
    return replace(state, registry=state.registry + (PrimeEntry(poly, "nonstandard", cert, state.stage),))


def _linear_certificate(state: ChainState, poly: MPoly) -> str:
    idx = max(poly.variables())
    gen = state.gens[idx]
    if gen.kind != "x" or poly.degree_in(idx) != 1:
        raise PreconditionError(f"{state.fmt(poly)} is not of the form x_k - c")
    lead = MPoly({m: c for m, c in poly.terms.items() if len(m) > idx and m[idx]})
    if lead != MPoly.var(idx, Fraction(1)) and lead != MPoly.var(idx, Fraction(-1)):
        raise PreconditionError(f"{state.fmt(poly)}: x_{gen.k} must appear with coefficient +-1 alone")
    sgn = lead.terms[(0,) * idx + (1,)]
    c = (MPoly.var(idx, Fraction(1)) - poly * sgn)
    born_before = _available_before(state, gen.stage, c)
    if not born_before:
        raise PreconditionError(f"{state.fmt(c)} is not known to lie in the stage before {gen.name}")
    if gen.k == 1:
        return f"Z[x1]/({state.fmt(poly)}) is Z"
    return (
        f"quotient by {state.fmt(poly)} at stage {gen.stage} is the previous stage with "
        f"(1 - c*v_{gen.k})/w_{gen.k} adjoined, a subring of a field; "
        f"stays prime later as a residue unit"
    )


def _available_before(state: ChainState, stage: int, c: MPoly) -> bool:
    birth = {g.name: g.stage for g in state.gens}
    if any(birth[state.names[i]] >= stage for i in c.variables()):
        return False
    if all(Fraction(v).denominator == 1 for v in c.terms.values()):
        return True
    for adj in state.adjoined:
        if adj.stage < stage:
            rest = c - adj.result
            if all(Fraction(v).denominator == 1 for v in rest.terms.values()):
                return True
    return False


def chain_f_step(state: ChainState, v=None, w=None) -> ChainState:
    """Adjoin x_k and y_k = (1 - x_k v)/w; degenerate first step adjoins x_1 alone."""
    if state.stage % 2:
        raise PreconditionError(f"an F-step needs an even stage, current stage is {state.stage}")
    new_stage = state.stage + 1
    k = state.x_count() + 1
    xname = f"x{k}"
    if not state.nonstandard_primes():
        if v is not None or w is not None:
            raise PreconditionError("no nonstandard prime yet: the first step adjoins x1 alone")
        if k != 1:
            raise PreconditionError("no registered nonstandard prime to pair")
        assign = chain_residue_extend(state, xname, None)
        gens = state.gens + (Generator(xname, "x", k, new_stage),)
        residues = dict(state.residues)
        residues[xname] = assign.x
        out = replace(state, stage=new_stage, gens=gens, residues=residues)
        out = register_prime(out, out.gen_poly(xname))
        return _recheck_units(out, new_stage)

    if v is None or w is None:
        raise PreconditionError("v and w are required once a nonstandard prime exists")
    vp, wp = state.parse(v), state.parse(w)
    state.check_coefficients(vp)
    state.check_coefficients(wp)
    ev, _ = state.find_prime(vp)
    ew, _ = state.find_prime(wp)
    if ev is None or ew is None:
        missing = state.fmt(vp) if ev is None else state.fmt(wp)
        raise PreconditionError(f"{missing} is not a registered prime")
    if ev is ew:
        raise PreconditionError("v and w are associates, not distinct primes")
    if ew.kind != "nonstandard":
        raise PreconditionError("w must be a nonstandard prime")
    if state.relation_for(vp, wp) is not None:
        raise PreconditionError("this pair already has its F-stage")

    tops = state.tops
    constraints = {
        "v": {P: state.residue(vp, P) for P in tops.values()},
        "w": {P: state.residue(wp, P) for P in tops.values()},
    }
    assign = chain_residue_extend(state, xname, constraints)
    yname = f"y{k}"
    gens = state.gens + (Generator(xname, "x", k, new_stage), Generator(yname, "y", k, new_stage))
    residues = dict(state.residues)
    residues[xname] = assign.x
    residues[yname] = assign.y
    out = replace(
        state,
        stage=new_stage,
        gens=gens,
        relations=state.relations + (Relation(k, vp, wp, new_stage),),
        residues=residues,
    )
    xk, yk = out.gen_poly(xname), out.gen_poly(yname)
    identity = xk * vp + yk * wp
    verified = out.rational_function(identity) == RatFunc(1)
    if not verified:
        raise InvariantBreach(f"Bezout identity for stage {new_stage} does not evaluate to 1")
    record = {
        "stage": new_stage,
        "k": k,
        "v": out.fmt(vp),
        "w": out.fmt(wp),
        "identity": f"{xname}*({out.fmt(vp)}) + {yname}*({out.fmt(wp)}) = 1",
        "verified": verified,
    }
    out = replace(out, bezout_log=out.bezout_log + (record,))
    out = register_prime(out, xk)
    return _recheck_units(out, new_stage)


def chain_zhat_step(state: ChainState, a, n: int) -> tuple[ChainState, ChainElement]:
    """Adjoin a/n; requires n in <S>, n <= N_max and residue of a mod n equal to 0."""
    poly = state.parse(a)
    state.check_coefficients(poly)
    if n < 1:
        raise PreconditionError("n must be positive")
    if not state.S.in_monoid(n):
        raise PreconditionError(f"{n} is not in <S>")
    if n > state.n_max:
        raise ModulusOutOfRange(n)
    r = state.residue(poly, n)
    if r != 0:
        raise DivisibilityError(state.fmt(poly), n, r)
    result = poly * Fraction(1, n)
    if result * Fraction(n) != poly:
        raise InvariantBreach("coefficient-wise division is not exact")
    new_stage = state.stage + 1 if state.stage % 2 else state.stage
    known, stale = state.residue_profile(result)
    adj = Adjoined(poly, n, result, new_stage, tuple(sorted(known.items())), tuple(stale))
    out = replace(state, stage=new_stage, adjoined=state.adjoined + (adj,))
    out = _recheck_units(out, new_stage)
    return out, ChainElement(result, f"Z-hat step at stage {new_stage}: ({out.fmt(poly)})/{n}")
