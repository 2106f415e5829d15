"""Scenario files: a model description plus a scripted list of checks.

A scenario is JSON::

    {"name": "...", "model": "mb" | "mb_multi" | "shepherdson" | "chain" | "puiseux",
     "params": {...}, "steps": [{"op": "...", "args": {...}, "expect": {...}}, ...]}

Each step produces a record ``{"outcome": ..., ...}``; ``expect`` lists keys
that must match that record. See ``docs/formats.md`` for the full schema.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .axioms import (
    BezoutPending,
    SoundnessError,
    Undecided,
    bezout_witness,
    constructed_normality_instance,
    normality_check,
    oi_obstruction,
    polyfield_gcd,
    zr_divide,
)
from .exactmath import RatPoly
from .models.chain import (
    ChainError,
    ChainState,
    InvariantBreach,
    chain_f_step,
    chain_init,
    chain_zhat_step,
    register_prime,
)
from .models.mb import MBConfig, Rejection, mb_admit, mb_arith, mb_compare
from .models.shepherdson import shep_admit
from .numberfield import QQ, NumberField, PrimeSet
from .puiseux import (
    InsufficientTruncation,
    SIGN_NAMES,
    expand_roots,
    format_series_pairs,
    parse_series,
    parse_series_poly,
    plug_back_ok,
    ps_arith,
    ps_floor,
    ps_sign,
)
from .textforms import ParseError, format_poly, parse_poly, parse_rational

__all__ = ["ScenarioError", "Breach", "Session", "load_scenario", "run_scenario", "dumps"]

MODELS = ("mb", "mb_multi", "shepherdson", "chain", "puiseux")
ORDER_NAMES = {-1: "less", 0: "equal", 1: "greater"}


class ScenarioError(ValueError):
    """Malformed scenario or step arguments (exit code 2)."""


class Breach(RuntimeError):
    """An internal invariant failed (exit code 3)."""


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_scenario(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: invalid JSON ({exc})") from None
    validate_scenario(data)
    return data


def validate_scenario(data) -> None:
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a JSON object")
    for key in ("name", "model", "steps"):
        if key not in data:
            raise ScenarioError(f"scenario is missing {key!r}")
    if data["model"] not in MODELS:
        raise ScenarioError(f"unknown model kind {data['model']!r}; expected one of {', '.join(MODELS)}")
    if not isinstance(data["steps"], list):
        raise ScenarioError("steps must be a list")
    for i, step in enumerate(data["steps"]):
        if not isinstance(step, dict) or "op" not in step:
            raise ScenarioError(f"step {i} needs an 'op'")


def parse_field(desc) -> NumberField | type(QQ):
    if desc is None or desc == "rational" or desc == {"preset": "rational"}:
        return QQ
    if isinstance(desc, str):
        return NumberField.preset(desc)
    try:
        if "preset" in desc:
            return NumberField.preset(desc["preset"])
        mp = RatPoly([parse_rational(c) for c in desc["min_poly"]])
        emb = tuple(parse_rational(c) for c in desc["embedding"])
        basis = desc.get("integral_basis")
        if basis is not None:
            basis = [[parse_rational(c) for c in row] for row in basis]
        return NumberField(mp, emb, basis, name=desc.get("name"))
    except (KeyError, TypeError) as exc:
        raise ScenarioError(f"bad field description: {exc}") from None


def _prime_set(desc) -> PrimeSet:
    if isinstance(desc, str):
        desc = [s for s in desc.replace(" ", "").split(",") if s]
    try:
        return PrimeSet(int(parse_rational(p)) for p in desc)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from None


def mb_config(params: dict, multi: bool = False) -> MBConfig:
    field = parse_field(params.get("field", "sqrt2"))
    S = _prime_set(params.get("S", []))
    q = params.get("q")
    q = None if q is None else int(parse_rational(q))
    k = int(params.get("indeterminates", 2 if multi else 1))
    coeffs = params.get("coefficients", "field" if multi else "localized")
    return MBConfig(field, S, q, k, coeffs)


@dataclass
class Session:
    """Model context for running steps."""

    kind: str
    params: dict
    depth: int = 6
    seed: int = 0
    cfg: MBConfig | None = None
    field: object = QQ
    state: ChainState | None = None
    rng: random.Random | None = None

    @classmethod
    def build(cls, kind: str, params: dict, depth=None, nmax=None, seed: int = 0) -> "Session":
        params = dict(params or {})
        try:
            s = cls(kind, params, depth=int(depth or params.get("depth", 6)), seed=seed)
            if kind in ("mb", "mb_multi"):
                s.cfg = mb_config(params, multi=kind == "mb_multi")
                s.field = s.cfg.field
            elif kind in ("shepherdson", "puiseux"):
                s.field = parse_field(params.get("field", "rational"))
            else:
                n_max = int(nmax or params.get("n_max", 24))
                s.state = chain_init(_prime_set(params.get("S", [])), n_max)
        except (ValueError, ZeroDivisionError, KeyError) as exc:
            raise ScenarioError(f"parameters: {exc}") from None
        s.rng = random.Random(seed)
        return s

    # -- helpers ------------------------------------------------------
    def mb(self, text):
        res = mb_admit(text, self.cfg)
        if isinstance(res, Rejection):
            raise ScenarioError(f"{text!r} is not an element of the model: {res.reason}")
        return res

    def fmt(self, obj) -> str:
        if self.state is not None:
            return self.state.fmt(obj)
        if hasattr(obj, "poly"):
            obj = obj.poly
        return format_poly(obj, self.cfg.variables)

    def same(self, expected, actual) -> bool:
        if isinstance(expected, dict):
            return isinstance(actual, dict) and all(
                k in actual and self.same(v, actual[k]) for k, v in expected.items()
            )
        if isinstance(expected, list):
            return (
                isinstance(actual, list)
                and len(expected) == len(actual)
                and all(self.same(e, a) for e, a in zip(expected, actual))
            )
        if str(expected) == str(actual):
            return True
        if isinstance(expected, bool) or isinstance(actual, bool):
            return False
        try:
            return self._parse_value(str(expected)) == self._parse_value(str(actual))
        except Exception:
            return False

    def _parse_value(self, text):
        if self.state is not None:
            return self.state.parse(text)
        if self.cfg is not None:
            return parse_poly(text, self.cfg.variables, self.cfg.field)
        return parse_series(text, self.field)

    # -- execution ----------------------------------------------------
    def run_step(self, op: str, args: dict) -> dict:
        fn = getattr(self, "op_" + op.replace("-", "_"), None)
        if fn is None:
            raise ScenarioError(f"unknown operation {op!r}")
        return fn(**args)

    def _need(self, *kinds):
        if self.kind not in kinds:
            raise ScenarioError(f"operation needs model kind {' or '.join(kinds)}, scenario is {self.kind}")

    # M_B ---------------------------------------------------------------
    def op_admit(self, g):
        self._need("mb", "mb_multi")
        res = mb_admit(g, self.cfg)
        if isinstance(res, Rejection):
            return {"outcome": "rejected", **res.to_json()}
        return {"outcome": "accepted", "element": self.fmt(res)}

    def op_compare(self, a, b):
        if self.state is not None:
            return {"outcome": ORDER_NAMES[self.state.compare(a, b)]}
        self._need("mb", "mb_multi")
        return {"outcome": ORDER_NAMES[mb_compare(self.mb(a), self.mb(b))]}

    def op_arith(self, a, b, op):
        self._need("mb", "mb_multi")
        res = mb_arith(self.mb(a), self.mb(b), op)
        if isinstance(mb_admit(res.poly, self.cfg), Rejection):
            raise Breach("ring closure: arithmetic result left the model")
        return {"outcome": "ok", "result": self.fmt(res)}

    def op_zr_divide(self, g, n):
        n = int(n)
        if self.state is not None:
            try:
                res = zr_divide(self.state, g, n)
            except Undecided as exc:
                return {"outcome": "undecided", "reason": str(exc)}
            if res.state is not None:
                self.state = res.state
            rep = res.report(self.state.fmt)
        else:
            self._need("mb", "mb_multi")
            res = zr_divide(self.cfg, self.mb(g), n)
            rep = res.report(self.fmt)
        return {"outcome": rep.outcome, **rep.details, "audit_length": len(rep.audit)}

    def op_normality(self, u, v, zs):
        self._need("mb", "mb_multi")
        verdict = normality_check(self.cfg, self.mb(u), self.mb(v), [self.mb(z) for z in zs])
        rep = verdict.report(self.fmt, {"u": u, "v": v, "zs": zs})
        return {"outcome": rep.outcome, **rep.details}

    def op_normality_sweep(self, count=100, s=None, degree=2):
        self._need("mb", "mb_multi")
        s_max = int(s or max(1, self.cfg.normality_level))
        tally = {}
        for i in range(int(count)):
            s_i = 1 + i % s_max
            u, v, zs, h = constructed_normality_instance(self.cfg, self.rng, s_i, degree=int(degree))
            verdict = normality_check(self.cfg, u, v, zs)
            if verdict.outcome == "member" and verdict.quotient != h:
                raise Breach("normality member quotient differs from the constructed root")
            tally[verdict.outcome] = tally.get(verdict.outcome, 0) + 1
        outcome = "member" if set(tally) == {"member"} else "mixed"
        return {"outcome": outcome, "tally": tally, "count": int(count)}

    def op_gcd(self, a, b):
        K = self.field
        pa = _univariate(a, K)
        pb = _univariate(b, K)
        g = polyfield_gcd(pa, pb, K)
        return {"outcome": "ok", "gcd": [K.format(c) for c in g.coeffs]}

    # chain -------------------------------------------------------------
    def _chain_step(self, fn, *a):
        self._need("chain")
        try:
            out = fn(*a)
        except InvariantBreach as exc:
            raise Breach(str(exc)) from None
        return out

    def _after_chain(self):
        problems = self.state.check_invariants()
        if problems:
            raise Breach("; ".join(problems))

    def op_register(self, element):
        self._need("chain")
        self.state = register_prime(self.state, element)
        entry, _ = self.state.find_prime(element)
        return {"outcome": "registered", "element": self.state.fmt(entry.poly), "certificate": entry.certificate}

    def op_f_step(self, v=None, w=None, register=True):
        self._need("chain")
        if register and v is not None and w is not None:
            for e in (v, w):
                self.state = register_prime(self.state, e)
        self.state = self._chain_step(chain_f_step, self.state, v, w)
        self._after_chain()
        rec = self.state.bezout_log[-1] if v is not None else {"k": 1}
        return {"outcome": "ok", "stage": self.state.stage, **rec}

    def op_zhat_step(self, a, n):
        self._need("chain")
        self.state, e = self._chain_step(chain_zhat_step, self.state, a, int(n))
        self._after_chain()
        if e.poly * Fraction(int(n)) != self.state.parse(a):
            raise Breach("n * (a/n) != a")
        return {"outcome": "ok", "stage": self.state.stage, "element": self.state.fmt(e.poly)}

    def op_bezout(self, a, b):
        self._need("chain")
        res = bezout_witness(self.state, a, b)
        if isinstance(res, BezoutPending):
            return {"outcome": "pending", "pair": list(res.pair)}
        f = self.state.fmt
        return {"outcome": "witness", "z": f(res.z), "t": f(res.t), "d": f(res.d)}

    def op_residue(self, element, n):
        self._need("chain")
        return {"outcome": "ok", "residue": self.state.residue(element, int(n))}

    # series ------------------------------------------------------------
    def op_series_sign(self, series):
        return {"outcome": SIGN_NAMES[ps_sign(parse_series(series, self.field))]}

    def op_series_arith(self, a, b, op):
        res = ps_arith(parse_series(a, self.field), parse_series(b, self.field), op)
        return {"outcome": "ok", "result": str(res), "pairs": format_series_pairs(res)}

    def op_floor(self, series):
        s = parse_series(series, self.field)
        try:
            rep = ps_floor(s)
        except InsufficientTruncation as exc:
            return {"outcome": "insufficient_truncation", "reason": str(exc)}
        out = {**rep.to_json(), "outcome": "ok", "integer_part": format_series_pairs(rep.integer_part),
             "remainder": format_series_pairs(rep.remainder)}
        if s.is_exact and isinstance(shep_admit(rep.integer_part), Rejection):
            raise Breach("integer part is not an admissible element")
        return out

    def op_shep_admit(self, series):
        res = shep_admit(parse_series(series, self.field))
        if isinstance(res, Rejection):
            return {"outcome": "rejected", **res.to_json()}
        return {"outcome": "accepted"}

    def op_roots(self, poly, p=None, depth=None):
        f = parse_series_poly(poly, self.field)
        p = int(p or max(f.degree, 1))
        roots = expand_roots(f, p, int(depth or self.depth))
        return {
            "outcome": "ok",
            "roots": [str(r.series) for r in roots],
            "exact": [r.exact for r in roots],
            "plug_back": [plug_back_ok(f, r) for r in roots],
        }

    # model independent -------------------------------------------------
    def op_oi_obstruction(self, P, p, certs=None):
        rep = oi_obstruction(parse_univariate_rational(P), int(p), certs)
        return {"outcome": rep.conclusion, **rep.to_json()}


def _univariate(desc, field):
    if isinstance(desc, list):
        return [field.parse(str(c)) if isinstance(c, str) else field.coerce(c) for c in desc]
    poly = parse_poly(desc, ["x"], field)
    deg = max(poly.degree_in(0), 0)
    return [poly.terms.get((i,) if i else (), field.zero) for i in range(deg + 1)]


def parse_univariate_rational(desc) -> RatPoly:
    """Ascending coefficient list (list or "a, b, c" text) or a polynomial in t."""
    if isinstance(desc, RatPoly):
        return desc
    if isinstance(desc, list):
        return RatPoly([parse_rational(c) for c in desc])
    text = str(desc).strip()
    if "t" in text:
        poly = parse_poly(text, ["t"], QQ)
        deg = max(poly.degree_in(0), 0)
        return RatPoly([poly.terms.get((i,) if i else (), 0) for i in range(deg + 1)])
    text = text.strip("[]")
    return RatPoly([parse_rational(c) for c in text.split(",") if c.strip()])


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


def run_scenario(data: dict, seed: int = 0, depth=None, nmax=None, timing: bool = True) -> tuple[dict, int]:
    """Execute every step; returns (report, exit code)."""
    validate_scenario(data)
    session = Session.build(data["model"], data.get("params", {}), depth=depth, nmax=nmax, seed=seed)
    records = []
    failed = 0
    breach = None
    for i, step in enumerate(data["steps"]):
        args = step.get("args", {})
        expect = step.get("expect")
        t0 = time.perf_counter()
        try:
            outcome = session.run_step(step["op"], args)
        except (Breach, SoundnessError) as exc:
            breach = f"step {i} ({step['op']}): {exc}"
            outcome = {"outcome": "invariant_breach", "invariant": str(exc)}
        except (ScenarioError, ParseError) as exc:
            raise ScenarioError(f"step {i} ({step['op']}): {exc}") from None
        except TypeError as exc:
            raise ScenarioError(f"step {i} ({step['op']}): bad arguments ({exc})") from None
        except (ChainError, ValueError, ArithmeticError) as exc:
            outcome = {"outcome": "error", "error": type(exc).__name__, "message": str(exc)}
        wall = time.perf_counter() - t0
        outcome = _jsonable(outcome)
        if expect is None:
            passed = outcome["outcome"] not in ("error", "invariant_breach")
        else:
            passed = session.same(expect, outcome)
        failed += not passed
        rec = {"index": i, "op": step["op"], "args": _jsonable(args), "outcome": outcome, "passed": passed}
        if expect is not None:
            rec["expect"] = _jsonable(expect)
        rec["wall_time"] = round(wall, 6) if timing else 0.0
        records.append(rec)
        if breach:
            break
    for j in range(len(records), len(data["steps"])):
        step = data["steps"][j]
        records.append(
            {"index": j, "op": step["op"], "args": _jsonable(step.get("args", {})), "outcome": {"outcome": "skipped"},
             "passed": False, "wall_time": 0.0}
        )
    audit = {}
    if session.state is not None:
        sj = session.state.to_json()
        audit = {k: sj[k] for k in ("residues", "kill_log", "registry", "bezout_log", "adjoined", "stage")}
    elif session.cfg is not None:
        audit = {"config": session.cfg.to_json()}
    report = {
        "scenario": data["name"],
        "model": data["model"],
        "seed": seed,
        "steps": records,
        "summary": {
            "steps": len(data["steps"]),
            "executed": sum(r["outcome"]["outcome"] != "skipped" for r in records),
            "passed": sum(r["passed"] for r in records),
            "failed": failed,
            "ok": failed == 0 and breach is None,
        },
        "audit": audit,
    }
    if breach:
        report["summary"]["invariant_breach"] = breach
        return report, 3
    return report, 0 if failed == 0 else 1
