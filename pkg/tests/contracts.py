"""Postcondition checks wrapped around the public operations during tests.

``install()`` replaces each listed function, in every loaded ``weakarith``
module that refers to it, with a wrapper that validates the return value.
Internal call sites that imported the name directly are covered as well.
"""

from __future__ import annotations

import functools
import math
import sys
from fractions import Fraction

import weakarith.axioms as ax
import weakarith.exactmath as em
import weakarith.models.chain as ch
import weakarith.models.mb as mbm
import weakarith.numberfield as nf
import weakarith.puiseux as pu

CALLS: dict[str, int] = {}


class ContractViolation(AssertionError):
    pass


def require(cond, msg):
    if not cond:
        raise ContractViolation(msg)


def canonical(q) -> None:
    require(isinstance(q, Fraction), f"{q!r} is not a Fraction")
    require(q.denominator > 0 and math.gcd(q.numerator, q.denominator) == 1, f"{q!r} not reduced")


def canonical_element(a) -> None:
    if isinstance(a, Fraction):
        canonical(a)
    elif isinstance(a, nf.FieldElement):
        require(len(a.coords) <= a.field.degree, "too many power-basis coordinates")
        for c in a.coords:
            canonical(c)


def _poly(p) -> None:
    for c in p.coeffs:
        canonical_element(c)


def _isolate(result, p):
    prev = None
    for iv in result:
        canonical(iv.lo)
        canonical(iv.hi)
        require(iv.validate(), f"interval {iv} does not isolate one root")
        require(prev is None or prev.hi <= iv.lo, "intervals overlap or are unsorted")
        prev = iv


def _refine(result, iv, width):
    require(result.width <= Fraction(width), "refinement wider than requested")
    require(iv.lo <= result.lo and result.hi <= iv.hi, "refinement left the original interval")
    require(result.validate(), "refined interval lost its root")


def _crt(result, pairs):
    require(0 <= result.residue < result.modulus, "residue out of range")
    for pr in pairs:
        require(result.modulus % pr.modulus == 0, "combined modulus not a common multiple")
        require(result.residue % pr.modulus == pr.residue, f"combined residue disagrees with {pr}")


def _nf_arith(result, a, b, op):
    canonical_element(result)
    if op == "div":
        require(result * b == a, "quotient does not re-multiply")


def _integrality(result, a, S):
    if result.member:
        require(S.in_monoid(result.denominator), "member with a non-<S> denominator")
    else:
        require(result.offending_prime not in S and result.denominator % result.offending_prime == 0,
                "offending prime not a factor of the denominator outside S")


def _min_poly(result, a):
    _poly(result)
    require(result.lc == 1, "minimal polynomial not monic")
    acc = a.field.zero
    for c in reversed(result.coeffs):
        acc = acc * a + c
    require(acc.is_zero(), "minimal polynomial does not vanish at the element")


def _series(result, *args):
    for c in result.terms.values():
        require(not (c == 0), "series stores a zero coefficient")
        canonical_element(c)
    for e in result.terms:
        canonical(e)


def _floor(result, a):
    require(result.remainder_sign in (0, 1), "remainder negative")
    require(result.remainder_minus_one_sign == -1, "remainder not below one")
    require(pu.ps_sign(a - result.integer_part - result.remainder) == 0, "a != b + remainder")


def _mb_arith(result, a, b, op):
    res = mbm.mb_admit(result.poly, result.config)
    require(not isinstance(res, mbm.Rejection), f"mb_arith left the ring: {getattr(res, 'reason', '')}")


def _chain_state(state):
    problems = state.check_invariants()
    require(not problems, f"chain invariants: {problems}")


def _f_step(result, *args, **kw):
    _chain_state(result)


def _zhat(result, state, a, n):
    st, e = result
    _chain_state(st)
    a_poly = st.parse(a) if isinstance(a, str) else getattr(a, "poly", a)
    require(st.equal(e.poly * n, a_poly), "n * e != a")


def _zr(result, model, g, n):
    if result.is_witness:
        require(0 <= result.r < n, "remainder out of range")
        g_poly = getattr(result.g, "poly", result.g)
        q_poly = getattr(result.q, "poly", result.q)
        if isinstance(model, ch.ChainState):
            require(model.equal(q_poly * n + result.r, g_poly) or result.state.equal(q_poly * n + result.r, g_poly),
                    "witness does not re-multiply")
        else:
            K = model.field
            lhs = q_poly * K.coerce(n) + K.coerce(result.r)
            require(lhs == g_poly, "witness does not re-multiply")


def _normality(result, cfg, u, v, zs):
    if result.outcome == "member":
        q = result.quotient.poly
        up, vp = (x.poly if isinstance(x, mbm.MBElement) else cfg.element(x).poly for x in (u, v))
        require((vp * q - up).is_zero(), "v * quotient != u")


def _gcd(result, a, b, field=nf.QQ):
    require(result.is_zero() or result.lc == field.coerce(1), "gcd not monic")


def _bezout(result, state, a, b):
    if isinstance(result, ax.BezoutWitness):
        ra = state.rational_function(_product(state, a))
        rb = state.rational_function(_product(state, b))
        lhs = ra * state.rational_function(result.z) + rb * state.rational_function(result.t)
        require(lhs == state.rational_function(result.d), "a z + b t != d")
        require(state.equal(result.d * result.a_over_d, _product(state, a)), "d does not divide a")
        require(state.equal(result.d * result.b_over_d, _product(state, b)), "d does not divide b")


def _product(state, desc):
    from weakarith.mpoly import MPoly

    if isinstance(desc, (list, tuple)):
        acc = MPoly.const(Fraction(1))
        for item in desc:
            if isinstance(item, (list, tuple)):
                f, k = item
                acc = acc * _product(state, f) ** int(k)
            else:
                acc = acc * _product(state, item)
        return acc
    if isinstance(desc, int):
        return MPoly.const(Fraction(desc))
    if isinstance(desc, str):
        return state.parse(desc)
    return getattr(desc, "poly", desc)


def _oi(result, P, p, certs=None):
    if result.conclusion == "obstructed":
        require(not result.rational_roots, "obstructed despite a rational root")
    require(result.bracket["holds"], "sanity bracket failed")


CHECKS = [
    (em, "isolate_roots", _isolate),
    (em, "refine_interval", _refine),
    (em, "crt_combine", _crt),
    (nf, "nf_arith", _nf_arith),
    (nf, "s_integrality_check", _integrality),
    (nf, "element_min_poly", _min_poly),
    (pu, "ps_arith", _series),
    (pu, "ps_floor", _floor),
    (mbm, "mb_arith", _mb_arith),
    (ch, "chain_f_step", _f_step),
    (ch, "chain_zhat_step", _zhat),
    (ax, "zr_divide", _zr),
    (ax, "normality_check", _normality),
    (ax, "polyfield_gcd", _gcd),
    (ax, "bezout_witness", _bezout),
    (ax, "oi_obstruction", _oi),
]


def _wrap(name, fn, check):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        result = fn(*args, **kwargs)
        check(result, *args, **kwargs)
        CALLS[name] = CALLS.get(name, 0) + 1
        return result

    wrapper.__wrapped_contract__ = True
    return wrapper


def install() -> None:
    for mod, name, check in CHECKS:
        original = getattr(mod, name)
        if getattr(original, "__wrapped_contract__", False):
            continue
        wrapped = _wrap(name, original, check)
        for mname, m in list(sys.modules.items()):
            if mname.startswith("weakarith") and m is not None and getattr(m, name, None) is original:
                setattr(m, name, wrapped)
