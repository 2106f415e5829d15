"""Independent oracles used by the tests.

The division oracle searches for quotient coefficients directly: for each
integral-basis coordinate g of a coefficient and every <S>-denominator d up
to the height bound, it asks whether some integer a with |a| bounded gives
n * (a / d) = g. Coordinates are computed with sympy rather
than the library's own basis inverse.
"""

from __future__ import annotations

from fractions import Fraction

import sympy


def integral_coordinates(field, a) -> list[Fraction]:
    basis = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row] for row in field.integral_basis])
    coords = a.padded() if hasattr(a, "padded") else [Fraction(a)] + [Fraction(0)] * (field.degree - 1)
    target = sympy.Matrix([sympy.Rational(c.numerator, c.denominator) for c in coords])
    sol = basis.T.LUsolve(target)
    return [Fraction(int(v.p), int(v.q)) for v in sol]


def height(field, poly) -> int:
    h = 1
    for c in poly.terms.values():
        for q in integral_coordinates(field, field.coerce(c)):
            h = max(h, abs(q.numerator), q.denominator)
    return h


def s_monoid(primes, bound) -> list[int]:
    out = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for m in frontier:
            for p in primes:
                v = m * p
                if v <= bound and v not in out:
                    out.add(v)
                    nxt.append(v)
        frontier = nxt
    return sorted(out)


def brute_force_divide(cfg, poly, n):
    """("witness", {mono: coords}, q0, r) or ("refuted", mono) by exhaustive search."""
    K = cfg.field
    H = height(K, poly) * n
    dens = s_monoid(list(cfg.S), H)
    found = {}
    for mono, c in poly.terms.items():
        if mono == ():
            continue
        hit = []
        for g in integral_coordinates(K, K.coerce(c)):
            coord = None
            for d in dens:
                a = g * d / n
                if a.denominator == 1 and abs(a.numerator) <= H:
                    coord = Fraction(a.numerator, d)
                    break
            if coord is None:
                return ("refuted", mono)
            hit.append(coord)
        found[mono] = hit
    c0 = K.coerce(poly.terms.get((), 0))
    g0 = int(c0 if isinstance(c0, Fraction) else c0.rational_value())
    for q0 in range(-H - 1, H + 2):
        if 0 <= g0 - n * q0 < n:
            return ("witness", found, q0, g0 - n * q0)
    raise AssertionError("no integer quotient found for the constant term")


def random_division_input(cfg, rng, degree=3, h=20):
    """Coefficients with integral-basis coordinates a/d, |a| <= h, d in <S> up to h.

    Half the draws share a numerator factor k so that divisions by n outside
    <S> also succeed now and then.
    """
    from weakarith.mpoly import MPoly

    K = cfg.field
    dens = s_monoid(list(cfg.S), h)
    k = rng.choice([1, 1, 1, 2, 3, 5, 6, 7, 10])
    terms = {(): K.coerce(rng.randint(-h, h))}
    for e in range(1, degree + 1):
        if rng.random() < 0.3:
            continue
        coords = [Fraction(k * rng.randint(-(h // k), h // k), rng.choice(dens)) for _ in range(K.degree)]
        acc = K.zero
        for c, row in zip(coords, K.integral_basis):
            acc = acc + K.element(row) * c
        if not acc.is_zero():
            terms[(e,)] = acc
    return MPoly(terms)
