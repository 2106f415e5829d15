from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from weakarith.exactmath import (
    CRTIncompatible,
    RatPoly,
    ResiduePair,
    cauchy_bound,
    count_roots_in,
    crt_combine,
    isolate_roots,
    rational_roots,
    refine_interval,
    sign_variations,
    squarefree_part,
    sturm_chain,
)

T = sympy.Symbol("t")


def sympy_real_roots(p: RatPoly):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)], T).real_roots()


# -- examples ---------------------------------------------------------------


def test_sturm_chain_quadratic():
    assert sturm_chain(RatPoly([-2, 0, 1])) == [RatPoly([-2, 0, 1]), RatPoly([0, 2]), RatPoly([2])]


def test_sturm_chain_linear():
    assert sturm_chain(RatPoly([0, 1])) == [RatPoly([0, 1]), RatPoly([1])]


def test_sturm_chain_repeated_root_uses_squarefree_part():
    chain = sturm_chain(RatPoly([1, -2, 1]))
    assert all(not p.is_zero() for p in chain)
    # last entry is gcd(p, p') up to a constant: the repeated factor t - 1
    assert chain[-1].monic() == RatPoly([-1, 1])
    assert count_roots_in(RatPoly([1, -2, 1]), 0, 2) == 1


@pytest.mark.parametrize(
    "coeffs, lo, hi, expected",
    [([-2, 0, 1], 0, 2, 1), ([-2, 0, 1], -2, 2, 2), ([7, -2, 0, 1], -3, 0, 1)],
)
def test_count_roots_examples(coeffs, lo, hi, expected):
    assert count_roots_in(RatPoly(coeffs), lo, hi) == expected


def test_count_roots_matches_dense_sampling():
    p = RatPoly([7, -2, 0, 1])
    changes = 0
    x = Fraction(-3)
    prev = p(x)
    while x < 0:
        x += Fraction(1, 64)
        cur = p(x)
        if prev * cur < 0:
            changes += 1
        prev = cur
    assert changes == count_roots_in(p, -3, 0)


def test_isolate_sqrt2():
    ivs = isolate_roots(RatPoly([-2, 0, 1]))
    assert len(ivs) == 2
    neg, pos = ivs
    assert neg.hi <= pos.lo
    # the isolated roots sit in (-2, 0) and (0, 2): check via Sturm counts on the overlap
    assert count_roots_in(neg.polynomial, max(neg.lo, -2), min(neg.hi, 0)) == 1
    assert count_roots_in(pos.polynomial, max(pos.lo, 0), min(pos.hi, 2)) == 1


def test_isolate_no_real_roots():
    assert isolate_roots(RatPoly([1, 0, 1])) == []


def test_isolate_separates_integer_roots():
    p = RatPoly.from_roots([0, 1, 2])
    ivs = isolate_roots(p)
    assert len(ivs) == 3
    for iv, r in zip(ivs, [0, 1, 2]):
        assert iv.lo < r <= iv.hi


def test_refine_to_width():
    pos = isolate_roots(RatPoly([-2, 0, 1]))[1]
    iv = refine_interval(pos, Fraction(1, 8))
    assert iv.width <= Fraction(1, 8)
    assert iv.lo ** 2 < 2 <= iv.hi ** 2


def test_refine_is_idempotent_when_narrow():
    iv = refine_interval(isolate_roots(RatPoly([-2, 0, 1]))[1], Fraction(1, 1000))
    assert refine_interval(iv, Fraction(1, 8)) is iv


def test_refine_rational_root():
    iv = refine_interval(isolate_roots(RatPoly([-3, 1]))[0], Fraction(1, 100))
    assert iv.width <= Fraction(1, 100)
    assert iv.lo < 3 <= iv.hi


def test_crt_examples():
    assert crt_combine([ResiduePair(1, 2), ResiduePair(2, 3)]) == ResiduePair(5, 6)
    assert crt_combine([ResiduePair(0, 4), ResiduePair(2, 6)]) == ResiduePair(8, 12)
    with pytest.raises(CRTIncompatible):
        crt_combine([ResiduePair(1, 2), ResiduePair(0, 2)])


def test_residue_pair_rejects_unreduced():
    with pytest.raises(ValueError):
        ResiduePair(5, 3)
    with pytest.raises(ValueError):
        ResiduePair(0, 0)


def test_rational_roots_and_cauchy_bound():
    p = RatPoly([-6, 11, -6, 1])
    assert rational_roots(p) == [1, 2, 3]
    assert cauchy_bound(p) == 1 + 11
    assert rational_roots(RatPoly([-2, 0, 1])) == []


# -- properties --------------------------------------------------------------

small = st.integers(-9, 9)
coeff_lists = st.lists(small, min_size=2, max_size=6).filter(lambda c: c[-1] != 0)


@pytest.mark.property
@given(coeff_lists, st.integers(-20, 20), st.integers(1, 40), st.integers(1, 7))
def test_halving_additivity(coeffs, lo_num, span, den):
    p = squarefree_part(RatPoly(coeffs))
    if p.degree < 1:
        return
    lo = Fraction(lo_num, den)
    hi = lo + Fraction(span, den)
    mid = (lo + hi) / 2
    if p(lo) == 0 or p(hi) == 0 or p(mid) == 0:
        return
    assert count_roots_in(p, lo, hi) == count_roots_in(p, lo, mid) + count_roots_in(p, mid, hi)


@pytest.mark.property
@given(coeff_lists)
def test_isolation_count_matches_oracle(coeffs):
    p = RatPoly(coeffs)
    ivs = isolate_roots(p)
    roots = sorted(set(sympy_real_roots(p)))
    assert len(ivs) == len(roots)
    sq = squarefree_part(p)
    if sq.degree >= 1:
        chain = sturm_chain(sq)
        B = cauchy_bound(sq)
        total = sign_variations([q(-B) for q in chain]) - sign_variations([q(B) for q in chain])
        assert total == len(ivs)
    for iv, r in zip(ivs, roots):
        assert iv.lo < r <= iv.hi


@pytest.mark.property
@given(st.lists(st.tuples(st.integers(0, 200), st.sampled_from([2, 3, 4, 6, 8, 9, 12, 5])), min_size=1, max_size=4),
       st.randoms(use_true_random=False))
def test_crt_order_independent(raw, rnd):
    base = 2 ** 5 * 3 ** 3 * 5
    value = raw[0][0]
    pairs = [ResiduePair.of(value, m) for _, m in raw]
    shuffled = list(pairs)
    rnd.shuffle(shuffled)
    a = crt_combine(pairs)
    assert a == crt_combine(shuffled)
    assert value % a.modulus == a.residue
    assert base % a.modulus == 0


@pytest.mark.property
@given(st.integers(0, 500), st.sampled_from([2, 4, 8, 3, 9, 6]), st.sampled_from([3, 5, 12, 18]),
       st.sampled_from([7, 10, 16]))
def test_crt_associative(v, m1, m2, m3):
    p1, p2, p3 = (ResiduePair.of(v, m) for m in (m1, m2, m3))
    left = crt_combine([crt_combine([p1, p2]), p3])
    right = crt_combine([p1, crt_combine([p2, p3])])
    assert left == right == crt_combine([p1, p2, p3])


@pytest.mark.property
@given(coeff_lists, st.integers(1, 64))
def test_refinement_keeps_root(coeffs, k):
    for iv in isolate_roots(RatPoly(coeffs)):
        out = refine_interval(iv, Fraction(1, k))
        assert out.width <= Fraction(1, k)
        assert count_roots_in(out.polynomial, out.lo, out.hi) == 1
