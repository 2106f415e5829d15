import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weakarith.models import (
    ChainState,
    DivisibilityError,
    MBConfig,
    MBElement,
    ModulusOutOfRange,
    PreconditionError,
    Rejection,
    ResidueInfeasible,
    chain_f_step,
    chain_init,
    chain_residue_extend,
    chain_zhat_step,
    mb_admit,
    mb_arith,
    mb_compare,
    random_element,
    register_prime,
    shep_admit,
)
from weakarith.models.chain import RatFunc
from weakarith.numberfield import NumberField, PrimeSet
from weakarith.puiseux import parse_series, ps_floor, ps_sign

SQRT2 = NumberField.preset("sqrt2")
CBRT2 = NumberField.preset("cbrt2")


def cfg(primes=(2, 3), field=SQRT2, **kw):
    return MBConfig(field, PrimeSet(primes), **kw)


# -- M_B ---------------------------------------------------------------------


def test_admit_examples():
    assert isinstance(mb_admit("[0, 1/3]*x", cfg([3])), MBElement)
    rej = mb_admit("[0, 1/3]*x", cfg([2]))
    assert isinstance(rej, Rejection)
    assert rej.monomial == (1,) and rej.offending_prime == 3
    assert rej.coefficient == SQRT2([0, Fraction(1, 3)])
    rej = mb_admit("[0, 1]", cfg([3]))
    assert isinstance(rej, Rejection) and rej.monomial == ()


def test_config_validation():
    with pytest.raises(ValueError):
        cfg([2, 3], q=3)
    with pytest.raises(ValueError):
        cfg([2, 3], q=9)
    with pytest.raises(ValueError):
        MBConfig(SQRT2, PrimeSet([]))
    assert cfg().normality_level == 1 and cfg(field=CBRT2).normality_level == 2


def test_compare_examples():
    c = cfg()
    e = c.element
    assert mb_compare(e("x"), e("1000000000")) == 1
    assert mb_compare(e("2*x + 1"), e("2*x")) == 1
    assert mb_compare(e("[0, 1]*x"), e("x")) == 1
    assert mb_compare(e("x"), e("x")) == 0
    assert mb_compare(e("-x + 5"), e("0")) == -1


def test_arith_examples():
    c = cfg()
    e = c.element
    assert mb_arith(e("x"), e("x"), "mul") == e("x^2")
    assert mb_arith(e("[0, 1/3]*x + 1"), e("3"), "mul") == e("[0, 1]*x + 3")
    assert mb_arith(e("[0, 1]*x + 1"), e("[0, 1]*x - 1"), "mul") == e("2*x^2 - 1")


def test_multi_indeterminate_field_coefficients():
    c = MBConfig(CBRT2, PrimeSet([2]), indeterminates=2, coefficients="field")
    assert c.variables == ["x1", "x2"]
    assert isinstance(mb_admit("[0, 1/7]*x1*x2 + 3", c), MBElement)
    assert isinstance(mb_admit("x1 + 1/2", c), Rejection)
    assert mb_compare(c.element("x2"), c.element("x1^9")) == 1


def test_shep_admit_examples():
    assert not isinstance(shep_admit(parse_series("x^(1/2) + 5")), Rejection)
    assert isinstance(shep_admit(parse_series("x^(1/2) + 1/2")), Rejection)
    assert isinstance(shep_admit(parse_series("x^(-1) + 1")), Rejection)
    el = shep_admit(parse_series("lam*x + 2", SQRT2))
    certs = el.certificates()
    assert certs[0]["min_poly"] == ["-2", "0", "1"]


mb_configs = st.sampled_from([cfg(), cfg([3]), cfg([2, 3], field=CBRT2), cfg([5, 7])])


@pytest.mark.property
@given(mb_configs, st.randoms(use_true_random=False), st.sampled_from(["add", "sub", "mul"]))
def test_mb_closure(c, rnd, op):
    a = random_element(c, rnd, degree=2, height=12)
    b = random_element(c, rnd, degree=2, height=12)
    out = mb_arith(a, b, op)
    assert not isinstance(mb_admit(out.poly, c), Rejection)


@pytest.mark.property
@given(mb_configs, st.randoms(use_true_random=False))
def test_discreteness(c, rnd):
    e = random_element(c, rnd, degree=3, height=20)
    zero, one_ = c.element("0"), c.element("1")
    if mb_compare(e, zero) == 1:
        assert mb_compare(e, one_) in (0, 1)
    if not e.poly.is_constant():
        lead = e.poly.leading_term()[1]
        if c.field.sign(c.field.coerce(lead)) > 0:
            assert mb_compare(e, one_) == 1


# -- chain: init and residues -------------------------------------------------


def test_chain_init_examples():
    st_ = chain_init(PrimeSet([2, 3]), 12)
    assert st_.moduli == [2, 3, 4, 6, 8, 9, 12]
    assert st_.residue("7", 6) == 1
    assert chain_init(PrimeSet([5]), 30).moduli == [5, 25]
    with pytest.raises(PreconditionError):
        chain_init(PrimeSet([]), 12)


def test_residue_extend_examples():
    s2 = chain_init(PrimeSet([2]), 2)
    a = chain_residue_extend(s2, "x1", {"v": {2: 1}, "w": {2: 1}})
    assert a.x == {2: 1} and a.y == {2: 0}
    s3 = chain_init(PrimeSet([3]), 3)
    a = chain_residue_extend(s3, "x1", {"v": {3: 2}, "w": {3: 1}})
    assert a.x == {3: 1} and a.y == {3: 2}
    with pytest.raises(ResidueInfeasible) as err:
        chain_residue_extend(s2, "x1", {"v": {2: 0}, "w": {2: 0}})
    assert err.value.modulus == 2


def test_residue_extend_exhaustive_small_moduli():
    # oracle: brute force over all (x, y) pairs at the top power
    for p, P in ((2, 8), (3, 9), (5, 25)):
        s = chain_init(PrimeSet([p]), P)
        for v in range(P):
            for w in range(P):
                sols = [(x, y) for x in range(P) if x % p for y in range(P) if (y * w - (1 - x * v)) % P == 0]
                if not sols:
                    with pytest.raises(ResidueInfeasible):
                        chain_residue_extend(s, "x1", {"v": {P: v}, "w": {P: w}})
                    continue
                got = chain_residue_extend(s, "x1", {"v": {P: v}, "w": {P: w}})
                assert (got.x[P], got.y[P]) == min(sols)


def first_stages(n_max=24):
    s = chain_init(PrimeSet([2, 3]), n_max)
    s = chain_f_step(s)
    s, half = chain_zhat_step(s, "x1 + 1", 2)
    return s, half


def test_degenerate_first_step():
    s = chain_f_step(chain_init(PrimeSet([2, 3]), 24))
    assert s.names == ["x1"] and s.stage == 1
    assert [e.kind for e in s.registry] == ["nonstandard"]
    with pytest.raises(PreconditionError):
        chain_f_step(chain_init(PrimeSet([2, 3]), 24), "2", "x1")


def test_f_step_with_standard_v():
    s, _ = first_stages()
    s = register_prime(s, "2")
    s = chain_f_step(s, "2", "x1")
    assert s.names == ["x1", "x2", "y2"]
    ident = s.gen_poly("x2") * s.parse("2") + s.gen_poly("y2") * s.parse("x1")
    assert s.rational_function(ident) == RatFunc(1)
    assert s.bezout_log[-1]["verified"]
    # x2 dominates the previous stage
    assert s.compare("x2", "1000*x1^7 + 5") == 1
    assert s.compare("y2", "0") == -1


def test_f_step_errors():
    s, _ = first_stages()
    with pytest.raises(PreconditionError):
        chain_f_step(s, "x1", "x1")
    with pytest.raises(PreconditionError):
        chain_f_step(s, "5", "x1")  # 5 is not registered
    s = register_prime(s, "2")
    with pytest.raises(PreconditionError):
        chain_f_step(s, "x1", "2")  # w must be nonstandard
    s2 = chain_f_step(s, "2", "x1")
    with pytest.raises(PreconditionError):
        chain_f_step(s2, "2", "x1")  # odd stage


def test_zhat_examples():
    s, half = first_stages()
    assert s.residue("x1", 2) == 1
    assert half.poly * 2 == s.parse("x1 + 1")
    s2, two = chain_zhat_step(s, "6", 3)
    assert s2.fmt(two.poly) == "2"
    with pytest.raises(DivisibilityError) as err:
        chain_zhat_step(s, "x1", 2)
    assert err.value.residue == 1
    with pytest.raises(PreconditionError):
        chain_zhat_step(s, "x1 - 1", 5)
    with pytest.raises(ModulusOutOfRange):
        chain_zhat_step(s, "x1 - 1", 27)


def test_zhat_marks_stale_moduli():
    s, _ = first_stages(n_max=12)
    s2, _ = chain_zhat_step(s, "x1 - 1", 4)
    adj = s2.adjoined[-1]
    # the 2-part of m needs x1 mod 4 * 2^e <= 12, so only e = 1 works; the 3-part is free
    assert set(dict(adj.residues)) == {2, 3, 6, 9}
    assert set(adj.stale) == {4, 8, 12}


def test_register_prime_rules():
    s, _ = first_stages()
    with pytest.raises(PreconditionError):
        register_prime(s, "4")
    with pytest.raises(PreconditionError):
        register_prime(s, "x1^2 + 1")
    with pytest.raises(PreconditionError):
        register_prime(s, "x1 - 1")  # residue 0 mod 2: not a unit
    s2 = register_prime(s, "x1 - 2")
    assert s2.find_prime("2 - x1")[1] == -1


def test_json_round_trip_and_replay():
    s, _ = first_stages()
    s = chain_f_step(register_prime(s, "2"), "2", "x1")
    text = s.dumps()
    again = ChainState.loads(text)
    assert again.dumps() == text
    a, _ = chain_zhat_step(s, "x2 + 1", 2)
    b, _ = chain_zhat_step(again, "x2 + 1", 2)
    assert a.dumps() == b.dumps()


def random_chain(rnd: random.Random, stages: int = 8, n_max: int = 24):
    """Drive a chain through random admissible steps; yields the state after each one."""
    s = chain_init(PrimeSet([2, 3]), n_max)
    s = chain_f_step(s)
    yield s
    for p in (2, 3):
        s = register_prime(s, str(p))
    while s.stage < stages:
        if s.stage % 2:
            names = s.names
            a = s.parse(f"{rnd.randint(-3, 3)} + {rnd.randint(1, 3)}*{rnd.choice(names)}")
            n = rnd.choice([2, 3, 4, 6])
            r = s.residue(a, n)
            s, e = chain_zhat_step(s, a - r, n)
            assert s.equal(e.poly * n, a - r)
        else:
            pairs = [
                (v, w)
                for v in s.registry
                for w in s.nonstandard_primes()
                if v is not w and s.relation_for(v.poly, w.poly) is None
            ]
            v, w = rnd.choice(pairs)
            s = chain_f_step(s, v.poly, w.poly)
        yield s


@pytest.mark.property
@given(st.randoms(use_true_random=False))
def test_random_chains_keep_invariants(rnd):
    for s in random_chain(rnd, stages=6):
        assert s.check_invariants() == []
        for rel in s.relations:
            xk, yk = s.gen_poly(f"x{rel.k}"), s.gen_poly(f"y{rel.k}")
            assert s.rational_function(xk * rel.v + yk * rel.w) == RatFunc(1)
        for g in s.names:
            table = s.residues[g]
            for m in s.moduli:
                for n in s.moduli:
                    if n % m == 0:
                        assert table[n] % m == table[m]
        for adj in s.adjoined:
            zeros = s.zero_moduli(adj.result)
            assert set(zeros) <= set(s.moduli)


# -- series integer parts ------------------------------------------------------

coeffs = st.fractions(min_value=-9, max_value=9, max_denominator=5).filter(lambda c: c != 0)
series = st.dictionaries(st.builds(Fraction, st.integers(-4, 5), st.sampled_from([1, 2, 3])), coeffs, max_size=4)


@pytest.mark.property
@given(series)
def test_integer_part_law(terms):
    from weakarith.puiseux import PuiseuxSeries

    a = PuiseuxSeries(terms)
    b = ps_floor(a).integer_part
    assert not isinstance(shep_admit(b), Rejection)
    assert ps_sign(a - b) in (0, 1)
    assert ps_sign(a - b - 1) == -1
