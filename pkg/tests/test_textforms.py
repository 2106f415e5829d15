from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weakarith.mpoly import MPoly
from weakarith.numberfield import QQ, NumberField
from weakarith.puiseux import PuiseuxSeries, format_series_pairs, parse_series
from weakarith.textforms import ParseError, format_poly, parse_field_element, parse_poly, parse_rational

SQRT2 = NumberField.preset("sqrt2")
CBRT2 = NumberField.preset("cbrt2")


def test_rational_forms():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational("7") == 7
    for bad in ("1/0", "x", "1.5.2", ""):
        with pytest.raises(ParseError):
            parse_rational(bad)


def test_field_element_forms():
    assert parse_field_element(SQRT2, "[1, 1/2]") == SQRT2([1, Fraction(1, 2)])
    assert parse_field_element(SQRT2, "lam^2") == SQRT2.coerce(2)
    assert parse_field_element(CBRT2, "[0, 0, 1]") == CBRT2.gen * CBRT2.gen


def test_poly_forms():
    p = parse_poly("(x1 + 1)/2", ["x1"], QQ)
    assert format_poly(p, ["x1"]) == "1/2*x1 + 1/2"
    q = parse_poly("[0, 1/3]*x^2 + 5", ["x"], SQRT2)
    assert format_poly(q, ["x"]) == "[0, 1/3]*x^2 + 5"
    assert format_poly(MPoly({}), ["x"]) == "0"
    with pytest.raises(ParseError):
        parse_poly("x / (x + 1)", ["x"], QQ)
    with pytest.raises(ParseError):
        parse_poly("z + 1", ["x"], QQ)


def test_series_pairs():
    s = parse_series("[(1/2,1),(0,1/2)]", QQ)
    assert format_series_pairs(s) == "[(1/2, 1), (0, 1/2)]"
    assert parse_series(format_series_pairs(s), QQ) == s


small = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@pytest.mark.property
@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 2)), small, max_size=5))
def test_poly_round_trip_rational(terms):
    p = MPoly({m: c for m, c in terms.items() if c != 0})
    names = ["x1", "x2"]
    assert parse_poly(format_poly(p, names), names, QQ) == p


@pytest.mark.property
@given(st.dictionaries(st.integers(0, 3), st.lists(small, min_size=2, max_size=2).map(SQRT2), max_size=4))
def test_poly_round_trip_sqrt2(terms):
    p = MPoly({(e,): c for e, c in terms.items() if not c.is_zero()})
    assert parse_poly(format_poly(p, ["x"]), ["x"], SQRT2) == p


@pytest.mark.property
@given(st.dictionaries(st.builds(Fraction, st.integers(-6, 6), st.sampled_from([1, 2, 3])),
                       small.filter(lambda c: c != 0), max_size=5))
def test_series_round_trip(terms):
    s = PuiseuxSeries(terms)
    assert parse_series(format_series_pairs(s), QQ) == s
    assert parse_series(str(s), QQ) == s
