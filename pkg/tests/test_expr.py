from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kappamink.errors import ParseError
from kappamink.expr import parse_poly
from kappamink.scalar import Scalar
from kappamink.series import TruncSeries
from kappamink.weyl import PolyState, format_poly


def x(mu):
    return PolyState.x(mu, 4, 1, 8)


def test_basic_forms():
    assert parse_poly("x1*x2") == x(1) * x(2)
    assert parse_poly("x0^2 - 3/4*x3") == x(0) * x(0) - x(3).scale(F(3, 4))
    assert parse_poly("i*x1") == x(1).scale(Scalar(0, 1))
    assert parse_poly("ı*x1") == parse_poly("i*x1")
    assert parse_poly("−x2") == x(2).scale(-1)
    h = TruncSeries.monomial((), {"h": 1}, 1, 8)
    assert parse_poly("h*(x0 + 1)") == (x(0) + PolyState.const(1, 4, 1, 8)).scale(h)


@pytest.mark.parametrize("text,pos", [("x1 +", 4), ("x9", 0), ("x1 $ x2", 3), ("1/0", 2), ("", 0), ("(x1", 3),
                                      ("x", 0)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as e:
        parse_poly(text)
    assert e.value.position == pos


@settings(max_examples=100)
@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(1, 4), st.lists(st.integers(0, 3), max_size=3)),
                min_size=1, max_size=4))
def test_format_parse_round_trip(terms):
    p = PolyState.zero(4, 1, 8)
    for num, den, idx in terms:
        t = PolyState.const(F(num, den), 4, 1, 8)
        for mu in idx:
            t = t * x(mu)
        p = p + t
    text = format_poly(p)
    assert parse_poly(text) == p
