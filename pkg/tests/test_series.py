import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kappamink.errors import NonUnitError, NormalizationError, OrderMismatchError
from kappamink.hopf import xi_inverse_closed_form, xi_series
from kappamink.scalar import Scalar
from kappamink.series import TruncSeries

VARS = ("P0", "P1")
ORD = 4

small_q = st.fractions(min_value=-3, max_value=3, max_denominator=4)
scalars = st.builds(Scalar, small_q, small_q)


def series_st(order=ORD, min_h=0):
    key = st.tuples(st.integers(min_h, order), st.integers(0, 2), st.integers(0, 2))
    return st.dictionaries(key, scalars, max_size=5).map(
        lambda d: TruncSeries.from_terms(VARS, d, order))


def unital_st(order=ORD):
    return series_st(order, min_h=1).map(lambda s: s + s.like_const(1))


def P(name, order=ORD):
    return TruncSeries.var(name, VARS, order)


def H(k=1, order=ORD):
    return TruncSeries.monomial(VARS, {"h": k}, 1, order)


# --- examples ---------------------------------------------------------------

def test_difference_of_squares():
    one = TruncSeries.const(1, VARS, ORD)
    a = one + H() * P("P0")
    b = one - H() * P("P0")
    assert a * b == one - H(2) * P("P0") ** 2


def test_truncation_drops_high_powers():
    assert (H(3, 6) * H(5, 6)).is_zero()


def test_order_mismatch_raises():
    with pytest.raises(OrderMismatchError):
        H(1, 4) * H(1, 5)


def test_xi_times_inverse_is_one():
    xi, xinv = xi_series(8)
    assert xi * xinv == xi.like_const(1)


def test_xi_inverse_matches_closed_form():
    _, xinv = xi_series(8)
    assert xinv == xi_inverse_closed_form(8)


def test_invert_one_and_geometric():
    one = TruncSeries.const(1, VARS, 6)
    assert one.invert() == one
    r = F(3, 2)
    h = TruncSeries.monomial(VARS, {"h": 1}, 1, 6)
    p0 = TruncSeries.var("P0", VARS, 6)
    geo = sum(((h * p0).scale(r)) ** m for m in range(1, 7)) + one
    assert (one - (h * p0).scale(r)).invert() == geo


def test_invert_non_unit_raises():
    with pytest.raises(NonUnitError):
        P("P0").invert()


def test_sqrt_binomial_coefficients():
    h = H(1, 6)
    u = h * h * (P("P1", 6) ** 2 - P("P0", 6) ** 2)
    one = u.like_const(1)
    got = (one - u).sqrt()
    assert got == one - u.scale(F(1, 2)) - (u * u).scale(F(1, 8)) - (u ** 3).scale(F(1, 16))


def test_falling_factorial_power():
    h = H(1, 3)
    p0 = P("P0", 3)
    one = p0.like_const(1)
    got = (one - (h * p0).scale(2)).pow_fractional(F(-1, 2))
    want = one + h * p0 + (h * p0) ** 2 * F(3, 2) + (h * p0) ** 3 * F(5, 2)
    assert got == want
    assert got * got * (one - (h * p0).scale(2)) == one


def test_pow_one_identity_and_normalization_error():
    s = P("P0") * H() + H().like_const(1)
    assert s.pow_fractional(1) == s
    with pytest.raises(NormalizationError):
        (s + s.like_const(1)).pow_fractional(F(1, 2))


def test_exp_log_round_trips():
    z = TruncSeries.zero(VARS, 8)
    assert z.exp() == z.like_const(1)
    u = (H(1, 8) * P("P0", 8)).scale(-3)
    assert u.log1p().exp() == u + u.like_const(1)
    xi, _ = xi_series(8)
    assert xi.log().exp() == xi


def test_exp_nonzero_constant_raises():
    with pytest.raises(NormalizationError):
        P("P0").exp()


def test_substitute_examples():
    p0 = P("P0")
    assert p0.substitute({"P0": p0.like_const(0)}).is_zero()
    xi, _ = xi_series(6)
    e, p = 0.03, 0.01
    want = (1 - (p * p - e * e)) ** 0.5 + e
    got = xi.substitute({}).evaluate({"h": 1, "P0": e, "P1": 0, "P2": 0, "P3": p})
    # truncated at h^6: agreement to the size of the neglected terms
    assert abs(got - want) < 1e-12


def test_ultra_norm_examples():
    assert TruncSeries.zero(VARS, ORD).ultra_norm() == 0
    assert (H(3) * P("P1")).ultra_norm() == F(1, 8)
    for k in range(ORD + 1):
        assert H(k).ultra_norm() == F(1, 2 ** k)


def test_scalar_field():
    a, b = Scalar(F(1, 2), 3), Scalar(-2, F(1, 3))
    assert a * a.inverse() == Scalar(1, 0)
    assert (a + b) - b == a
    assert Scalar(0, 1) * Scalar(0, 1) == Scalar(-1, 0)


# --- properties ---------------------------------------------------------------

@settings(max_examples=1000)
@given(series_st(), series_st(), series_st())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a


@settings(max_examples=200)
@given(series_st(), series_st())
def test_ultra_norm_properties(a, b):
    assert (a + b).ultra_norm() <= max(a.ultra_norm(), b.ultra_norm())
    va, vb = a.valuation(), b.valuation()
    if va is not None and vb is not None and va + vb <= ORD:
        # leading components multiply without cancellation in a domain
        assert (a * b).ultra_norm() == a.ultra_norm() * b.ultra_norm()


@settings(max_examples=100)
@given(unital_st(),
       st.fractions(min_value=-2, max_value=2, max_denominator=6),
       st.fractions(min_value=-2, max_value=2, max_denominator=6))
def test_fractional_powers_compose(a, beta, gamma):
    assert a.pow_fractional(beta) * a.pow_fractional(gamma) == a.pow_fractional(beta + gamma)
    assert a.pow_fractional(-1) == a.invert()
    assert a.pow_fractional(2) == a * a


@settings(max_examples=100)
@given(series_st(min_h=1))
def test_exp_log1p_inverse(u):
    assert (u.exp() - u.like_const(1)).log1p() == u
    assert u.log1p().exp() == u + u.like_const(1)


@settings(max_examples=100)
@given(series_st(order=6), series_st(order=6))
def test_truncation_consistency(a, b):
    lo = 3
    assert (a * b).with_order(lo) == a.with_order(lo) * b.with_order(lo)
    one = a.like_const(1)
    u = a - a.component(0)
    c = one + u
    assert c.invert().with_order(lo) == c.with_order(lo).invert()


@settings(max_examples=100)
@given(series_st())
def test_json_round_trip(a):
    text = a.to_json()
    back = TruncSeries.from_json(text)
    assert back == a
    assert back.to_json() == text
    obj = json.loads(text)
    assert all(set(t) == {"exponents", "re", "im"} for t in obj["terms"])
