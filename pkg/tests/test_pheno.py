import math
import warnings
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kappamink.errors import DegenerateModelError, NormalizationError, RegimeError, SingularParameterError
from kappamink.pheno import (BETA_CAL, MCCF, WAVELET, BoundInput, Cosmology, DelayModel, RealizationCoeffs,
                             abelian_model, bound_MQ, cosmo_integral, cosmological_delay, cosmological_terms,
                             covariant_dispersion, covariant_photon_momentum, delay_coeffs, delay_from_velocity,
                             dispersion_series, hermitian_model, jordanian_model, light_time_s, magueijo_smolin_mass,
                             magueijo_smolin_photon_series, parameter_bound, relative_delay, resolve_model,
                             speed_ratio, time_delay, time_delay_coeffs)

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=7)
coeffs = st.builds(RealizationCoeffs, rationals, rationals, rationals, rationals)


# --- closed formulas ------------------------------------------------------------

def test_jordanian_minus_one_is_undeformed():
    dm = jordanian_model(-1)
    assert (dm.b1, dm.b2, dm.B1, dm.B2) == (0, 0, 0, 0)


def test_abelian_s1_values():
    dm = abelian_model(1)
    assert (dm.b1, dm.b2) == (F(1, 2), F(1, 6))


def test_jordanian_r3_values():
    dm = jordanian_model(3)
    assert (dm.b1, dm.b2, dm.B1, dm.B2) == (-2, F(14, 3), -4, -6)


def test_series_examples():
    assert dispersion_series([1], [1]).b1 == F(1, 2)
    assert dispersion_series([1], [0]).b1 == F(-1, 2)
    ms = dispersion_series([1, -3, 2], [0])
    assert (ms.b1, ms.b2) == (1, 1)
    with pytest.raises(ValueError):
        dispersion_series([1], [0], order=1)
    with pytest.raises(NormalizationError):
        dispersion_series([2], [0])


def test_hermitian_models():
    rc = RealizationCoeffs.hermitian(F(1, 2), F(1, 3))
    assert rc.is_hermitian()
    dm = hermitian_model(F(1, 2), F(1, 3))
    g0, g1 = F(1, 2), F(1, 3)
    # oracle: substitute psi1 = -3 g0, psi2 = -3 g1 / 2 into the series expansion by hand
    assert dm.b1 == (5 * g0 - 1) / 2
    assert dm.b2 == (1 - 12 * g0 + 39 * g0 * g0 + 6 * g1) / 6
    assert dm.B2 == (-14 * g0 * g0 + 2 * g0 - 6 * g1) / 2
    assert hermitian_model(F(1, 5), g1).b1 == 0
    assert hermitian_model(F(1, 5), g1).b2 == F(2, 75) + g1


def test_psi2_weight():
    # psi = 1 + A^2: |p|/E = (1 - exp(-(A - A^3/3)))/A = 1 - A/2 - A^2/6 + ...
    dm = dispersion_series([1, 0, 1], [0])
    assert (dm.b1, dm.b2) == (F(-1, 2), F(-1, 6))
    assert delay_coeffs(RealizationCoeffs(0, 1, 0, 0)) == dm


def test_inconsistent_delay_model_rejected():
    with pytest.raises(ValueError):
        DelayModel(F(1), F(0), F(1), F(2), F(1), F(2))


@settings(max_examples=50)
@given(coeffs)
def test_series_oracle_matches_closed_formulas(rc):
    assert dispersion_series(rc) == delay_coeffs(rc)


@settings(max_examples=50)
@given(coeffs)
def test_velocity_oracle(rc):
    dm = delay_coeffs(rc)
    v = delay_from_velocity(dm)
    assert (v["c1"], v["c2"], v["B1"], v["B2"]) == (dm.c1, dm.c2, dm.B1, dm.B2)
    assert (v["xi"], v["zeta"]) == dm.speed_coeffs()
    assert (v["E1"], v["E2"]) == (2 * dm.b1, -3 * dm.b2)


@settings(max_examples=50)
@given(rationals, rationals)
def test_family_b2_identities(r, s):
    if r:
        assert jordanian_model(r).B2 == -r * (r + 1) / 2
    assert abelian_model(s).B2 == s * (s - 1) / 2


def test_range_claims():
    # Jordanian b2 = (1 + 3r + 2r^2)/6: vertex at r = -3/4
    assert jordanian_model(F(-3, 4)).b2 == F(-1, 48)
    for r in (F(-1), F(-1, 2), F(-7, 10), F(-4, 5)):
        assert jordanian_model(r).b2 >= F(-1, 48)
    # Abelian b2 = (1 - 3s + 3s^2)/6 on [0, 1]
    assert abelian_model(0).b2 == abelian_model(1).b2 == F(1, 6)
    assert abelian_model(F(1, 2)).b2 == F(1, 24)
    grid = [F(k, 20) for k in range(21)]
    assert max(abelian_model(s).b2 for s in grid) == F(1, 6)
    assert min(abelian_model(s).B2 for s in grid) == F(-1, 8)
    assert max(jordanian_model(r).B2 for r in [F(k, 20) - 2 for k in range(61) if k != 40]) == F(1, 8)


# --- delays -----------------------------------------------------------------------

def test_abelian_s1_delay_rational_identity():
    assert time_delay_coeffs(abelian_model(1)) == (1, F(-1, 2))


def test_delay_examples():
    l, M = 100.0, 1.22e19
    E = 1e3
    lt = light_time_s(l)
    assert time_delay(E, l, M, abelian_model(1)) == pytest.approx(-lt * (E / M) * (1 - E / (2 * M)), rel=1e-14)
    assert time_delay(E, l, M, jordanian_model(-1)) == 0.0
    lead = time_delay(E, l, M, abelian_model(0))
    assert lead > 0 and lead == pytest.approx(lt * E / M, rel=1e-12)


def test_delay_regime_and_forms():
    dm = jordanian_model(3)
    with pytest.raises(RegimeError):
        time_delay(2.0, 1.0, 1.0, dm)
    with pytest.raises(ValueError):
        time_delay(0.1, 1.0, 1.0, dm, form="bogus")
    x = 1e-3
    assert time_delay(x, 1.0, 1.0, dm, form="momentum") == pytest.approx(-light_time_s(1.0) * x * (-4 - 6 * x))


def test_relative_delay_and_speed():
    dm = abelian_model(1)
    M = 1e19
    a, b = time_delay(1e2, 10.0, M, dm), time_delay(1e3, 10.0, M, dm)
    assert relative_delay(1e2, 1e3, 10.0, M, dm) == pytest.approx(a - b, rel=1e-9)
    assert speed_ratio(0.0, M, dm) == 1.0


# --- cosmology -------------------------------------------------------------------

def test_cosmo_zero_and_negative():
    assert cosmo_integral(0.0, 1) == 0.0
    assert cosmological_delay(0.0, 10.0, 1e19, abelian_model(1)) == 0.0
    with pytest.raises(ValueError):
        cosmo_integral(-0.1, 1)


def test_cosmo_small_z_taylor_oracle():
    cos = Cosmology()
    H0 = cos.hubble_per_s()
    z = 1e-4
    # integrand (1+z)/h(z) = (1/H0)(1 + (1 - 3 Om/2) z + O(z^2))
    taylor = (z / H0) * (1 + (1 - 1.5 * cos.omega_m) * z / 2)
    assert cosmo_integral(z, 1) == pytest.approx(taylor, rel=1e-6)


def test_cosmo_quadrature_self_consistency():
    for z in (0.1, 0.9, 3.0):
        a = cosmo_integral(z, 2, rtol=1e-10)
        b = cosmo_integral(z, 2, rtol=5e-11)
        assert abs(a - b) / b < 1e-8


def test_cosmo_monotone():
    vals = [cosmo_integral(z, 1) for z in (0.1, 0.5, 1.0, 2.0)]
    assert vals == sorted(vals)


def test_cosmo_term_magnitudes():
    first, second = cosmological_terms(0.9, 10.0, 1.22e19, abelian_model(1))
    assert first < 0 < second
    # ratio ~ (b1/b2) (M_Q/dE) (k1/k2)
    assert 1e17 < abs(first / second) < 1e19


def test_cosmology_warning():
    with warnings.catch_warnings(record=True) as rec:
        warnings.simplefilter("always")
        Cosmology(71.0, 0.3, 0.3)
    assert rec


# --- bounds ------------------------------------------------------------------------

def test_linear_bounds():
    assert bound_MQ(MCCF, abelian_model(0)).bound_GeV == pytest.approx(7.2e17)
    jh = resolve_model("jordanian-hermitian")
    assert bound_MQ(MCCF, jh).bound_GeV == pytest.approx(2.88e18, rel=1e-12)
    assert bound_MQ(MCCF, jh).bound_GeV == pytest.approx(28e17, rel=0.035)
    assert bound_MQ(WAVELET, jh).bound_GeV == pytest.approx(2.08e18, rel=1e-12)


def test_linear_scaling_law():
    a, b = jordanian_model(3), abelian_model(F(1, 3))
    ra = bound_MQ(MCCF, a).bound_GeV / bound_MQ(MCCF, b).bound_GeV
    assert ra == pytest.approx(abs(a.B1 / b.B1), rel=1e-15)


def test_quadratic_fallback_and_degenerate():
    res = bound_MQ(MCCF, abelian_model(F(1, 2)))
    assert res.kind == "quadratic" and res.degenerate
    assert res.bound_GeV == pytest.approx(1.31e9, rel=1e-12)
    with pytest.raises(DegenerateModelError):
        bound_MQ(MCCF, jordanian_model(-1))
    with pytest.raises(DegenerateModelError):
        bound_MQ(WAVELET, abelian_model(F(1, 2)))
    with pytest.raises(ValueError):
        BoundInput(linear_GeV=-1.0)


def test_parameter_bounds():
    op, r = parameter_bound("jordanian", BETA_CAL)
    assert op == ">" and r == pytest.approx(-1.208, rel=1e-3)
    op, s = parameter_bound("abelian", BETA_CAL)
    assert op == "<" and s == pytest.approx(0.604, rel=1e-3)
    # the bound is where |B1| reaches the cap
    assert abs(float(jordanian_model(F(r).limit_denominator(10 ** 6)).B1)) == pytest.approx(BETA_CAL, rel=1e-6)


def test_ratio_input():
    inp = BoundInput.from_ratio(1.2)
    assert inp.linear_GeV == pytest.approx(1.2 * 1.22e19)


# --- covariant ----------------------------------------------------------------------

@settings(max_examples=50)
@given(st.floats(0.5, 2.0), st.floats(1e-3, 0.3))
def test_covariant_photons_have_no_delay(phi, x):
    assert covariant_photon_momentum(phi, x, 1.0) == x
    assert covariant_dispersion(phi, x, x, 1.0) == 0.0


def test_covariant_singular():
    with pytest.raises(SingularParameterError):
        covariant_dispersion(1, 0.5, 0.5, 1.0)


def test_magueijo_smolin():
    E, M = 0.01, 1.0
    p = E / (1 + E / M)
    assert magueijo_smolin_mass(E, p, M) == pytest.approx(0.0, abs=1e-18)
    # photon relation |p|/E = 1/(1 - A) gives b1 = b2 = 1
    c = magueijo_smolin_photon_series(2)
    ms = resolve_model("magueijo-smolin")
    assert (c[1], c[2]) == (ms.b1, ms.b2)
    # both forms reduce to E^2 - p^2 as M_Q -> infinity
    assert covariant_dispersion(1, 1.0, 0.5, 1e12) == pytest.approx(0.75, rel=1e-9)
    assert magueijo_smolin_mass(1.0, 0.5, 1e12) == pytest.approx(0.75, rel=1e-9)


def test_resolve_model_errors():
    with pytest.raises(ValueError):
        resolve_model("custom")
    with pytest.raises(ValueError):
        resolve_model("jordanian")
    with pytest.raises(ValueError):
        resolve_model("nope", 1)
    assert resolve_model("custom", b1=1, b2=2).B2 == -4
    assert math.isclose(float(resolve_model("hermitian", "1/2,1/3").B1), float(hermitian_model(F(1, 2), F(1, 3)).B1))


@settings(max_examples=50)
@given(rationals, rationals, rationals)
def test_vanishing_linear_term(g0, p2, g1):
    dm = delay_coeffs(RealizationCoeffs(2 * g0 - 1, p2, g0, g1))
    assert dm.b1 == 0
    assert dm.b2 == (g0 - 2 * p2 + 3 * g1 - g0 * g0) / 6
    assert dm.B2 == -3 * dm.b2
