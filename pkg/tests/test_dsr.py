import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kappamink.dsr import (IncompleteRealizationError, casimir_mass_residual, check_example, example_params,
                           failing, hermiticity_report, printed_boost, psi_gamma_tables, random_noncovariant_params,
                           realization_casimir_closed, realize_natural, realize_noncovariant, verify_dsr,
                           verify_qanalog_dsr)
from kappamink.errors import NormalizationError
from kappamink.scalar import Scalar
from kappamink.twist import realize_coordinates
from kappamink.weyl import algebra

ORD = 4


def test_natural_realization_relations():
    assert failing(verify_dsr(realize_natural(ORD), snyder=True)) == []


@pytest.mark.parametrize("name", ["bicrossproduct", "hermitian", "minimal"])
def test_worked_examples(name):
    psi, gamma = example_params(name)
    assert failing(verify_dsr(realize_noncovariant(psi, gamma, ORD))) == []
    assert all(check_example(name, ORD).values())


def test_bicrossproduct_example_tables():
    tab = psi_gamma_tables([1], [1], 5)
    # Psi = Gamma = exp(t) with t = -h p0
    assert tab["Psi"] == tab["Gamma"]
    assert tab["Psi"][:4] == [1, 1, F(1, 2), F(1, 6)]
    real = realize_noncovariant([1], [1], ORD)
    alg = real.alg
    e = alg.fn((alg.hs(1) * alg.pseries(0)).exp())
    assert real.P[1] == alg.p(1) * e


def test_hermitian_example_is_abelian_s0():
    real = realize_noncovariant([1], [0], ORD)
    want = realize_coordinates("abelian", 0, "left", ORD)
    for mu in range(4):
        assert real.X[mu] == want[mu]


def test_boost_sign_relative_to_printed_form():
    real = realize_noncovariant([1, F(1, 2)], [F(-1, 3)], 3)
    for i in (1, 2, 3):
        assert real.N[i - 1] == -printed_boost(real, i)


def test_casimir_bracket():
    for real in (realize_natural(ORD), realize_noncovariant([1, F(1, 3), 2], [F(-1, 2), 3], ORD)):
        cas = realization_casimir_closed(real)
        for mu in range(4):
            lhs = cas * real.X_lower(mu) - real.X_lower(mu) * cas
            assert lhs == real.P[mu].scale(Scalar(0, 2))


def test_noncovariant_casimir_matches_closed_form():
    real = realize_noncovariant([1, F(1, 3), 2], [F(-1, 2), 3], ORD)
    assert realization_casimir_closed(real) == real.casimir


def test_mass_relation_exact():
    assert casimir_mass_residual(8).is_zero()


def test_hermiticity_constraint():
    a = F(2, 3)
    good = hermiticity_report(realize_noncovariant([1, a], [-a / 3], 4))
    assert all(good["self_adjoint"]) and good["psi' + 3 gamma = 0"]
    bad = hermiticity_report(realize_noncovariant([1, a], [-3 * a], 4))
    assert not all(bad["self_adjoint"]) and not bad["psi' + 3 gamma = 0"]


def test_psi_normalization_required():
    with pytest.raises(NormalizationError):
        realize_noncovariant([2], [0], 3)


def test_incomplete_realization_rejected():
    real = realize_natural(2)
    real.N = real.N[:2]
    with pytest.raises(IncompleteRealizationError):
        verify_dsr(real)


def test_qanalog_through_noncovariant():
    assert failing(verify_qanalog_dsr([1, F(1, 2)], [F(1, 5)], 3)) == []


@settings(max_examples=8)
@given(st.integers(0, 10 ** 6))
def test_random_noncovariant_family(seed):
    psi, gamma = random_noncovariant_params(random.Random(seed))
    assert failing(verify_dsr(realize_noncovariant(psi, gamma, 3))) == []
