"""Acceptance suite: one or more tests per criterion, summarized as PASS/FAIL lines at session end."""
import random
import time
from fractions import Fraction as F

import pytest

from kappamink.dsr import (casimir_mass_residual, check_example, failing, random_noncovariant_params,
                           realization_casimir_closed, realize_natural, realize_noncovariant, verify_dsr)
from kappamink.hopf import (bicross_checks, build_kappa_classical, build_kappa_qanalog, check_antipode_square,
                            check_grouplike, check_hopf_axioms, check_jacobi, qanalog_casimir,
                            qanalog_casimir_relation)
from kappamink.pheno import (BETA_CAL, MCCF, WAVELET, Cosmology, RealizationCoeffs, abelian_model, bound_MQ,
                             cosmo_integral, delay_coeffs, dispersion_series, jordanian_model, parameter_bound,
                             resolve_model, time_delay_coeffs)
from kappamink.scalar import Scalar
from kappamink.schouten import (Multivector, dilatation, igl_affine, kappa_r_matrix, lorentz_momentum_trivector,
                                poincare, real_form, schouten, vec)
from kappamink.series import TruncSeries
from kappamink.twist import (build_twist, check_cocycle, check_normalization, check_qybe, homomorphism_residuals,
                             star_commutator, universal_r_matrix)
from kappamink.twist_tables import compare_table
from kappamink.weyl import PolyState

I = Scalar(0, 1)
ABELIAN = [("abelian", 0), ("abelian", F(1, 2)), ("abelian", 1)]
JORDANIAN = [("jordanian", -1), ("jordanian", 1), ("jordanian", 3)]
FAMILIES = ABELIAN + JORDANIAN
THETA = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, F(1, 2)], [0, 0, F(-1, 2), 0]]


def announce(number, ok, detail=""):
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
    return ok


@pytest.fixture(scope="module")
def classical8():
    return build_kappa_classical(8)


# 1 ---------------------------------------------------------------------------------

@pytest.mark.acceptance(1)
def test_c1_kappa_minkowski_from_twists():
    order = 8
    t0 = time.perf_counter()
    x = [PolyState.x(m, 4, 1, order) for m in range(4)]
    ih = PolyState.const(TruncSeries.monomial((), {"h": 1}, 1, order), 4, 1, order).scale(I)
    bad = []
    for family, param in FAMILIES:
        tw = build_twist(family, param, h_order=order)
        for k in (1, 2, 3):
            if star_commutator(tw, x[0], x[k]) != ih * x[k]:
                bad.append((family, param, 0, k))
            for j in range(1, k):
                if not star_commutator(tw, x[j], x[k]).is_zero():
                    bad.append((family, param, j, k))
    elapsed = time.perf_counter() - t0
    assert announce(1, not bad and elapsed < 10, f"{elapsed:.1f}s")
    assert bad == [] and elapsed < 10


# 2 ---------------------------------------------------------------------------------

@pytest.mark.acceptance(2)
def test_c2_cocycle_normalization_and_corruption():
    order = 6
    t0 = time.perf_counter()
    twists = [build_twist(f, p, h_order=order) for f, p in FAMILIES]
    twists.append(build_twist("theta", theta=THETA, h_order=order))
    bad = []
    for tw in twists:
        left, right = check_normalization(tw)
        if not (check_cocycle(tw).is_zero() and left.is_zero() and right.is_zero()):
            bad.append(tw)
    detected = [not check_cocycle(build_twist(f, p, h_order=order).corrupted()).is_zero()
                for f, p in (("abelian", F(1, 2)), ("jordanian", 3))]
    elapsed = time.perf_counter() - t0
    assert announce(2, not bad and all(detected) and elapsed < 60, f"{elapsed:.1f}s")
    assert bad == [] and all(detected) and elapsed < 60


# 3 ---------------------------------------------------------------------------------

@pytest.mark.slow
@pytest.mark.acceptance(3)
@pytest.mark.parametrize("family,param", FAMILIES)
def test_c3_closed_form_tables(family, param):
    rows = compare_table(build_twist(family, param, h_order=6))
    for r in rows:
        if r["printed_order"] is not None:
            print(f"{family} {param} {r['map']} {r['entry']}: printed form differs at h^{r['printed_order']}"
                  f"{' (recorded fix matches)' if r['has_fix'] else ''}")
    assert rows and all(r["pass"] for r in rows)


@pytest.mark.slow
@pytest.mark.acceptance(3)
@pytest.mark.parametrize("family,param,order", [(f, p, 6 if (f, p) in (("abelian", F(1, 2)), ("jordanian", 3)) else 4)
                                                for f, p in FAMILIES])
def test_c3_coproduct_homomorphism(family, param, order):
    res = homomorphism_residuals(build_twist(family, param, h_order=order))
    assert {k: v for k, v in res.items() if v is not None} == {}


# 4 ---------------------------------------------------------------------------------

@pytest.mark.slow
@pytest.mark.acceptance(4)
def test_c4_classical_hopf_suite():
    t0 = time.perf_counter()
    spec = build_kappa_classical(8)
    sp = spec.space
    failing_axioms = [e for e in check_hopf_axioms(spec) if not e["pass"]]
    xi, xinv = spec.extras["Xi"], spec.extras["Xi_inv"]
    grouplike = check_grouplike(spec, xi).is_zero()
    c3, c3i = sp.fn(xi ** 3), sp.fn(xinv ** 3)
    square = all(check_antipode_square(spec, spec.gen(g), c3, c3i).is_zero() for g in spec.generators)
    elapsed = time.perf_counter() - t0
    ok = not failing_axioms and grouplike and square and elapsed < 120
    assert announce(4, ok, f"(antipode square via Xi^3) {elapsed:.1f}s")
    assert failing_axioms == [] and grouplike and square and elapsed < 120


@pytest.mark.slow
@pytest.mark.acceptance(4, literal=True)
@pytest.mark.xfail(strict=True, reason="antipode square is conjugation by Xi^3; single Xi leaves an order-h residual")
def test_c4_antipode_square_single_xi(classical8):
    sp = classical8.space
    xi, xinv = sp.fn(classical8.extras["Xi"]), sp.fn(classical8.extras["Xi_inv"])
    bad = [g for g in classical8.generators
           if not check_antipode_square(classical8, classical8.gen(g), xi, xinv).is_zero()]
    assert bad == []


# 5 ---------------------------------------------------------------------------------

@pytest.mark.slow
@pytest.mark.acceptance(5)
def test_c5_bicrossproduct_substitution(classical8):
    res = bicross_checks(classical8)
    bad = [k for k, v in res.items() if not k.endswith("_printed") and not v.is_zero()]
    assert announce(5, not bad, f"{len(res)} relations")
    assert bad == []


# 6 ---------------------------------------------------------------------------------

@pytest.mark.acceptance(6)
def test_c6_qanalog_suite():
    spec = build_kappa_qanalog(F(3, 2))
    sp = spec.space
    jacobi = all(ok for _, ok in check_jacobi(sp, spec.generators))
    axioms = [e for e in check_hopf_axioms(spec) if not e["pass"]]
    ck = sp.fn(qanalog_casimir(spec))
    central = all(ck.commutator(spec.gen(g)).is_zero() for g in spec.generators)
    relation = qanalog_casimir_relation(spec).is_zero()
    assert announce(6, jacobi and not axioms and central and relation)
    assert jacobi and axioms == [] and central and relation


# 7 ---------------------------------------------------------------------------------

@pytest.mark.acceptance(7)
def test_c7_dsr_realizations():
    bad = failing(verify_dsr(realize_natural(8), snyder=True))
    bad += failing(verify_dsr(realize_noncovariant([1], [1], 8)))
    rng = random.Random(20240601)
    for _ in range(20):
        psi, gamma = random_noncovariant_params(rng)
        bad += failing(verify_dsr(realize_noncovariant(psi, gamma, 6)))
    bad += failing(verify_dsr(realize_natural(6), snyder=True))
    assert announce(7, not bad)
    assert bad == []


# 8 ---------------------------------------------------------------------------------

@pytest.mark.acceptance(8)
def test_c8_casimir():
    bracket = True
    for real in (realize_natural(8), realize_noncovariant([1, F(1, 3), 2], [F(-1, 2), 3], 8)):
        cas = realization_casimir_closed(real)
        for mu in range(4):
            lhs = cas * real.X_lower(mu) - real.X_lower(mu) * cas
            bracket &= lhs == real.P[mu].scale(Scalar(0, 2))
    minimal = all(check_example("minimal", 8).values())
    mass = casimir_mass_residual(8).is_zero()
    assert announce(8, bracket and minimal and mass)
    assert bracket and minimal and mass


# 9 ---------------------------------------------------------------------------------

@pytest.mark.acceptance(9)
def test_c9_phenomenology_numbers():
    dm = jordanian_model(-1)
    a = dm.b1 == 0 and dm.b2 == 0
    b = time_delay_coeffs(abelian_model(1)) == (1, F(-1, 2))
    rng = random.Random(7)

    def q():
        return F(rng.randint(-20, 20), rng.randint(1, 9))

    c = all(dispersion_series(rc) == delay_coeffs(rc)
            for rc in (RealizationCoeffs(q(), q(), q(), q()) for _ in range(50)))
    jh = resolve_model("jordanian-hermitian")
    d = (abs(bound_MQ(MCCF, jh).bound_GeV / 28e17 - 1) < 0.035
         and abs(bound_MQ(MCCF, jh).bound_GeV / 2.88e18 - 1) < 1e-12
         and abs(bound_MQ(WAVELET, jh).bound_GeV / 2.08e18 - 1) < 0.005)
    (op_r, r), (op_s, s) = parameter_bound("jordanian", BETA_CAL), parameter_bound("abelian", BETA_CAL)
    e = op_r == ">" and abs(r / -1.208 - 1) < 1e-3 and op_s == "<" and abs(s / 0.604 - 1) < 1e-3
    assert announce(9, a and b and c and d and e, f"a={a} b={b} c={c} d={d} e={e}")
    assert a and b and c and d and e


# 10 --------------------------------------------------------------------------------

@pytest.mark.acceptance(10)
def test_c10_cosmological_integral():
    cos = Cosmology()
    z, H0 = 1e-4, cos.hubble_per_s()
    # small-z expansion of the integral, including its first correction
    taylor = (z / H0) * (1 + (1 - 1.5 * cos.omega_m) * z / 2)
    lin = abs(cosmo_integral(z, 1) / taylor - 1) < 1e-6
    quad = all(abs(cosmo_integral(zz, 2, rtol=1e-10) / cosmo_integral(zz, 2, rtol=5e-11) - 1) < 1e-8
               for zz in (0.1, 0.9, 3.0))
    assert announce(10, lin and quad, "(linearization with first correction)")
    assert lin and quad


@pytest.mark.acceptance(10, literal=True)
@pytest.mark.xfail(strict=True, reason="bare z/H0 misses the order-z correction (~3e-5 relative at z = 1e-4)")
def test_c10_bare_linear_term():
    H0 = Cosmology().hubble_per_s()
    z = 1e-4
    assert abs(cosmo_integral(z, 1) / (z / H0) - 1) < 1e-6


# 11 --------------------------------------------------------------------------------

@pytest.mark.acceptance(11)
def test_c11_schouten():
    aff = igl_affine()
    dp = Multivector.wedge(aff, [dilatation(aff), vec(aff, (1, "P0"))])
    dilat = schouten(dp, dp).is_zero()
    lie = real_form(poincare())
    r = kappa_r_matrix(lie)
    kappa = schouten(r, r) == lorentz_momentum_trivector(lie)
    assert announce(11, dilat and kappa)
    assert dilat and kappa


# 12 --------------------------------------------------------------------------------

@pytest.mark.acceptance(12)
def test_c12_yang_baxter_and_s_independence():
    qybe = all(check_qybe(build_twist(f, p, h_order=4)).is_zero()
               for f, p in (("abelian", F(1, 2)), ("jordanian", 3)))
    R = [universal_r_matrix(build_twist("abelian", s, h_order=6)) for s in (0, F(1, 2), 1)]
    indep = all(R[0] == x for x in R[1:])
    assert announce(12, qybe and indep)
    assert qybe and indep

