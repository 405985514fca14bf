"""Photon dispersion coefficients, time delays and quantum-gravity-scale bounds.

Symbolic quantities (b1, b2, B1, B2, c1, c2) are exact Fractions; delays,
cosmological integrals and GeV bounds are floats.

Units: energies in GeV, distances in Mpc, H0 in km/s/Mpc, times in seconds.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from scipy.integrate import quad

from .dsr import _pad, _ps_exp, _ps_integrate, _ps_inv, _ps_mul
from .errors import DegenerateModelError, NormalizationError, RegimeError, SingularParameterError

C_KM_S = 299792.458
MPC_KM = 3.0856775814913673e19
M_PLANCK_GEV = 1.22e19
QUAD_RTOL = 1e-10

Q = Fraction


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class RealizationCoeffs:
    """Low-order Taylor data of psi(A) = 1 + psi1 A + psi2 A^2 and gamma(A) = gamma0 + gamma1 A."""

    psi1: Fraction = Q(0)
    psi2: Fraction = Q(0)
    gamma0: Fraction = Q(0)
    gamma1: Fraction = Q(0)

    def __post_init__(self):
        for name in ("psi1", "psi2", "gamma0", "gamma1"):
            object.__setattr__(self, name, _q(getattr(self, name)))

    @classmethod
    def hermitian(cls, gamma0, gamma1=0) -> "RealizationCoeffs":
        g0, g1 = _q(gamma0), _q(gamma1)
        return cls(-3 * g0, Q(-3, 2) * g1, g0, g1)

    @classmethod
    def jordanian(cls, r) -> "RealizationCoeffs":
        return cls(psi1=_q(r))

    @classmethod
    def abelian(cls, s) -> "RealizationCoeffs":
        return cls(gamma0=_q(s))

    @classmethod
    def from_series(cls, psi: Sequence, gamma: Sequence) -> "RealizationCoeffs":
        psi = _pad(psi, 2)
        gamma = _pad(gamma, 1)
        if psi[0] != 1:
            raise NormalizationError("psi must start with 1")
        return cls(psi[1], psi[2], gamma[0], gamma[1])

    def psi(self) -> List[Fraction]:
        return [Q(1), self.psi1, self.psi2]

    def gamma(self) -> List[Fraction]:
        return [self.gamma0, self.gamma1]

    def is_hermitian(self) -> bool:
        return self.psi1 == -3 * self.gamma0 and self.psi2 == Q(-3, 2) * self.gamma1


@dataclass(frozen=True)
class DelayModel:
    """Dispersion and delay coefficients; the redundant ones are cross-checked on construction."""

    b1: Fraction
    b2: Fraction
    B1: Fraction
    B2: Fraction
    c1: Fraction
    c2: Fraction
    family: str = "custom"
    param: str = ""

    def __post_init__(self):
        b1, b2 = self.b1, self.b2
        expect = {"c1": b1, "c2": 2 * b1 * b1 - b2, "B1": 2 * b1, "B2": 2 * b1 * b1 - 3 * b2}
        bad = [k for k, v in expect.items() if getattr(self, k) != v]
        if bad:
            raise ValueError(f"inconsistent delay model: {', '.join(bad)}")

    @classmethod
    def from_b(cls, b1, b2, family: str = "custom", param: str = "") -> "DelayModel":
        b1, b2 = _q(b1), _q(b2)
        return cls(b1, b2, 2 * b1, 2 * b1 * b1 - 3 * b2, b1, 2 * b1 * b1 - b2, family, param)

    def speed_coeffs(self) -> Tuple[Fraction, Fraction]:
        """(xi, zeta) of c'/c = 1 + xi E/M_Q + zeta E^2/M_Q^2."""
        return 2 * self.b1, 4 * self.b1 ** 2 - 3 * self.b2

    def as_dict(self) -> Dict[str, str]:
        return {k: str(getattr(self, k)) for k in ("b1", "b2", "B1", "B2", "c1", "c2")}


@dataclass(frozen=True)
class Cosmology:
    H0: float = 71.0
    omega_m: float = 0.27
    omega_l: float = 0.73

    def __post_init__(self):
        if abs(self.omega_m + self.omega_l - 1) > 1e-6:
            warnings.warn("Omega_M + Omega_Lambda differs from 1", stacklevel=2)

    def hubble_per_s(self) -> float:
        return self.H0 / MPC_KM

    def hubble(self, z: float) -> float:
        """h(z) in 1/s."""
        return self.hubble_per_s() * math.sqrt(self.omega_l + self.omega_m * (1 + z) ** 3)


@dataclass(frozen=True)
class BoundInput:
    """Limit on M_Q for a model with |B1| = 1 (linear) or |B2| = 1 (quadratic), in GeV."""

    linear_GeV: Optional[float] = None
    quadratic_GeV: Optional[float] = None
    name: str = ""

    def __post_init__(self):
        for v in (self.linear_GeV, self.quadratic_GeV):
            if v is not None and not v > 0:
                raise ValueError("baselines must be positive")

    @classmethod
    def from_ratio(cls, ratio: float) -> "BoundInput":
        return cls(linear_GeV=ratio * M_PLANCK_GEV, name=f"M_Q/M_Pl>{ratio}")


# ---------------------------------------------------------------------------
# closed formulas


def delay_coeffs(rc: RealizationCoeffs, family: str = "custom", param: str = "") -> DelayModel:
    p1, p2, g0, g1 = rc.psi1, rc.psi2, rc.gamma0, rc.gamma1
    b1 = Q(1, 2) * (2 * g0 - 1 - p1)
    # psi2 enters with weight 2 (the series expansion fixes it)
    b2 = Q(1, 6) * (1 + 3 * p1 + 2 * p1 * p1 - 2 * p2 + 3 * g0 * g0 - 3 * g0 + 3 * g1 - 6 * g0 * p1)
    B1 = 2 * g0 - 1 - p1
    B2 = Q(1, 2) * (g0 * g0 - p1 * p1 - g0 + 2 * p1 * g0 - p1 + 2 * p2 - 3 * g1)
    return DelayModel(b1, b2, B1, B2, b1, 2 * b1 * b1 - b2, family, param)


# ---------------------------------------------------------------------------
# series route


def momentum_over_energy(psi: Sequence, gamma: Sequence, order: int) -> List[Fraction]:
    """Taylor coefficients in A = -E/M_Q of |p|/E = (1 - exp(-int dA/psi))/A * exp(int gamma dA/psi)."""
    n = order + 1
    psi, gamma = _pad(psi, n), _pad(gamma, n)
    if psi[0] != 1:
        raise NormalizationError("psi must start with 1")
    inv = _ps_inv(psi, n)
    lam = _ps_integrate(inv, n)
    one_minus = [-c for c in _ps_exp([-c for c in lam], n)]
    one_minus[0] += 1
    ratio = one_minus[1:]
    grow = _ps_exp(_ps_integrate(_ps_mul(gamma, inv, n), n), n)
    return _ps_mul(ratio, grow, order)


def dispersion_series(rc_or_psi, gamma: Optional[Sequence] = None, order: int = 2,
                      family: str = "custom", param: str = "") -> DelayModel:
    """Read b1, b2 off |p| = E(1 - b1 E/M_Q + b2 E^2/M_Q^2), i.e. |p|/E = 1 + b1 A + b2 A^2."""
    if order < 2:
        raise ValueError("order must be at least 2")
    if isinstance(rc_or_psi, RealizationCoeffs):
        psi, gamma = rc_or_psi.psi(), rc_or_psi.gamma()
    else:
        psi = rc_or_psi
    c = momentum_over_energy(psi, gamma or [0], order)
    assert c[0] == 1
    return DelayModel.from_b(c[1], c[2], family, param)


def _compose(outer: Sequence[Fraction], inner: Sequence[Fraction], n: int) -> List[Fraction]:
    """outer(inner(t)) for inner without constant term."""
    out = [Fraction(0)] * (n + 1)
    power = [Fraction(1)] + [Fraction(0)] * n
    for c in outer[:n + 1]:
        out = [a + c * b for a, b in zip(out, power)]
        power = _ps_mul(power, inner, n)
    return out


def _revert(f: Sequence[Fraction], n: int) -> List[Fraction]:
    """Compositional inverse of f(t) = t + ... by the fixed-point step g <- g - (f(g) - t)."""
    f = _pad(f, n)
    t = [Fraction(0), Fraction(1)] + [Fraction(0)] * (n - 1)
    g = list(t)
    for _ in range(n):
        fg = _compose(f, g, n)
        g = [gi - (a - ti) for gi, a, ti in zip(g, fg, t)]
    return g


def delay_from_velocity(dm: DelayModel) -> Dict[str, Fraction]:
    """Second-order coefficients rederived from the group velocity dE/d|p|.

    Independent of the closed identities: invert x(y) = y(1 - b1 y + b2 y^2),
    x = |p|/M_Q, y = E/M_Q, differentiate, and expand 1 - 1/v.
    """
    n = 3
    x_of_y = [Q(0), Q(1), -dm.b1, dm.b2]
    y_of_x = _revert(x_of_y, n)
    v_of_x = [(k + 1) * y_of_x[k + 1] for k in range(n)]
    lag_x = [-c for c in _ps_inv(v_of_x, n - 1)]
    lag_x[0] += 1
    v_of_y = _compose(v_of_x, x_of_y, n - 1)
    lag_y = _compose(lag_x, x_of_y, n - 1)
    return {"c1": y_of_x[2], "c2": y_of_x[3], "B1": lag_x[1], "B2": lag_x[2], "E1": lag_y[1], "E2": lag_y[2],
            "xi": v_of_y[1], "zeta": v_of_y[2]}


# ---------------------------------------------------------------------------
# model zoo


def jordanian_model(r) -> DelayModel:
    return delay_coeffs(RealizationCoeffs.jordanian(r), "jordanian", str(_q(r)))


def abelian_model(s) -> DelayModel:
    return delay_coeffs(RealizationCoeffs.abelian(s), "abelian", str(_q(s)))


def hermitian_model(gamma0, gamma1=0) -> DelayModel:
    return delay_coeffs(RealizationCoeffs.hermitian(gamma0, gamma1), "hermitian", f"{_q(gamma0)},{_q(gamma1)}")


# Hermitian members of the one-parameter families
JORDANIAN_HERMITIAN_R = Q(3)
ABELIAN_HERMITIAN_S = Q(0)


def resolve_model(name: str, param=None, b1=None, b2=None) -> DelayModel:
    name = name.lower()
    if name == "custom":
        if b1 is None or b2 is None:
            raise ValueError("custom model needs b1 and b2")
        return DelayModel.from_b(b1, b2, "custom", f"{_q(b1)},{_q(b2)}")
    if name == "jordanian-hermitian":
        return jordanian_model(JORDANIAN_HERMITIAN_R)
    if name == "abelian-hermitian":
        return abelian_model(ABELIAN_HERMITIAN_S)
    if name in ("abelian-dsr", "bicrossproduct"):
        return abelian_model(1)
    if name == "magueijo-smolin":
        return dispersion_series([1, -3, 2], [0], 2, "magueijo-smolin", "")
    if param is None:
        raise ValueError(f"model {name!r} needs a parameter")
    if name == "jordanian":
        return jordanian_model(param)
    if name == "abelian":
        return abelian_model(param)
    if name == "hermitian":
        parts = str(param).split(",")
        return hermitian_model(*parts)
    raise ValueError(f"unknown model {name!r}")


# ---------------------------------------------------------------------------
# delays


def light_time_s(l_mpc: float) -> float:
    return l_mpc * MPC_KM / C_KM_S


def _check_regime(E: float, M_Q: float) -> None:
    if not 0 <= E < M_Q:
        raise RegimeError(f"energy {E} GeV outside 0 <= E < M_Q = {M_Q} GeV")


def time_delay(E: float, l_mpc: float, M_Q: float, dm: DelayModel, form: str = "energy") -> float:
    """Delta t relative to undeformed propagation; ``form`` picks the energy or momentum expansion."""
    _check_regime(E, M_Q)
    x = E / M_Q
    if form == "energy":
        return -light_time_s(l_mpc) * x * (2 * float(dm.b1) - 3 * float(dm.b2) * x) + 0.0
    if form == "momentum":
        return -light_time_s(l_mpc) * x * (float(dm.B1) + float(dm.B2) * x) + 0.0
    raise ValueError(f"unknown form {form!r}")


def time_delay_coeffs(dm: DelayModel, form: str = "energy") -> Tuple[Fraction, Fraction]:
    """(k1, k2) with Delta t = -(l/c)(k1 x + k2 x^2), x = E/M_Q or |p|/M_Q."""
    if form == "energy":
        return 2 * dm.b1, -3 * dm.b2
    return dm.B1, dm.B2


def relative_delay(E_low: float, E_high: float, l_mpc: float, M_Q: float, dm: DelayModel) -> float:
    _check_regime(E_high, M_Q)
    _check_regime(E_low, M_Q)
    dE = (E_low - E_high) / M_Q
    dE2 = (E_low ** 2 - E_high ** 2) / M_Q ** 2
    return -light_time_s(l_mpc) * (2 * float(dm.b1) * dE - 3 * float(dm.b2) * dE2)


def speed_ratio(E: float, M_Q: float, dm: DelayModel) -> float:
    xi, zeta = dm.speed_coeffs()
    x = E / M_Q
    return 1 + float(xi) * x + float(zeta) * x * x


def cosmo_integral(z: float, power: int, cos: Cosmology = Cosmology(), rtol: float = QUAD_RTOL) -> float:
    """int_0^z (1+z')^power / h(z') dz' in seconds."""
    if z < 0:
        raise ValueError("redshift must be non-negative")
    if z == 0:
        return 0.0
    val, _ = quad(lambda t: (1 + t) ** power / cos.hubble(t), 0.0, z, epsrel=rtol, epsabs=0.0, limit=200)
    return val


def cosmological_delay(z: float, dE: float, M_Q: float, dm: DelayModel, cos: Cosmology = Cosmology(),
                       rtol: float = QUAD_RTOL) -> float:
    """Time lag in s between photons whose observed energies differ by dE GeV, emitted at redshift z."""
    if z < 0:
        raise ValueError("redshift must be non-negative")
    k1 = cosmo_integral(z, 1, cos, rtol)
    k2 = cosmo_integral(z, 2, cos, rtol)
    return -2 * float(dm.b1) * dE / M_Q * k1 + 3 * float(dm.b2) * dE ** 2 / M_Q ** 2 * k2


def cosmological_terms(z: float, dE: float, M_Q: float, dm: DelayModel, cos: Cosmology = Cosmology()) -> Tuple[float, float]:
    """The first- and second-order contributions separately."""
    return (-2 * float(dm.b1) * dE / M_Q * cosmo_integral(z, 1, cos),
            3 * float(dm.b2) * dE ** 2 / M_Q ** 2 * cosmo_integral(z, 2, cos))


# ---------------------------------------------------------------------------
# bounds

MCCF = BoundInput(linear_GeV=7.2e17, quadratic_GeV=1.31e9 / math.sqrt(1 / 8), name="mccf")
WAVELET = BoundInput(linear_GeV=5.2e17, name="wavelet")
BASELINES = {"mccf": MCCF, "wavelet": WAVELET}

# effective |B1| cap used for parameter bounds
BETA_CAL = 0.2085


@dataclass(frozen=True)
class BoundResult:
    kind: str
    bound_GeV: float
    degenerate: bool = False


def bound_MQ(inp: BoundInput, dm: DelayModel, kind: str = "auto") -> BoundResult:
    """Lower bound on M_Q: |B1| * linear baseline, or sqrt|B2| * quadratic baseline."""
    if kind not in ("auto", "linear", "quadratic"):
        raise ValueError(f"unknown bound kind {kind!r}")
    degenerate = False
    if kind in ("auto", "linear"):
        if dm.B1 != 0:
            if inp.linear_GeV is None:
                raise ValueError("no linear baseline")
            return BoundResult("linear", abs(float(dm.B1)) * inp.linear_GeV)
        degenerate = True
    if dm.B2 == 0:
        raise DegenerateModelError("B1 = B2 = 0: no delay, no bound")
    if inp.quadratic_GeV is None:
        raise DegenerateModelError("B1 = 0 and no quadratic baseline")
    return BoundResult("quadratic", math.sqrt(abs(float(dm.B2))) * inp.quadratic_GeV, degenerate)


def parameter_bound(family: str, beta: float = BETA_CAL) -> Tuple[str, float]:
    """Invert |B1| <= beta on the side containing the Hermitian member."""
    if family == "jordanian":
        # B1 = -(1 + r)
        return ">", -1 - beta
    if family == "abelian":
        # B1 = 2 s - 1
        return "<", (1 + beta) / 2
    raise ValueError(f"no parameter bound for family {family!r}")


def b1_cap_from_ratio(ratio: float) -> float:
    """Leading coefficient cap 2 b1 <= M_Q/M_Pl read at M_Q = M_Pl."""
    return 1 / (2 * ratio)


# ---------------------------------------------------------------------------
# covariant realizations


def covariant_dispersion(phi, E: float, p: float, M_Q: float) -> float:
    """m^2 = (E^2 - p^2) / ((phi - E/M_Q)^2 - p^2/M_Q^2)."""
    den = (float(phi) - E / M_Q) ** 2 - (p / M_Q) ** 2
    if den == 0:
        raise SingularParameterError("singular covariant dispersion denominator")
    return (E * E - p * p) / den


def covariant_photon_momentum(phi, E: float, M_Q: float) -> float:
    """|p| on the massless shell; the denominator plays no role, so |p| = E."""
    covariant_dispersion(phi, E, E, M_Q)
    return E


def magueijo_smolin_mass(E: float, p: float, M_Q: float) -> float:
    """m^2 = E^2/(1 + E/M_Q)^2 - p^2."""
    return E * E / (1 + E / M_Q) ** 2 - p * p


def magueijo_smolin_photon_series(order: int = 2) -> List[Fraction]:
    """|p|/E = 1/(1 + E/M_Q) = 1/(1 - A) in powers of A = -E/M_Q."""
    return [Q(1)] * (order + 1)


# ---------------------------------------------------------------------------
# tabulation


def delay_row(dm: DelayModel, E: float = float("nan"), z: float = float("nan"), delay_s: float = float("nan"),
              bound_GeV: float = float("nan")) -> Dict[str, object]:
    return {"model": dm.family, "param": dm.param, "b1": float(dm.b1), "b2": float(dm.b2),
            "B1": float(dm.B1), "B2": float(dm.B2), "E_GeV": E, "z": z, "delay_s": delay_s, "bound_GeV": bound_GeV}


ROW_COLUMNS = ("model", "param", "b1", "b2", "B1", "B2", "E_GeV", "z", "delay_s", "bound_GeV")
