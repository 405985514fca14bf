"""Lie algebras given by structure constants, multivectors and the Schouten bracket."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import KappaError, UnknownGeneratorError
from .scalar import Scalar, format_scalar
from .weyl import MINKOWSKI, MetricSig, WeylElement, algebra, gen_boost, gen_D, gen_L, gen_rotation

ZERO = Scalar(0)


class JacobiError(KappaError):
    """Structure constants violate antisymmetry or the Jacobi identity."""


def _perm_sign(seq: Sequence[int]) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


@dataclass
class LieStructure:
    """Basis names and brackets [e_a, e_b] = sum_c f_ab^c e_c (coefficients Scalar)."""

    basis: Tuple[str, ...]
    table: Dict[Tuple[int, int], Dict[int, Scalar]] = field(default_factory=dict)

    def index(self, name: str) -> int:
        try:
            return self.basis.index(name)
        except ValueError:
            raise UnknownGeneratorError(f"unknown generator {name!r}") from None

    def bracket(self, a: int, b: int) -> Dict[int, Scalar]:
        if a == b:
            return {}
        if (a, b) in self.table:
            return self.table[(a, b)]
        if (b, a) in self.table:
            return {c: -v for c, v in self.table[(b, a)].items()}
        return {}

    def bracket_vec(self, u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Dict[int, Scalar]:
        out: Dict[int, Scalar] = {}
        for a, ca in u.items():
            for b, cb in v.items():
                for c, f in self.bracket(a, b).items():
                    out[c] = out.get(c, ZERO) + ca * cb * f
        return {k: v for k, v in out.items() if v}

    def validate(self) -> None:
        for (a, b), row in self.table.items():
            if (b, a) in self.table:
                back = self.table[(b, a)]
                keys = set(row) | set(back)
                if any(row.get(k, ZERO) + back.get(k, ZERO) for k in keys):
                    raise JacobiError(f"bracket not antisymmetric on ({self.basis[a]}, {self.basis[b]})")
        n = len(self.basis)
        for a, b, c in itertools.combinations(range(n), 3):
            tot: Dict[int, Scalar] = {}
            for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                inner = self.bracket(y, z)
                part = self.bracket_vec({x: Scalar(1)}, inner)
                for k, v in part.items():
                    tot[k] = tot.get(k, ZERO) + v
            if any(tot.values()):
                raise JacobiError(f"Jacobi identity fails on ({self.basis[a]}, {self.basis[b]}, {self.basis[c]})")


def structure_from_weyl(names: Sequence[str], elements: Sequence[WeylElement]) -> LieStructure:
    """Read structure constants off commutators of realized generators by exact elimination."""
    vecs = [_flatten(e) for e in elements]
    keys = sorted({k for v in vecs for k in v})
    table: Dict[Tuple[int, int], Dict[int, Scalar]] = {}
    for a in range(len(elements)):
        for b in range(a + 1, len(elements)):
            comm = elements[a] * elements[b] - elements[b] * elements[a]
            if comm.is_zero():
                continue
            coeffs = _solve(vecs, _flatten(comm), keys)
            if coeffs is None:
                raise JacobiError(f"[{names[a]}, {names[b]}] leaves the span of the basis")
            table[(a, b)] = coeffs
    return LieStructure(tuple(names), table)


def _flatten(e: WeylElement) -> Dict[tuple, Scalar]:
    out = {}
    for xk, ser in e.terms.items():
        for sc_key, sc in _series_items(ser):
            out[(xk, sc_key)] = sc
    return out


def _series_items(ser):
    for hk, exps, re, im in ser.raw_terms():
        yield (hk, exps), Scalar(Fraction(int(re.numerator), int(re.denominator)),
                                 Fraction(int(im.numerator), int(im.denominator)))


def _solve(vecs: List[Dict], target: Dict, keys: List) -> Optional[Dict[int, Scalar]]:
    """Exact Gaussian elimination for sum_i c_i vecs[i] = target."""
    n = len(vecs)
    rows = [[v.get(k, ZERO) for v in vecs] + [target.get(k, ZERO)] for k in keys]
    for k in target:
        if k not in set(keys):
            return None
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(row[-1] for row in rows[r:]):
        return None
    return {c: rows[i][-1] for i, c in enumerate(piv_cols) if rows[i][-1]}


# ---------------------------------------------------------------------------
# multivectors


@dataclass
class Multivector:
    """Sum of wedge monomials e_{i1} ^ ... ^ e_{ik} keyed by strictly increasing index tuples."""

    lie: LieStructure
    degree: int
    terms: Dict[Tuple[int, ...], Scalar] = field(default_factory=dict)

    @classmethod
    def wedge(cls, lie: LieStructure, factors: Sequence[Mapping[int, Scalar]], coef=1) -> "Multivector":
        out = cls(lie, len(factors))
        for combo in itertools.product(*[list(f.items()) for f in factors]):
            idx = [c[0] for c in combo]
            if len(set(idx)) < len(idx):
                continue
            val = Scalar.coerce(coef)
            for c in combo:
                val = val * c[1]
            key = tuple(sorted(idx))
            val = val * _perm_sign(idx)
            out.terms[key] = out.terms.get(key, ZERO) + val
        out.terms = {k: v for k, v in out.terms.items() if v}
        return out

    def __add__(self, other: "Multivector") -> "Multivector":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return Multivector(self.lie, self.degree, {k: v for k, v in out.items() if v})

    def __neg__(self) -> "Multivector":
        return Multivector(self.lie, self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "Multivector") -> "Multivector":
        return self + (-other)

    def scale(self, c) -> "Multivector":
        c = Scalar.coerce(c)
        return Multivector(self.lie, self.degree, {k: v * c for k, v in self.terms.items() if v * c})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, Multivector) and (self - other).is_zero()

    def ratio_to(self, other: "Multivector") -> Optional[Scalar]:
        """c with self = c * other, or None if not proportional."""
        if other.is_zero():
            return Scalar(0) if self.is_zero() else None
        k0 = next(iter(other.terms))
        c = self.terms.get(k0, ZERO) * other.terms[k0].inverse()
        return c if (self - other.scale(c)).is_zero() else None

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            name = "^".join(self.lie.basis[i] for i in k)
            parts.append(f"({format_scalar(self.terms[k])})*{name}")
        return " + ".join(parts)


def schouten(r1: Multivector, r2: Multivector) -> Multivector:
    """[[a^b, c^d]] = [a,d]^b^c - [a,c]^b^d + [b,c]^a^d - [b,d]^a^c, extended bilinearly."""
    if r1.degree != 2 or r2.degree != 2:
        raise ValueError("Schouten bracket implemented for bivectors")
    lie = r1.lie
    out = Multivector(lie, 3)
    for (a, b), x in r1.terms.items():
        for (c, d), y in r2.terms.items():
            coef = x * y
            for sign, (p, q), s, t in ((1, (a, d), b, c), (-1, (a, c), b, d), (1, (b, c), a, d), (-1, (b, d), a, c)):
                br = lie.bracket(p, q)
                if br:
                    out = out + Multivector.wedge(lie, [br, {s: Scalar(1)}, {t: Scalar(1)}], coef * sign)
    return out


def vec(lie: LieStructure, *pairs) -> Dict[int, Scalar]:
    """Vector from (coefficient, name) pairs."""
    out: Dict[int, Scalar] = {}
    for c, name in pairs:
        i = lie.index(name)
        out[i] = out.get(i, ZERO) + Scalar.coerce(c)
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# standard algebras


def poincare(metric: MetricSig = MINKOWSKI) -> LieStructure:
    """Poincare algebra on M_i, N_i, P_mu with constants read off the Heisenberg realization."""
    alg = algebra(4, 1, 2, metric)
    names = [f"M{i}" for i in (1, 2, 3)] + [f"N{i}" for i in (1, 2, 3)] + [f"P{m}" for m in range(4)]
    els = [gen_rotation(alg, i) for i in (1, 2, 3)] + [gen_boost(alg, i) for i in (1, 2, 3)] + \
          [alg.p(m) for m in range(4)]
    lie = structure_from_weyl(names, els)
    lie.validate()
    return lie


def igl_affine(n: int = 4) -> LieStructure:
    """igl(n): L^a_b and P_mu, plus D and L^0_0 expressed through them."""
    alg = algebra(n, 1, 2)
    names = [f"L{a}{b}" for a in range(n) for b in range(n)] + [f"P{m}" for m in range(n)]
    els = [gen_L(alg, a, b) for a in range(n) for b in range(n)] + [alg.p(m) for m in range(n)]
    lie = structure_from_weyl(names, els)
    lie.validate()
    return lie


def dilatation(lie: LieStructure, n: int = 4) -> Dict[int, Scalar]:
    return vec(lie, *[(1, f"L{k}{k}") for k in range(1, n)])


def kappa_r_matrix(lie: LieStructure, metric: MetricSig = MINKOWSKI) -> Multivector:
    """N_i ^ P^i with the spatial index raised by the metric."""
    out = Multivector(lie, 2)
    for i in (1, 2, 3):
        out = out + Multivector.wedge(lie, [vec(lie, (1, f"N{i}")), vec(lie, (metric.signs[i], f"P{i}"))])
    return out


def lorentz_momentum_trivector(lie: LieStructure, metric: MetricSig = MINKOWSKI) -> Multivector:
    """M_{mu nu} ^ P^mu ^ P^nu summed over all mu, nu, with M_{ij} = eps_ijk M_k and M_{0i} = N_i."""
    out = Multivector(lie, 3)
    for mu in range(4):
        for nu in range(4):
            if mu == nu:
                continue
            m = _lorentz_component(lie, mu, nu)
            pu = vec(lie, (metric.signs[mu], f"P{mu}"))
            pv = vec(lie, (metric.signs[nu], f"P{nu}"))
            out = out + Multivector.wedge(lie, [m, pu, pv])
    return out


def _lorentz_component(lie: LieStructure, mu: int, nu: int) -> Dict[int, Scalar]:
    if mu == 0:
        return vec(lie, (1, f"N{nu}"))
    if nu == 0:
        return vec(lie, (-1, f"N{mu}"))
    for k in (1, 2, 3):
        if k not in (mu, nu):
            eps = _perm_sign([mu - 1, nu - 1, k - 1])
            return vec(lie, (eps, f"M{k}"))
    raise ValueError("bad indices")


def real_form(lie: LieStructure) -> LieStructure:
    """Rescale every generator X -> -i X; Hermitian constants with a factor i become real."""
    mi = Scalar(0, -1)
    table = {k: {c: v * mi for c, v in row.items()} for k, row in lie.table.items()}
    return LieStructure(lie.basis, table)
