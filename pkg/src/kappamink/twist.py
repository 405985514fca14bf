"""Twist elements, cocycle checks, star products, twisted Hopf structure, r-matrices.

A twist is an ordered product of exponentials exp(c * A (x) B) of abstract
two-tensors, optionally plus additive pure-tensor perturbations. Every
identity is checked in the Heisenberg realization (leg j of a multi-leg Weyl
algebra is tensor factor j).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import igl
from .errors import SingularParameterError
from .igl import ONE, Expr, Lin, Mom, Prod, antipode, counit, h_coef, momentum_symbols, realize
from .scalar import Scalar
from .series import DEFAULT_ORDER, TruncSeries
from .weyl import PolyState, WeylAlgebra, WeylElement, act, algebra, gen_L

I = Scalar(0, 1)

Factor = Tuple[TruncSeries, Expr, Expr]


@dataclass
class Twist:
    family: str
    param: object
    n: int
    h_order: int
    factors: List[Factor]
    extra: List[Factor] = field(default_factory=list)
    _memo: Dict = field(default_factory=dict, repr=False, compare=False)

    def alg(self, legs: int) -> WeylAlgebra:
        return algebra(self.n, legs, self.h_order)

    def realize(self, alg: WeylAlgebra, g1: Sequence[int], g2: Sequence[int]) -> WeylElement:
        """F with its first factor on leg group g1 and second on g2."""
        key = ("F", alg.key(), tuple(g1), tuple(g2))
        if key in self._memo:
            return self._memo[key]
        out = alg.one()
        for c, a, b in self.factors:
            e = (realize(a, alg, g1) * realize(b, alg, g2)).scale(alg.coerce_series(c))
            out = out * e.exp()
        for c, a, b in self.extra:
            out = out + (realize(a, alg, g1) * realize(b, alg, g2)).scale(alg.coerce_series(c))
        self._memo[key] = out
        return out

    def realize_inverse(self, alg: WeylAlgebra, g1: Sequence[int], g2: Sequence[int]) -> WeylElement:
        key = ("Finv", alg.key(), tuple(g1), tuple(g2))
        if key in self._memo:
            return self._memo[key]
        if self.extra:
            out = self.realize(alg, g1, g2).inverse()
        else:
            out = alg.one()
            for c, a, b in reversed(self.factors):
                e = (realize(a, alg, g1) * realize(b, alg, g2)).scale(-alg.coerce_series(c))
                out = out * e.exp()
        self._memo[key] = out
        return out

    def corrupted(self, which: int = 0) -> "Twist":
        """Copy with the quadratic term c^2 A^2 (x) B^2 / 2 of one exponential
        factor removed, a single-coefficient perturbation first visible at h^2."""
        c, a, b = self.factors[which]
        half = c * c.scale(Fraction(-1, 2))
        return Twist(self.family + "+corrupt", self.param, self.n, self.h_order, list(self.factors),
                     list(self.extra) + [(half, Prod((a, a)), Prod((b, b)))])


def _sigma(r: Fraction, n: int, h_order: int) -> TruncSeries:
    """ln(1 - h r P0) as an abstract momentum series."""
    base = TruncSeries.zero(momentum_symbols(n), h_order)
    return base.like_monomial({"h": 1, "P0": 1}, -r).log1p()


def jordanian_power(beta, r, n: int = 4, h_order: int = DEFAULT_ORDER) -> TruncSeries:
    """(1 - h r P0)^beta."""
    base = TruncSeries.zero(momentum_symbols(n), h_order)
    return (base.like_const(1) + base.like_monomial({"h": 1, "P0": 1}, -Fraction(r))).pow_fractional(Fraction(beta))


def exp_hP0(c, n: int = 4, h_order: int = DEFAULT_ORDER) -> TruncSeries:
    """exp(c h P0)."""
    base = TruncSeries.zero(momentum_symbols(n), h_order)
    return base.like_monomial({"h": 1, "P0": 1}, c).exp()


def build_twist(family: str, param=None, h_order: int = DEFAULT_ORDER, n: int = 4, theta=None,
                u: Optional[Tuple[object, Sequence[Expr]]] = None) -> Twist:
    """Construct a twist.

    abelian: exp[i h (s P0 (x) D - (1-s) D (x) P0)]
    jordanian: exp(J_r (x) ln(1 - h r P0))
    theta: exp[(i h / 2) theta^{mu nu} P_mu (x) P_nu]
    coboundary: exp(-u (x) 1 - 1 (x) u) exp(Delta u) with u = c * X1 * ... * Xk
    (the X's mutually commuting primitive generators).
    """
    fam = family.lower()
    hc = lambda v: h_coef(v, 1, h_order)  # noqa: E731
    if fam == "abelian":
        s = Fraction(param)
        factors = []
        if s:
            factors.append((hc(I * s), igl.P(0), igl.D(n)))
        if s != 1:
            factors.append((hc(-I * (1 - s)), igl.D(n), igl.P(0)))
        return Twist("abelian", s, n, h_order, factors)
    if fam == "jordanian":
        r = Fraction(param)
        if r == 0:
            raise SingularParameterError("Jordanian twist needs r != 0")
        sig = Mom(_sigma(r, n, h_order))
        one = TruncSeries.zero((), h_order).like_const(1)
        return Twist("jordanian", r, n, h_order, [(one, igl.J(r, n), sig)])
    if fam == "theta":
        th = [[Fraction(v) for v in row] for row in (theta if theta is not None else param)]
        if len(th) != n and len(th) < n:
            th = _pad_theta(th, n)
        for a in range(n):
            for b in range(n):
                if th[a][b] != -th[b][a]:
                    raise ValueError("theta must be antisymmetric")
        factors = []
        for a in range(n):
            for b in range(n):
                if th[a][b]:
                    factors.append((hc(I * th[a][b] / 2), igl.P(a), igl.P(b)))
        return Twist("theta", th, n, h_order, factors)
    if fam in ("coboundary", "trivial-coboundary"):
        if u is None:
            raise ValueError("coboundary twist needs u = (coefficient, [generators])")
        coef, gens = u
        coef = coef if isinstance(coef, TruncSeries) else TruncSeries.zero((), h_order).like_const(coef)
        gens = list(gens)
        whole = Prod(tuple(gens)) if len(gens) > 1 else gens[0]
        factors: List[Factor] = [(-coef, whole, ONE), (-coef, ONE, whole)]
        k = len(gens)
        for mask in itertools.product((0, 1), repeat=k):
            left = [g for g, m in zip(gens, mask) if m == 0]
            right = [g for g, m in zip(gens, mask) if m == 1]
            a = ONE if not left else (left[0] if len(left) == 1 else Prod(tuple(left)))
            b = ONE if not right else (right[0] if len(right) == 1 else Prod(tuple(right)))
            factors.append((coef, a, b))
        return Twist("coboundary", u, n, h_order, factors)
    if fam == "trivial":
        return Twist("trivial", None, n, h_order, [])
    raise ValueError(f"unknown twist family {family!r}")


def _pad_theta(th, n):
    out = [[Fraction(0)] * n for _ in range(n)]
    for a, row in enumerate(th):
        for b, v in enumerate(row):
            out[a][b] = v
    return out


# ---------------------------------------------------------------------------
# cocycle and normalization


def check_cocycle(tw: Twist) -> WeylElement:
    """F12 (Delta x id)F - F23 (id x Delta)F on three legs."""
    A = tw.alg(3)
    lhs = tw.realize(A, (0,), (1,)) * tw.realize(A, (0, 1), (2,))
    rhs = tw.realize(A, (1,), (2,)) * tw.realize(A, (0,), (1, 2))
    return lhs - rhs


def check_normalization(tw: Twist) -> Tuple[WeylElement, WeylElement]:
    """((eps x id)F - 1, (id x eps)F - 1) on one leg."""
    A = tw.alg(1)
    outs = []
    for side in (0, 1):
        acc = A.one()
        for c, a, b in tw.factors:
            keep, kill = (b, a) if side == 0 else (a, b)
            e = realize(keep, A, (0,)).scale(A.coerce_series(c) * A.coerce_series(counit(kill, tw.h_order)))
            acc = acc * e.exp()
        for c, a, b in tw.extra:
            keep, kill = (b, a) if side == 0 else (a, b)
            acc = acc + realize(keep, A, (0,)).scale(A.coerce_series(c) * A.coerce_series(counit(kill, tw.h_order)))
        outs.append(acc - A.one())
    return outs[0], outs[1]


# ---------------------------------------------------------------------------
# star products and realizations


def star_product(tw: Twist, f: PolyState, g: PolyState) -> PolyState:
    """m( F^{-1} acting on f (x) g )."""
    A = tw.alg(2)
    finv = tw.realize_inverse(A, (0,), (1,))
    state = _lift_state(f, tw.h_order).embed(2, 0) * _lift_state(g, tw.h_order).embed(2, 1)
    return act(finv, state).merge_legs()


def _lift_state(f: PolyState, order: int) -> PolyState:
    if f.h_order == order:
        return f
    return PolyState(f.n, f.legs, order, {k: v.with_order(order) for k, v in f.terms.items()})


def star_commutator(tw: Twist, f: PolyState, g: PolyState) -> PolyState:
    return star_product(tw, f, g) - star_product(tw, g, f)


def partial_act(w: WeylElement, f: PolyState, leg: int) -> WeylElement:
    """Act with leg ``leg`` of a two-leg element on f; the other leg survives as an
    operator placed to the right of the resulting polynomial."""
    from .weyl import _MINUS_I_POW

    alg = w.alg
    n = alg.n
    other = 1 - leg
    single = algebra(n, 1, alg.h_order, alg.metric)
    f = _lift_state(f, alg.h_order)
    dcache: Dict[Tuple[int, ...], PolyState] = {(0,) * n: f}

    def dpoly(a):
        d = dcache.get(a)
        if d is None:
            i = next(j for j in range(n) if a[j])
            prev = list(a)
            prev[i] -= 1
            d = dpoly(tuple(prev)).derivative(i)
            dcache[a] = d
        return d

    acc: Dict[Tuple[int, ...], Dict[Tuple[int, ...], Scalar]] = {}
    deg = f.degree()
    for xk, c in w.terms.items():
        xa = xk[leg * n:(leg + 1) * n]
        xr = xk[other * n:(other + 1) * n]
        for hk, exps, re, im in c.raw_terms():
            pa = exps[leg * n:(leg + 1) * n]
            if sum(pa) > deg:
                continue
            pr = exps[other * n:(other + 1) * n]
            d = dpoly(pa)
            if d.is_zero():
                continue
            coef = Scalar(Fraction(int(re.numerator), int(re.denominator)),
                          Fraction(int(im.numerator), int(im.denominator))) * _MINUS_I_POW[sum(pa) % 4]
            for mono, ser in d.terms.items():
                key = tuple(mono[i] + xa[i] + xr[i] for i in range(n))
                bucket = acc.setdefault(key, {})
                for sexps, sval in ser.terms():
                    th = hk + sexps[0]
                    if th > alg.h_order:
                        continue
                    kk = (th,) + tuple(pr)
                    bucket[kk] = bucket.get(kk, Scalar(0)) + coef * sval
    terms = {}
    for key, d in acc.items():
        s = TruncSeries.from_terms(single.pvars, {k: v for k, v in d.items() if v}, alg.h_order).in_ring(single.ring)
        if s:
            terms[key] = s
    return WeylElement(single, terms)


def left_realization(tw: Twist, mu: int) -> WeylElement:
    """x^mu_L = sum (fbar^a acting on x^mu) fbar_a."""
    A = tw.alg(2)
    finv = tw.realize_inverse(A, (0,), (1,))
    return partial_act(finv, PolyState.x(mu, tw.n, 1, tw.h_order), 0)


def right_realization(tw: Twist, mu: int) -> WeylElement:
    """x^mu_R = sum (fbar_a acting on x^mu) fbar^a."""
    A = tw.alg(2)
    finv = tw.realize_inverse(A, (0,), (1,))
    return partial_act(finv, PolyState.x(mu, tw.n, 1, tw.h_order), 1)


def star_commutator_with_function(tw: Twist, mu: int, f: PolyState) -> PolyState:
    """[x^mu, f]_star = x^mu_L(f) - x^mu_R(f)."""
    return act(left_realization(tw, mu) - right_realization(tw, mu), _lift_state(f, tw.h_order))


def realize_coordinates(family: str, param, side: str = "left", h_order: int = DEFAULT_ORDER, n: int = 4) -> List[WeylElement]:
    """Closed-form coordinate realizations of the Abelian and Jordanian families."""
    A = algebra(n, 1, h_order)
    fam = family.lower()
    hp0 = A.hs(1) * A.pseries(0)
    xs = []
    if fam == "abelian":
        s = Fraction(param)
        if side == "left":
            ei = (hp0.scale(1 - s)).exp()
            sign, coef = -1, s
        else:
            ei = (hp0.scale(-s)).exp()
            sign, coef = 1, 1 - s
        dsum = A.zero()
        for k in range(1, n):
            dsum = dsum + A.x(k) * A.p(k)
        xs.append(A.x(0) + dsum.scale(A.hs(1).scale(sign * coef)))
        for i in range(1, n):
            xs.append(A.x(i) * A.fn(ei))
        return xs
    if fam == "jordanian":
        r = Fraction(param)
        if r == 0:
            raise SingularParameterError("Jordanian realization needs r != 0")
        lin = A.series(1) - hp0.scale(r)
        if side == "left":
            xs.append(A.x(0) * A.fn(lin))
            pw = lin.pow_fractional(-1 / r)
            for i in range(1, n):
                xs.append(A.x(i) * A.fn(pw))
        else:
            dsum = A.zero()
            for k in range(1, n):
                dsum = dsum + A.x(k) * A.p(k)
            xs.append(A.x(0) * A.fn(lin) + dsum.scale(A.hs(1)))
            for i in range(1, n):
                xs.append(A.x(i))
        return xs
    raise ValueError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# twisted coproduct / antipode


def twisted_coproduct(tw: Twist, X: Expr) -> WeylElement:
    A = tw.alg(2)
    return tw.realize(A, (0,), (1,)) * realize(X, A, (0, 1)) * tw.realize_inverse(A, (0,), (1,))


def twist_u(tw: Twist) -> WeylElement:
    """u = m (id x S) F on one leg, by folding the exponential factors."""
    A = tw.alg(1)
    if tw.extra:
        raise ValueError("u is defined only for pure exponential twists")
    u = A.one()
    for c, a, b in reversed(tw.factors):
        ar = realize(a, A, (0,))
        sb = realize(antipode(b), A, (0,))
        cs = A.coerce_series(c)
        acc = u
        left = A.one()
        right = A.one()
        fact = Fraction(1)
        for k in range(1, tw.h_order + 1):
            left = left * ar
            right = right * sb
            fact /= k
            acc = acc + (left * u * right).scale(cs ** k).scale(fact)
        u = acc
    return u


def twisted_antipode(tw: Twist, X: Expr, u: Optional[WeylElement] = None) -> WeylElement:
    u = u if u is not None else twist_u(tw)
    A = tw.alg(1)
    return u * realize(antipode(X), A, (0,)) * u.inverse()


def universal_r_matrix(tw: Twist, legs: int = 2, i: int = 0, j: int = 1) -> WeylElement:
    """R_ij = F_ji F_ij^{-1} placed on legs i, j of a ``legs``-leg algebra."""
    A = tw.alg(legs)
    return tw.realize(A, (j,), (i,)) * tw.realize_inverse(A, (i,), (j,))


def check_qybe(tw: Twist) -> WeylElement:
    r12 = universal_r_matrix(tw, 3, 0, 1)
    r13 = universal_r_matrix(tw, 3, 0, 2)
    r23 = universal_r_matrix(tw, 3, 1, 2)
    return r12 * r13 * r23 - r23 * r13 * r12


def tensor2(tw: Twist, terms: Sequence[Tuple[object, Expr, Expr]]) -> WeylElement:
    """Realize sum c A (x) B on two legs."""
    A = tw.alg(2)
    out = A.zero()
    for c, a, b in terms:
        out = out + (realize(a, A, (0,)) * realize(b, A, (1,))).scale(A.coerce_series(c) if isinstance(c, TruncSeries) else c)
    return out


def antipode_axiom(tw: Twist, terms: Sequence[Tuple[object, Expr, Expr]], X: Expr,
                   u: Optional[WeylElement] = None) -> WeylElement:
    """m(S^F x id) applied to an abstract two-tensor, minus eps(X)."""
    A = tw.alg(1)
    u = u if u is not None else twist_u(tw)
    uinv = u.inverse()
    out = A.zero()
    for c, a, b in terms:
        sa = u * realize(antipode(a), A, (0,)) * uinv
        out = out + (sa * realize(b, A, (0,))).scale(A.coerce_series(c) if isinstance(c, TruncSeries) else c)
    return out - A.const(A.coerce_series(counit(X, tw.h_order)))


def lowest_order(w: WeylElement) -> Optional[int]:
    return w.valuation()


# ---------------------------------------------------------------------------
# composition, homomorphism, coboundary relations


def compose(first: Twist, second: Twist) -> Twist:
    """The product twist first * second (factor lists concatenated)."""
    if first.extra or second.extra:
        raise ValueError("composition needs pure exponential twists")
    return Twist("composite", (first.family, second.family), first.n, first.h_order,
                 list(first.factors) + list(second.factors))


def igl_generators(n: int = 4) -> List[Expr]:
    return [igl.L(a, b) for a in range(n) for b in range(n)] + [igl.P(m) for m in range(n)]


def homomorphism_residuals(tw: Twist, gens: Optional[Sequence[Expr]] = None) -> Dict[Tuple[str, str], Optional[int]]:
    """Lowest h-order of Delta^F([a, b]) - [Delta^F a, Delta^F b] over generator pairs (None = zero)."""
    gens = list(gens) if gens is not None else igl_generators(tw.n)
    A = tw.alg(2)
    cop = {repr(g): twisted_coproduct(tw, g) for g in gens}
    out = {}
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            da, db = cop[repr(a)], cop[repr(b)]
            br = igl.bracket(a, b)
            lhs = twisted_coproduct(tw, br) if br.terms else A.zero()
            out[(repr(a), repr(b))] = (lhs - (da * db - db * da)).valuation()
    return out


def coboundary_conjugation(W: Twist, u: Expr, X: Expr) -> WeylElement:
    """(W x W)^{-1} Delta(W X W^{-1}) (W x W) for W = exp(u), u primitive-generated."""
    A = W.alg(2)
    u2 = realize(u, A, (0, 1))
    w1 = realize(u, A, (0,)).scale(A.coerce_series(W.param[0]))
    w2 = realize(u, A, (1,)).scale(A.coerce_series(W.param[0]))
    dW = u2.scale(A.coerce_series(W.param[0])).exp()
    ww = w1.exp() * w2.exp()
    wwinv = (-w1).exp() * (-w2).exp()
    return wwinv * dW * realize(X, A, (0, 1)) * dW.inverse() * ww


def abelian_gauge(s_from, s_to, h_order: int = DEFAULT_ORDER, n: int = 4) -> Twist:
    """Coboundary twist F_W with W = exp(i (s_to - s_from) h D P0), so that
    twist(s_to) = twist(s_from) * F_W."""
    c = h_coef(I * (Fraction(s_to) - Fraction(s_from)), 1, h_order)
    return build_twist("coboundary", h_order=h_order, n=n, u=(c, [igl.D(n), igl.P(0)]))


def classical_r(tw: Twist) -> WeylElement:
    """Coefficient of h in R = F21 F^{-1} (an element of the two-leg algebra)."""
    return universal_r_matrix(tw).h_component(1)
