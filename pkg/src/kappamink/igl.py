"""Abstract elements of the enveloping algebra of igl(n) extended by momentum series.

Expressions are trees built from the generators L^nu_mu and P_mu, momentum
series f(P) and sums/products. They carry the undeformed Hopf structure:
generators are primitive, Delta f(P) = f(P + P'), S(X) = -X, S f(P) = f(-P).
``realize`` maps an expression, coproduct-iterated over a group of legs, into
the Weyl algebra via L^nu_mu -> x^nu p_mu.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple, Union

from .scalar import Scalar
from .series import DEFAULT_ORDER, TruncSeries
from .weyl import WeylAlgebra, WeylElement, gen_L

Coef = Union[Scalar, TruncSeries, int, Fraction, complex]


def momentum_symbols(n: int = 4) -> Tuple[str, ...]:
    return tuple(f"P{mu}" for mu in range(n))


class Expr:
    """Base class; subclasses are immutable."""

    __slots__ = ("_cache",)

    def __init__(self):
        self._cache: Dict = {}

    def __add__(self, other: "Expr") -> "Expr":
        return Lin(((1, self), (1, other)))

    def __sub__(self, other: "Expr") -> "Expr":
        return Lin(((1, self), (-1, other)))

    def __neg__(self) -> "Expr":
        return Lin(((-1, self),))

    def __mul__(self, other) -> "Expr":
        if isinstance(other, Expr):
            return Prod((self, other))
        return Lin(((other, self),))

    def __rmul__(self, other) -> "Expr":
        return Lin(((other, self),))


class One(Expr):
    __slots__ = ()

    def __repr__(self):
        return "1"


class Gen(Expr):
    """L^nu_mu (kind 'L', idx=(nu, mu)) or P_mu (kind 'P', idx=(mu,))."""

    __slots__ = ("kind", "idx")

    def __init__(self, kind: str, idx: Tuple[int, ...]):
        super().__init__()
        self.kind = kind
        self.idx = idx

    def __repr__(self):
        return f"L^{self.idx[0]}_{self.idx[1]}" if self.kind == "L" else f"P_{self.idx[0]}"


class Mom(Expr):
    """A momentum series f(P) over the symbols P0..P{n-1} (plus h)."""

    __slots__ = ("f",)

    def __init__(self, f: TruncSeries):
        super().__init__()
        self.f = f

    def __repr__(self):
        return f"Mom({self.f})"


class Lin(Expr):
    """Linear combination sum c_i e_i; c_i scalar or h-series."""

    __slots__ = ("terms",)

    def __init__(self, terms: Sequence[Tuple[Coef, Expr]]):
        super().__init__()
        self.terms = tuple(terms)

    def __repr__(self):
        return " + ".join(f"({c})*{e!r}" for c, e in self.terms)


class Prod(Expr):
    __slots__ = ("factors",)

    def __init__(self, factors: Sequence[Expr]):
        super().__init__()
        self.factors = tuple(factors)

    def __repr__(self):
        return "*".join(f"({f!r})" for f in self.factors)


ONE = One()


def L(nu: int, mu: int) -> Gen:
    return Gen("L", (nu, mu))


def P(mu: int) -> Gen:
    return Gen("P", (mu,))


def D(n: int = 4) -> Expr:
    return Lin(tuple((1, L(k, k)) for k in range(1, n)))


def J(r, n: int = 4) -> Expr:
    """J_r = i (D/r - L^0_0)."""
    r = Fraction(r)
    return Lin(tuple((Scalar(0, 1) * (1 / r), L(k, k)) for k in range(1, n)) + ((Scalar(0, -1), L(0, 0)),))


def mom(f: TruncSeries) -> Mom:
    return Mom(f)


def mom_symbol_series(n: int = 4, h_order: int = DEFAULT_ORDER) -> TruncSeries:
    return TruncSeries.zero(momentum_symbols(n), h_order)


def realize(e: Expr, alg: WeylAlgebra, legs: Sequence[int] = (0,)) -> WeylElement:
    """Weyl image of the iterated coproduct of ``e`` spread over ``legs``."""
    legs = tuple(legs)
    key = (alg.key(), legs)
    hit = e._cache.get(key)
    if hit is not None:
        return hit
    if isinstance(e, One):
        out = alg.one()
    elif isinstance(e, Gen):
        out = alg.zero()
        for leg in legs:
            if e.kind == "L":
                out = out + gen_L(alg, e.idx[0], e.idx[1], leg)
            else:
                out = out + alg.p(e.idx[0], leg)
    elif isinstance(e, Mom):
        f = e.f if e.f.h_order == alg.h_order else e.f.with_order(alg.h_order)
        binds = {}
        for mu in range(alg.n):
            s = alg.series(0)
            for leg in legs:
                s = s + alg.pseries(mu, leg)
            binds[f"P{mu}"] = s
        out = alg.fn(f.substitute(binds))
    elif isinstance(e, Lin):
        out = alg.zero()
        for c, sub in e.terms:
            out = out + realize(sub, alg, legs).scale(alg.coerce_series(c) if isinstance(c, TruncSeries) else c)
    elif isinstance(e, Prod):
        out = alg.one()
        for sub in e.factors:
            out = out * realize(sub, alg, legs)
    else:
        raise TypeError(f"unknown expression {e!r}")
    e._cache[key] = out
    return out


def antipode(e: Expr) -> Expr:
    """Undeformed antipode (anti-homomorphism)."""
    if isinstance(e, One):
        return e
    if isinstance(e, Gen):
        return Lin(((-1, e),))
    if isinstance(e, Mom):
        f = e.f
        binds = {s: -TruncSeries.var(s, f.symbols, f.h_order).in_ring(f.ring) for s in f.symbols if s.startswith("P")}
        return Mom(f.substitute(binds))
    if isinstance(e, Lin):
        return Lin(tuple((c, antipode(sub)) for c, sub in e.terms))
    if isinstance(e, Prod):
        return Prod(tuple(antipode(f) for f in reversed(e.factors)))
    raise TypeError(f"unknown expression {e!r}")


def counit(e: Expr, h_order: int = DEFAULT_ORDER) -> TruncSeries:
    """Undeformed counit, an h-series."""
    base = TruncSeries.zero((), h_order)
    if isinstance(e, One):
        return base.like_const(1)
    if isinstance(e, Gen):
        return base
    if isinstance(e, Mom):
        f = e.f.with_order(h_order) if e.f.h_order != h_order else e.f
        vals = {s: 0 for s in f.symbols}
        return f.partial_evaluate(vals).drop_unused().in_ring(base.ring) if f.symbols else f
    if isinstance(e, Lin):
        out = base
        for c, sub in e.terms:
            v = counit(sub, h_order)
            if isinstance(c, TruncSeries):
                out = out + v * c.drop_unused().with_order(h_order).in_ring(base.ring)
            else:
                out = out + v.scale(c)
        return out
    if isinstance(e, Prod):
        out = base.like_const(1)
        for f in e.factors:
            out = out * counit(f, h_order)
        return out
    raise TypeError(f"unknown expression {e!r}")


def h_coef(value, h_power: int = 1, h_order: int = DEFAULT_ORDER) -> TruncSeries:
    """The h-series value * h^h_power."""
    return TruncSeries.zero((), h_order).like_monomial({"h": h_power}, value)


def bracket(a: Gen, b: Gen) -> Expr:
    """Lie bracket of two generators under L^nu_mu -> x^nu p_mu, as an expression."""
    i = Scalar(0, 1)
    if a.kind == "P" and b.kind == "P":
        return Lin(())
    if a.kind == "L" and b.kind == "L":
        (p, q), (r, s) = a.idx, b.idx
        terms = []
        if q == r:
            terms.append((-i, L(p, s)))
        if p == s:
            terms.append((i, L(r, q)))
        return Lin(tuple(terms))
    if a.kind == "L" and b.kind == "P":
        (p, q), (d,) = a.idx, b.idx
        return Lin(((i, P(q)),)) if p == d else Lin(())
    return Lin(tuple((-c, e) for c, e in bracket(b, a).terms))
