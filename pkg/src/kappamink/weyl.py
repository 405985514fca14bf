"""Normal-ordered Weyl algebra with truncated-series coefficients.

An element is a map from an x-exponent tuple (all legs concatenated) to a
series in h and the momenta of all legs; each term means x^alpha * f(p) with
every position to the left of every momentum. Several commuting copies
("legs") of the algebra model tensor powers.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import MetricMismatchError, NormalizationError, UnknownGeneratorError
from .scalar import Q, Scalar, format_scalar
from .series import DEFAULT_ORDER, TruncSeries, get_ring

_MINUS_I_POW = [Scalar(1), Scalar(0, -1), Scalar(-1), Scalar(0, 1)]
_MINUS_I_INT = [(1, 0), (0, -1), (-1, 0), (0, 1)]


@dataclass(frozen=True)
class MetricSig:
    """Diagonal metric; ``signs[mu]`` is eta_{mu mu}."""

    signs: Tuple[int, ...] = (-1, 1, 1, 1)

    @property
    def dim(self) -> int:
        return len(self.signs)

    @classmethod
    def parse(cls, text: str) -> "MetricSig":
        t = text.strip().strip("()")
        parts = [p for p in t.replace(",", "") if p in "+-"]
        if not parts:
            raise ValueError(f"cannot parse metric {text!r}")
        return cls(tuple(1 if p == "+" else -1 for p in parts))

    def __str__(self):
        return "(" + ",".join("+" if s > 0 else "-" for s in self.signs) + ")"


MINKOWSKI = MetricSig((-1, 1, 1, 1))


def xname(mu: int, leg: int = 0) -> str:
    return f"x{mu}" + "'" * leg


def pname(mu: int, leg: int = 0) -> str:
    return f"p{mu}" + "'" * leg


class WeylAlgebra:
    """Context: dimension, number of legs, metric and truncation order."""

    def __init__(self, n: int = 4, legs: int = 1, h_order: int = DEFAULT_ORDER, metric: Optional[MetricSig] = None):
        self.n = n
        self.legs = legs
        self.h_order = h_order
        self.metric = metric or MetricSig((-1,) + (1,) * (n - 1))
        if self.metric.dim != n:
            raise MetricMismatchError("metric dimension differs from n")
        self.pvars = tuple(pname(mu, leg) for leg in range(legs) for mu in range(n))
        self.ring = get_ring(self.pvars, None, h_order, None)
        self.nx = n * legs
        self._zero_x = (0,) * self.nx

    def key(self):
        return (self.n, self.legs, self.h_order, self.metric)

    def __eq__(self, other):
        return isinstance(other, WeylAlgebra) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def with_legs(self, legs: int) -> "WeylAlgebra":
        return algebra(self.n, legs, self.h_order, self.metric)

    # series helpers -------------------------------------------------------
    def series(self, value=0) -> TruncSeries:
        return TruncSeries(self.ring, [({}, {}) for _ in range(self.h_order + 1)]).like_const(value)

    def hs(self, k: int = 1, coeff=1) -> TruncSeries:
        return self.series().like_monomial({"h": k}, coeff)

    def pseries(self, mu: int, leg: int = 0) -> TruncSeries:
        return self.series().like_monomial({pname(mu, leg): 1})

    def coerce_series(self, s) -> TruncSeries:
        if isinstance(s, TruncSeries):
            if s.ring is self.ring:
                return s
            if s.h_order != self.h_order:
                s = s.with_order(self.h_order)
            extra = [v for v in s.symbols if v not in self.ring.index]
            if extra:
                s = s.drop_unused()
                extra = [v for v in s.symbols if v not in self.ring.index]
                if extra:
                    raise ValueError(f"series uses symbols {extra} outside this algebra")
            return s.in_ring(self.ring)
        return self.series(s)

    # element constructors -------------------------------------------------
    def zero(self) -> "WeylElement":
        return WeylElement(self, {})

    def one(self) -> "WeylElement":
        return self.const(1)

    def const(self, value) -> "WeylElement":
        s = self.coerce_series(value) if isinstance(value, TruncSeries) else self.series(value)
        return WeylElement(self, {self._zero_x: s} if s else {})

    def fn(self, series: TruncSeries) -> "WeylElement":
        """Momentum-function element f(p)."""
        s = self.coerce_series(series)
        return WeylElement(self, {self._zero_x: s} if s else {})

    def x(self, mu: int, leg: int = 0) -> "WeylElement":
        e = [0] * self.nx
        e[leg * self.n + mu] = 1
        return WeylElement(self, {tuple(e): self.series(1)})

    def x_lower(self, mu: int, leg: int = 0) -> "WeylElement":
        return self.x(mu, leg).scale(self.metric.signs[mu])

    def p(self, mu: int, leg: int = 0) -> "WeylElement":
        return self.fn(self.pseries(mu, leg))

    def p_upper(self, mu: int, leg: int = 0) -> "WeylElement":
        return self.p(mu, leg).scale(self.metric.signs[mu])

    def xmono(self, exps: Sequence[int]) -> "WeylElement":
        return WeylElement(self, {tuple(exps): self.series(1)})

    def h(self) -> "WeylElement":
        return self.const(self.hs(1))


def algebra(n: int = 4, legs: int = 1, h_order: int = DEFAULT_ORDER, metric: Optional[MetricSig] = None) -> WeylAlgebra:
    """Cached algebra context."""
    return _algebra(n, legs, h_order, metric or MetricSig((-1,) + (1,) * (n - 1)))


@lru_cache(maxsize=None)
def _algebra(n, legs, h_order, metric) -> WeylAlgebra:
    return WeylAlgebra(n, legs, h_order, metric)


class WeylElement:
    """Normal-ordered element; immutable."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: WeylAlgebra, terms: Dict[Tuple[int, ...], TruncSeries]):
        self.alg = alg
        self.terms = terms

    def _check(self, other: "WeylElement"):
        if other.alg is not self.alg and other.alg != self.alg:
            if other.alg.metric != self.alg.metric:
                raise MetricMismatchError("metric mismatch")
            raise MetricMismatchError("algebra mismatch (dimension, legs or order)")

    def _lift(self, other) -> "WeylElement":
        if isinstance(other, WeylElement):
            self._check(other)
            return other
        return self.alg.const(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out[k] + v if k in out else v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return WeylElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "WeylElement":
        if isinstance(c, TruncSeries):
            c = self.alg.coerce_series(c)
            out = {}
            for k, v in self.terms.items():
                s = v * c
                if s:
                    out[k] = s
            return WeylElement(self.alg, out)
        sc = Scalar.coerce(c)
        if not sc:
            return self.alg.zero()
        return WeylElement(self.alg, {k: v.scale(sc) for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, WeylElement):
            return self.scale(other)
        self._check(other)
        return _product(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        out = self.alg.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            other = self.alg.const(other)
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    __hash__ = None  # type: ignore

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def valuation(self) -> Optional[int]:
        vals = [v.valuation() for v in self.terms.values()]
        vals = [v for v in vals if v is not None]
        return min(vals) if vals else None

    def ultra_norm(self) -> Fraction:
        v = self.valuation()
        return Fraction(0) if v is None else Fraction(1, 2 ** v)

    def h_component(self, k: int) -> "WeylElement":
        out = {}
        for key, v in self.terms.items():
            c = v.component(k)
            if c:
                out[key] = c
        return WeylElement(self.alg, out)

    def truncate(self, order: int) -> "WeylElement":
        """Drop all powers of h above ``order`` (keeps the algebra's h_order)."""
        out = {}
        for key, v in self.terms.items():
            c = v.with_order(order).with_order(self.alg.h_order)
            if c:
                out[key] = c
        return WeylElement(self.alg, out)

    def commutator(self, other: "WeylElement") -> "WeylElement":
        return self * other - other * self

    def exp(self) -> "WeylElement":
        """exp of an element with positive h-valuation (terminating in h)."""
        v = self.valuation()
        if v is None:
            return self.alg.one()
        if v < 1:
            raise NormalizationError("exp of a Weyl element needs positive h-valuation")
        out = self.alg.one()
        term = self.alg.one()
        for k in range(1, self.alg.h_order // v + 1):
            term = (term * self).scale(Fraction(1, k))
            if not term:
                break
            out = out + term
        return out

    def inverse(self) -> "WeylElement":
        """Inverse of c + (positive h-valuation) with c an invertible scalar."""
        c0 = self.terms.get(self.alg._zero_x)
        if c0 is None:
            raise NormalizationError("element has no unit part")
        c = c0.component(0)
        const = c.coefficient({})
        if not const or c != self.alg.series(const):
            raise NormalizationError("h^0 part must be a nonzero scalar")
        rest = (self - self.alg.const(const)).scale(const.inverse())
        v = rest.valuation()
        if v is not None and v < 1:
            raise NormalizationError("non-scalar h^0 part")
        out = self.alg.one()
        term = self.alg.one()
        for _ in range(self.alg.h_order):
            term = -(term * rest)
            if not term:
                break
            out = out + term
        return out.scale(const.inverse())

    def conj_transpose(self) -> "WeylElement":
        """Formal adjoint: x, p self-adjoint, scalars conjugated, order reversed."""
        alg = self.alg
        out = alg.zero()
        for k, v in self.terms.items():
            out = out + alg.fn(v.conj()) * alg.xmono(k)
        return out

    def momentum_part(self) -> TruncSeries:
        """Coefficient of the x-free term (the element if it is a function of p)."""
        return self.terms.get(self.alg._zero_x, self.alg.series(0))

    def is_momentum_function(self) -> bool:
        return all(k == self.alg._zero_x for k in self.terms)

    def relabel_legs(self, perm: Sequence[int], target: Optional[WeylAlgebra] = None) -> "WeylElement":
        """Move leg i to leg perm[i] (target algebra may have more legs)."""
        alg = self.alg
        tgt = target or alg
        n = alg.n
        mapping = {pname(mu, leg): pname(mu, perm[leg]) for leg in range(alg.legs) for mu in range(n)}
        out = {}
        for k, v in self.terms.items():
            e = [0] * tgt.nx
            for leg in range(alg.legs):
                for mu in range(n):
                    e[perm[leg] * n + mu] = k[leg * n + mu]
            out[tuple(e)] = _rename_series(v, mapping, tgt.ring)
        return WeylElement(tgt, out)

    def __repr__(self):
        return f"WeylElement({format_weyl(self)})"

    def __str__(self):
        return format_weyl(self)

    def to_json_obj(self) -> dict:
        triples = []
        pv = self.alg.pvars
        for k in sorted(self.terms):
            for exps, c in self.terms[k].terms():
                triples.append({"x": list(k), "p": list(exps[1:]), "h": exps[0],
                                "re": f"{c.re.numerator}/{c.re.denominator}",
                                "im": f"{c.im.numerator}/{c.im.denominator}"})
        return {"n": self.alg.n, "legs": self.alg.legs, "h_order": self.alg.h_order,
                "metric": list(self.alg.metric.signs), "p_variables": list(pv), "terms": triples}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "WeylElement":
        obj = json.loads(text)
        alg = algebra(obj["n"], obj["legs"], obj["h_order"], MetricSig(tuple(obj["metric"])))
        acc: Dict[Tuple[int, ...], dict] = {}
        for t in obj["terms"]:
            acc.setdefault(tuple(t["x"]), {})[(t["h"],) + tuple(t["p"])] = Scalar(Fraction(t["re"]), Fraction(t["im"]))
        terms = {}
        for k, d in acc.items():
            s = TruncSeries.from_terms(alg.pvars, d, alg.h_order).in_ring(alg.ring)
            if s:
                terms[k] = s
        return cls(alg, terms)


def _rename_series(s: TruncSeries, mapping: Mapping[str, str], target_ring) -> TruncSeries:
    return s.rename(mapping).in_ring(target_ring)


def _product(a: WeylElement, b: WeylElement) -> WeylElement:
    """(x^al f(p)) (x^be g(p)) = sum_ga C(be,ga) (-i)^|ga| x^(al+be-ga) (d^ga f) g."""
    alg = a.alg
    nx = alg.nx
    pv = alg.pvars
    out: Dict[Tuple[int, ...], TruncSeries] = {}
    zero = (0,) * nx
    order = alg.h_order
    gval = {be: g.valuation() for be, g in b.terms.items()}
    for al, f in a.terms.items():
        dcache: Dict[Tuple[int, ...], TruncSeries] = {(0,) * nx: f}

        def deriv(ga):
            d = dcache.get(ga)
            if d is None:
                i = next(j for j in range(nx) if ga[j])
                prev = list(ga)
                prev[i] -= 1
                d = deriv(tuple(prev)).derivative(pv[i])
                dcache[ga] = d
            return d

        md = f.max_degrees()
        vf = f.valuation()
        for be, g in b.terms.items():
            if vf + gval[be] > order:
                continue
            nzi = [i for i in range(nx) if be[i] and md[i]]
            ranges = [range(min(be[i], md[i]) + 1) for i in nzi]
            for sub in itertools.product(*ranges):
                if nzi:
                    ga = list(zero)
                    coef = 1
                    tot = 0
                    for i, gi in zip(nzi, sub):
                        if gi:
                            ga[i] = gi
                            coef *= comb(be[i], gi)
                            tot += gi
                    ga = tuple(ga)
                    df = deriv(ga) if tot else f
                else:
                    ga, coef, tot, df = zero, 1, 0, f
                if df.is_zero():
                    continue
                term = df * g
                if term.is_zero():
                    continue
                if tot or coef != 1:
                    ur, ui = _MINUS_I_INT[tot % 4]
                    term = term.scale((Q(ur * coef), Q(ui * coef)))
                key = tuple(al[i] + be[i] - ga[i] for i in range(nx))
                cur = out.get(key)
                if cur is None:
                    out[key] = term
                else:
                    s = cur + term
                    if s.is_zero():
                        del out[key]
                    else:
                        out[key] = s
    return WeylElement(alg, out)


def commutator(u: WeylElement, v: WeylElement) -> WeylElement:
    return u * v - v * u


def normal_product(u: WeylElement, v: WeylElement) -> WeylElement:
    return u * v


def tensor(a: WeylElement, b: WeylElement) -> WeylElement:
    """a (legs 0..k-1) tensor b (following legs) as one multi-leg element."""
    la, lb = a.alg.legs, b.alg.legs
    tgt = a.alg.with_legs(la + lb)
    aa = a.relabel_legs(list(range(la)), tgt)
    bb = b.relabel_legs(list(range(la, la + lb)), tgt)
    return aa * bb


def format_weyl(w: WeylElement) -> str:
    if not w.terms:
        return "0"
    alg = w.alg
    parts = []
    for k in sorted(w.terms):
        xs = []
        for leg in range(alg.legs):
            for mu in range(alg.n):
                e = k[leg * alg.n + mu]
                if e:
                    nm = xname(mu, leg)
                    xs.append(nm if e == 1 else f"{nm}^{e}")
        coeff = str(w.terms[k])
        if not xs:
            parts.append(f"({coeff})")
        elif coeff == "1":
            parts.append("*".join(xs))
        else:
            parts.append("*".join(xs) + f"*({coeff})")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# polynomial states and the Heisenberg action


def _hring(h_order: int):
    return get_ring((), None, h_order, None)


class PolyState:
    """Commutative polynomial in x over series in h (several legs allowed)."""

    __slots__ = ("n", "legs", "h_order", "terms")

    def __init__(self, n: int, legs: int, h_order: int, terms: Dict[Tuple[int, ...], TruncSeries]):
        self.n = n
        self.legs = legs
        self.h_order = h_order
        self.terms = terms

    @classmethod
    def zero(cls, n=4, legs=1, h_order=DEFAULT_ORDER) -> "PolyState":
        return cls(n, legs, h_order, {})

    @classmethod
    def const(cls, value, n=4, legs=1, h_order=DEFAULT_ORDER) -> "PolyState":
        s = TruncSeries(_hring(h_order), [({}, {}) for _ in range(h_order + 1)]).like_const(value) \
            if not isinstance(value, TruncSeries) else value
        return cls(n, legs, h_order, {(0,) * (n * legs): s} if s else {})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1, n=4, legs=1, h_order=DEFAULT_ORDER) -> "PolyState":
        s = TruncSeries(_hring(h_order), [({}, {}) for _ in range(h_order + 1)]).like_const(coeff)
        return cls(n, legs, h_order, {tuple(exps): s} if s else {})

    @classmethod
    def x(cls, mu: int, n=4, legs=1, h_order=DEFAULT_ORDER, leg: int = 0) -> "PolyState":
        e = [0] * (n * legs)
        e[leg * n + mu] = 1
        return cls.monomial(e, 1, n, legs, h_order)

    def _series(self, value) -> TruncSeries:
        return TruncSeries(_hring(self.h_order), [({}, {}) for _ in range(self.h_order + 1)]).like_const(value)

    def _compat(self, o: "PolyState"):
        if (o.n, o.legs, o.h_order) != (self.n, self.legs, self.h_order):
            raise ValueError("incompatible polynomial states")

    def __add__(self, o):
        if not isinstance(o, PolyState):
            o = PolyState.const(o, self.n, self.legs, self.h_order)
        self._compat(o)
        out = dict(self.terms)
        for k, v in o.terms.items():
            s = out[k] + v if k in out else v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return PolyState(self.n, self.legs, self.h_order, out)

    __radd__ = __add__

    def __neg__(self):
        return PolyState(self.n, self.legs, self.h_order, {k: -v for k, v in self.terms.items()})

    def __sub__(self, o):
        return self + (-o if isinstance(o, PolyState) else PolyState.const(o, self.n, self.legs, self.h_order) * -1)

    def scale(self, c) -> "PolyState":
        out = {}
        for k, v in self.terms.items():
            s = v * c if isinstance(c, TruncSeries) else v.scale(c)
            if s:
                out[k] = s
        return PolyState(self.n, self.legs, self.h_order, out)

    def __mul__(self, o):
        if not isinstance(o, PolyState):
            return self.scale(o)
        self._compat(o)
        out: Dict[Tuple[int, ...], TruncSeries] = {}
        for ka, va in self.terms.items():
            for kb, vb in o.terms.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                t = va * vb
                s = out[k] + t if k in out else t
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return PolyState(self.n, self.legs, self.h_order, out)

    __rmul__ = scale

    def __eq__(self, o):
        if not isinstance(o, PolyState):
            o = PolyState.const(o, self.n, self.legs, self.h_order)
        return set(self.terms) == set(o.terms) and all(self.terms[k] == o.terms[k] for k in self.terms)

    __hash__ = None  # type: ignore

    def is_zero(self):
        return not self.terms

    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=0)

    def derivative(self, i: int) -> "PolyState":
        out = {}
        for k, v in self.terms.items():
            if k[i]:
                nk = list(k)
                nk[i] -= 1
                out[tuple(nk)] = v.scale(k[i])
        return PolyState(self.n, self.legs, self.h_order, out)

    def merge_legs(self) -> "PolyState":
        """Multiply the legs together (the module multiplication)."""
        n = self.n
        out = PolyState.zero(n, 1, self.h_order)
        acc: Dict[Tuple[int, ...], TruncSeries] = {}
        for k, v in self.terms.items():
            nk = tuple(sum(k[leg * n + mu] for leg in range(self.legs)) for mu in range(n))
            s = acc[nk] + v if nk in acc else v
            if s:
                acc[nk] = s
            else:
                acc.pop(nk, None)
        out.terms = acc
        return out

    def embed(self, legs: int, leg: int) -> "PolyState":
        n = self.n
        out = {}
        for k, v in self.terms.items():
            e = [0] * (n * legs)
            e[leg * n:(leg + 1) * n] = k[:n]
            out[tuple(e)] = v
        return PolyState(n, legs, self.h_order, out)

    def to_weyl(self, alg: WeylAlgebra) -> WeylElement:
        return WeylElement(alg, {k: alg.coerce_series(v) for k, v in self.terms.items()})

    def canonical_str(self) -> str:
        return format_poly(self)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"PolyState({format_poly(self)})"

    def to_json_obj(self) -> dict:
        out = []
        for k in sorted(self.terms):
            for exps, c in self.terms[k].terms():
                out.append({"x": list(k), "h": exps[0], "re": f"{c.re.numerator}/{c.re.denominator}",
                            "im": f"{c.im.numerator}/{c.im.denominator}"})
        return {"n": self.n, "legs": self.legs, "h_order": self.h_order, "terms": out}

    @classmethod
    def from_json_obj(cls, obj) -> "PolyState":
        acc: Dict[Tuple[int, ...], dict] = {}
        for t in obj["terms"]:
            acc.setdefault(tuple(t["x"]), {})[(t["h"],)] = Scalar(Fraction(t["re"]), Fraction(t["im"]))
        terms = {k: TruncSeries.from_terms((), d, obj["h_order"]) for k, d in acc.items()}
        return cls(obj["n"], obj["legs"], obj["h_order"], {k: v for k, v in terms.items() if v})


def _mono_key(k: Tuple[int, ...]):
    return (-sum(k), tuple(-e for e in k))


def format_poly(f: PolyState) -> str:
    """Canonical text: monomials by descending degree then lexicographic, each
    with an expanded scalar*h^k coefficient, e.g. 'x0*x1 - ı*h*x1'."""
    if not f.terms:
        return "0"
    pieces: List[Tuple[str, bool]] = []
    for k in sorted(f.terms, key=_mono_key):
        xs = []
        for leg in range(f.legs):
            for mu in range(f.n):
                e = k[leg * f.n + mu]
                if e:
                    nm = xname(mu, leg)
                    xs.append(nm if e == 1 else f"{nm}^{e}")
        for exps, c in f.terms[k].terms():
            hk = exps[0]
            factors = []
            neg = False
            if c.im == 0 and c.re < 0:
                neg, c = True, -c
            elif c.re == 0 and c.im < 0:
                neg, c = True, -c
            cs = format_scalar(c)
            if " " in cs:
                cs = f"({cs})"
            if cs != "1" or (not xs and not hk):
                factors.append(cs)
            if hk:
                factors.append("h" if hk == 1 else f"h^{hk}")
            factors.extend(xs)
            pieces.append(("*".join(factors), neg))
    out = ("-" if pieces[0][1] else "") + pieces[0][0]
    for s, neg in pieces[1:]:
        out += (" - " if neg else " + ") + s
    return out


def act(op: WeylElement, f: PolyState) -> PolyState:
    """Heisenberg action: p_mu -> -i d/dx^mu, positions multiply."""
    alg = op.alg
    if f.n != alg.n or f.legs != alg.legs:
        raise ValueError("state and operator live on different spaces")
    deg = f.degree()
    hr = _hring(alg.h_order)
    ff = f if f.h_order == alg.h_order else PolyState(f.n, f.legs, alg.h_order,
                                                      {k: v.with_order(alg.h_order) for k, v in f.terms.items()})
    dcache: Dict[Tuple[int, ...], PolyState] = {(0,) * alg.nx: ff}

    def dpoly(a):
        d = dcache.get(a)
        if d is None:
            i = next(j for j in range(alg.nx) if a[j])
            prev = list(a)
            prev[i] -= 1
            d = dpoly(tuple(prev)).derivative(i)
            dcache[a] = d
        return d

    out = PolyState.zero(alg.n, alg.legs, alg.h_order)
    for xk, g in op.terms.items():
        bymono: Dict[Tuple[int, ...], dict] = {}
        for hk, exps, re, im in g.raw_terms():
            if sum(exps) > deg:
                continue
            bymono.setdefault(exps, {})[hk] = (re, im)
        acc = PolyState.zero(alg.n, alg.legs, alg.h_order)
        for exps, coeffs in bymono.items():
            d = dpoly(exps)
            if d.is_zero():
                continue
            comps = [({}, {}) for _ in range(alg.h_order + 1)]
            key = hr.pack(())
            for hk, (re, im) in coeffs.items():
                if re:
                    comps[hk][0][key] = re
                if im:
                    comps[hk][1][key] = im
            c = TruncSeries(hr, comps).scale(_MINUS_I_POW[sum(exps) % 4])
            acc = acc + d.scale(c)
        if acc.terms:
            acc = acc * PolyState.monomial(xk, 1, alg.n, alg.legs, alg.h_order)
            out = out + acc
    return out


# ---------------------------------------------------------------------------
# generators of igl(n) and the Poincare subalgebra


def levi_civita(i: int, j: int, k: int) -> int:
    if len({i, j, k}) < 3:
        return 0
    perm = [i, j, k]
    sign = 1
    for a in range(3):
        for b in range(a + 1, 3):
            if perm[a] > perm[b]:
                sign = -sign
    return sign


def gen_L(alg: WeylAlgebra, nu: int, mu: int, leg: int = 0) -> WeylElement:
    """L^nu_mu -> x^nu p_mu."""
    return alg.x(nu, leg) * alg.p(mu, leg)


def gen_D(alg: WeylAlgebra, leg: int = 0) -> WeylElement:
    out = alg.zero()
    for k in range(1, alg.n):
        out = out + gen_L(alg, k, k, leg)
    return out


def gen_Mlow(alg: WeylAlgebra, mu: int, nu: int, leg: int = 0) -> WeylElement:
    """M_{mu nu} = x_mu p_nu - x_nu p_mu."""
    return alg.x_lower(mu, leg) * alg.p(nu, leg) - alg.x_lower(nu, leg) * alg.p(mu, leg)


def gen_rotation(alg: WeylAlgebra, i: int, leg: int = 0) -> WeylElement:
    """M_i = (1/2) eps_{ijk} M_{jk}."""
    out = alg.zero()
    for j in range(1, 4):
        for k in range(1, 4):
            e = levi_civita(i, j, k)
            if e:
                out = out + gen_Mlow(alg, j, k, leg).scale(Fraction(e, 2))
    return out


def gen_boost(alg: WeylAlgebra, i: int, leg: int = 0) -> WeylElement:
    """N_i = M_{0i}."""
    return gen_Mlow(alg, 0, i, leg)


def igl_realize(generator: str, alg: Optional[WeylAlgebra] = None, leg: int = 0) -> WeylElement:
    """Weyl image of a named generator: 'L^nu_mu', 'M_mu_nu', 'M_i', 'N_i', 'D', 'P_mu', 'J_r' (r rational)."""
    alg = alg or algebra()
    g = generator.replace(" ", "")
    try:
        if g == "D":
            return gen_D(alg, leg)
        if g.startswith("L^"):
            nu, mu = g[2:].split("_")
            return gen_L(alg, int(nu), int(mu), leg)
        if g.startswith("P_"):
            return alg.p(int(g[2:]), leg)
        if g.startswith("J_"):
            r = Fraction(g[2:])
            return gen_J(alg, r, leg)
        if g.startswith("M_"):
            rest = g[2:].split("_")
            if len(rest) == 2:
                return gen_Mlow(alg, int(rest[0]), int(rest[1]), leg)
            if len(rest[0]) == 2:
                return gen_Mlow(alg, int(rest[0][0]), int(rest[0][1]), leg)
            return gen_rotation(alg, int(rest[0]), leg)
        if g.startswith("N_"):
            return gen_boost(alg, int(g[2:]), leg)
    except (ValueError, IndexError, StopIteration) as exc:
        raise UnknownGeneratorError(generator) from exc
    raise UnknownGeneratorError(generator)


def gen_J(alg: WeylAlgebra, r, leg: int = 0) -> WeylElement:
    """J_r = i (D/r - L^0_0)."""
    r = Fraction(r)
    return (gen_D(alg, leg).scale(1 / r) - gen_L(alg, 0, 0, leg)).scale(Scalar(0, 1))
