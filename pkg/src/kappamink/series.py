"""Truncated multivariate power series in h with Gaussian-rational coefficients.

A series is stored as a list of h-graded components. Component k holds the
coefficient of h^k as a pair of sparse maps (real part, imaginary part) from a
packed exponent key to an exact rational. Each non-h variable occupies an 8-bit
field with bias 128; one extra field stores the biased total degree of the
non-Laurent variables so degree caps can be applied inside the hot kernel.
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from . import kernels
from .errors import ExponentError, NonUnitError, NormalizationError, OrderMismatchError
from .scalar import Q, Scalar, q_to_fraction, to_q

H = "h"
DEFAULT_ORDER = 8
_FIELD = 8
_B = 128


class Ring:
    """Shared layout data for series over the same variables and truncation."""

    __slots__ = ("vars", "laurent", "lnames", "order", "cap", "nv", "bias", "degshift", "lset", "index")

    def __init__(self, variables: Tuple[str, ...], laurent: Tuple[str, ...], order: int, cap: Optional[int]):
        self.vars = variables
        self.lnames = laurent
        self.laurent = None if not laurent else (laurent[0] if len(laurent) == 1 else laurent)
        self.order = order
        self.cap = cap
        self.nv = len(variables)
        self.bias = sum(_B << (_FIELD * i) for i in range(self.nv + 1))
        self.degshift = _FIELD * self.nv
        self.lset = frozenset(variables.index(n) for n in laurent)
        self.index = {v: i for i, v in enumerate(variables)}

    def pack(self, exps: Sequence[int]) -> int:
        key = 0
        deg = 0
        for i, e in enumerate(exps):
            if e < 0 and i not in self.lset:
                raise ExponentError(f"negative exponent for non-Laurent symbol {self.vars[i]}")
            if not -_B <= e < _B:
                raise ExponentError("exponent out of range")
            if i not in self.lset:
                deg += e
            key |= (e + _B) << (_FIELD * i)
        if deg >= _B:
            raise ExponentError("total degree out of range")
        return key | ((deg + _B) << self.degshift)

    def unpack(self, key: int) -> Tuple[int, ...]:
        return tuple(((key >> (_FIELD * i)) & 255) - _B for i in range(self.nv))

    def degree(self, key: int) -> int:
        return ((key >> self.degshift) & 255) - _B

    @property
    def capval(self) -> int:
        return -1 if self.cap is None else self.cap


def _laurent_names(laurent) -> Tuple[str, ...]:
    if laurent is None:
        return ()
    if isinstance(laurent, str):
        return (laurent,)
    return tuple(laurent)


def get_ring(variables: Tuple[str, ...], laurent, order: int, cap: Optional[int]) -> Ring:
    """Shared ring; ``laurent`` is None, one symbol name, or a tuple of names
    (several only for tensor-leg copies of the same invertible generator)."""
    return _get_ring(tuple(variables), _laurent_names(laurent), order, cap)


@lru_cache(maxsize=None)
def _get_ring(variables: Tuple[str, ...], laurent: Tuple[str, ...], order: int, cap: Optional[int]) -> Ring:
    if any(n not in variables for n in laurent):
        raise ValueError("Laurent symbol must be one of the variables")
    if H in variables:
        raise ValueError("'h' is implicit and must not be listed as a variable")
    if len(set(variables)) != len(variables):
        raise ValueError("duplicate variable names")
    if order < 0:
        raise ValueError("h_order must be non-negative")
    return Ring(variables, laurent, order, cap)


def _merge_rings(a: Ring, b: Ring) -> Ring:
    if a.order != b.order:
        raise OrderMismatchError(f"h_order mismatch: {a.order} vs {b.order}")
    laurent = a.lnames + tuple(n for n in b.lnames if n not in a.lnames)
    variables = a.vars + tuple(v for v in b.vars if v not in a.index)
    caps = [c for c in (a.cap, b.cap) if c is not None]
    return get_ring(variables, laurent, a.order, min(caps) if caps else None)


def _empty(n: int):
    return [({}, {}) for _ in range(n + 1)]


def _coerce_q_pair(v) -> Tuple[object, object]:
    if isinstance(v, Scalar):
        return to_q(v.re), to_q(v.im)
    if isinstance(v, complex):
        return to_q(Fraction(v.real)), to_q(Fraction(v.imag))
    if isinstance(v, tuple):
        return to_q(v[0]), to_q(v[1])
    return to_q(v), Q(0)


class TruncSeries:
    """Immutable truncated power series; see module docstring for layout."""

    __slots__ = ("_r", "_c", "_md")

    def __init__(self, ring: Ring, comps):
        self._r = ring
        self._c = comps
        self._md = None

    def max_degrees(self) -> Tuple[int, ...]:
        """Largest exponent of each variable over all terms (cached)."""
        if self._md is None:
            r = self._r
            md = [0] * r.nv
            for re, im in self._c:
                for d in (re, im):
                    for k in d:
                        for i in range(r.nv):
                            e = ((k >> (_FIELD * i)) & 255) - _B
                            if e > md[i]:
                                md[i] = e
            self._md = tuple(md)
        return self._md

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, variables: Sequence[str] = (), h_order: int = DEFAULT_ORDER, laurent: Optional[str] = None,
             deg_cap: Optional[int] = None) -> "TruncSeries":
        r = get_ring(tuple(v for v in variables if v != H), laurent, h_order, deg_cap)
        return cls(r, _empty(h_order))

    @classmethod
    def from_terms(cls, variables: Sequence[str], terms: Mapping[Tuple[int, ...], object], h_order: int = DEFAULT_ORDER,
                   laurent: Optional[str] = None, deg_cap: Optional[int] = None) -> "TruncSeries":
        """Build from {(h_exp, e_1, ..., e_n): coefficient}; ``variables`` may start with 'h'."""
        vs = tuple(v for v in variables if v != H)
        r = get_ring(vs, laurent, h_order, deg_cap)
        comps = _empty(h_order)
        for exps, val in terms.items():
            if len(exps) != r.nv + 1:
                raise ExponentError("exponent vector length does not match variables")
            hk = exps[0]
            if hk < 0:
                raise ExponentError("negative power of h")
            if hk > h_order:
                continue
            key = r.pack(exps[1:])
            if r.cap is not None and r.degree(key) > r.cap:
                continue
            re, im = _coerce_q_pair(val)
            for part, v in ((comps[hk][0], re), (comps[hk][1], im)):
                s = part.get(key, 0) + v
                if s:
                    part[key] = s
                else:
                    part.pop(key, None)
        return cls(r, comps)

    @classmethod
    def const(cls, value, variables: Sequence[str] = (), h_order: int = DEFAULT_ORDER, laurent: Optional[str] = None,
              deg_cap: Optional[int] = None) -> "TruncSeries":
        vs = tuple(v for v in variables if v != H)
        return cls.from_terms(vs, {(0,) * (len(vs) + 1): value}, h_order, laurent, deg_cap)

    @classmethod
    def monomial(cls, variables: Sequence[str], exps: Mapping[str, int], coeff=1, h_order: int = DEFAULT_ORDER,
                 laurent: Optional[str] = None, deg_cap: Optional[int] = None) -> "TruncSeries":
        vs = tuple(v for v in variables if v != H)
        vec = [0] * (len(vs) + 1)
        for name, e in exps.items():
            if name == H:
                vec[0] = e
            else:
                vec[1 + vs.index(name)] = e
        return cls.from_terms(vs, {tuple(vec): coeff}, h_order, laurent, deg_cap)

    @classmethod
    def var(cls, name: str, variables: Sequence[str], h_order: int = DEFAULT_ORDER, laurent: Optional[str] = None,
            deg_cap: Optional[int] = None) -> "TruncSeries":
        return cls.monomial(variables, {name: 1}, 1, h_order, laurent, deg_cap)

    def like_const(self, value) -> "TruncSeries":
        r = self._r
        comps = _empty(r.order)
        re, im = _coerce_q_pair(value)
        key = r.pack((0,) * r.nv)
        if re:
            comps[0][0][key] = re
        if im:
            comps[0][1][key] = im
        return TruncSeries(r, comps)

    def like_monomial(self, exps: Mapping[str, int], coeff=1) -> "TruncSeries":
        r = self._r
        extra = [v for v in exps if v != H and v not in r.index]
        if extra:
            s = self.extend(extra)
            return s.like_monomial(exps, coeff)
        vec = [0] * r.nv
        hk = 0
        for n, e in exps.items():
            if n == H:
                hk = e
            else:
                vec[r.index[n]] = e
        comps = _empty(r.order)
        if hk <= r.order:
            key = r.pack(vec)
            if r.cap is None or r.degree(key) <= r.cap:
                re, im = _coerce_q_pair(coeff)
                if re:
                    comps[hk][0][key] = re
                if im:
                    comps[hk][1][key] = im
        return TruncSeries(r, comps)

    # metadata -------------------------------------------------------------
    @property
    def variables(self) -> Tuple[str, ...]:
        return (H,) + self._r.vars

    @property
    def symbols(self) -> Tuple[str, ...]:
        return self._r.vars

    @property
    def h_order(self) -> int:
        return self._r.order

    @property
    def laurent(self) -> Optional[str]:
        return self._r.laurent

    @property
    def deg_cap(self) -> Optional[int]:
        return self._r.cap

    @property
    def ring(self) -> Ring:
        return self._r

    # layout changes -------------------------------------------------------
    def _repack(self, target: Ring) -> "TruncSeries":
        src = self._r
        if src is target:
            return self
        missing = [v for v in src.vars if v not in target.index]
        if missing:
            raise ValueError(f"target ring lacks variables {missing}")
        pos = [target.index[v] for v in src.vars]
        cache: Dict[int, Optional[int]] = {}

        def conv(k):
            nk = cache.get(k, -1)
            if nk == -1:
                e = src.unpack(k)
                vec = [0] * target.nv
                for i, x in zip(pos, e):
                    vec[i] = x
                nk = target.pack(vec)
                if target.cap is not None and target.degree(nk) > target.cap:
                    nk = None
                cache[k] = nk
            return nk

        comps = []
        for k in range(target.order + 1):
            if k > src.order:
                comps.append(({}, {}))
                continue
            re, im = self._c[k]
            nre = {}
            nim = {}
            for d, nd in ((re, nre), (im, nim)):
                for key, v in d.items():
                    nk = conv(key)
                    if nk is not None:
                        nd[nk] = v
            comps.append((nre, nim))
        return TruncSeries(target, comps)

    def extend(self, names: Iterable[str]) -> "TruncSeries":
        """Same series viewed over additional variables."""
        r = self._r
        new = tuple(n for n in names if n not in r.index and n != H)
        if not new:
            return self
        return self._repack(get_ring(r.vars + new, r.laurent, r.order, r.cap))

    def in_ring(self, ring: Ring) -> "TruncSeries":
        return self._repack(ring)

    def with_order(self, order: int) -> "TruncSeries":
        """Re-truncate (or relabel upward, padding with zeros) to a new h_order."""
        r = self._r
        nr = get_ring(r.vars, r.laurent, order, r.cap)
        comps = [(dict(self._c[k][0]), dict(self._c[k][1])) if k <= r.order else ({}, {}) for k in range(order + 1)]
        return TruncSeries(nr, comps)

    def with_cap(self, cap: Optional[int]) -> "TruncSeries":
        r = self._r
        return self._repack(get_ring(r.vars, r.laurent, r.order, cap)) if cap != r.cap else self

    def with_laurent(self, laurent) -> "TruncSeries":
        r = self._r
        names = _laurent_names(laurent)
        if names == r.lnames:
            return self
        missing = [n for n in names if n not in r.index]
        if missing:
            return self.extend(missing).with_laurent(names)
        nr = get_ring(r.vars, names, r.order, r.cap)
        out = _empty(r.order)
        for k in range(r.order + 1):
            for j in (0, 1):
                for key, v in self._c[k][j].items():
                    nk = nr.pack(r.unpack(key))
                    if nr.cap is None or nr.degree(nk) <= nr.cap:
                        out[k][j][nk] = v
        return TruncSeries(nr, out)

    def rename(self, mapping: Mapping[str, str]) -> "TruncSeries":
        r = self._r
        nv = tuple(mapping.get(v, v) for v in r.vars)
        lr = tuple(mapping.get(n, n) for n in r.lnames)
        nr = get_ring(nv, lr, r.order, r.cap)
        return TruncSeries(nr, self._c)

    def _align(self, other: "TruncSeries") -> Tuple["TruncSeries", "TruncSeries"]:
        if self._r is other._r:
            return self, other
        if self._r.order != other._r.order:
            raise OrderMismatchError(f"h_order mismatch: {self._r.order} vs {other._r.order}")
        target = _merge_rings(self._r, other._r)
        return self._repack(target), other._repack(target)

    def _lift(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return other
        return self.like_const(other)

    # predicates -------------------------------------------------------------
    def is_zero(self) -> bool:
        for re, im in self._c:
            if re or im:
                return False
        return True

    def __bool__(self):
        return not self.is_zero()

    def valuation(self) -> Optional[int]:
        """Lowest power of h with a nonzero coefficient, None for zero."""
        for k, (re, im) in enumerate(self._c):
            if re or im:
                return k
        return None

    def ultra_norm(self) -> Fraction:
        v = self.valuation()
        return Fraction(0) if v is None else Fraction(1, 2 ** v)

    def nterms(self) -> int:
        return sum(len(set(re) | set(im)) for re, im in self._c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            try:
                other = self.like_const(other)
            except TypeError:
                return NotImplemented
        try:
            a, b = self._align(other)
        except OrderMismatchError:
            return False
        return a._c == b._c

    __hash__ = None  # type: ignore

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        a, b = self._align(self._lift(other))
        out = []
        for (ar, ai), (br, bi) in zip(a._c, b._c):
            nr = dict(ar)
            ni = dict(ai)
            if br:
                kernels.add_into(nr, br, False)
            if bi:
                kernels.add_into(ni, bi, False)
            out.append((nr, ni))
        return TruncSeries(a._r, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self._r, [({k: -v for k, v in re.items()}, {k: -v for k, v in im.items()}) for re, im in self._c])

    def __sub__(self, other):
        a, b = self._align(self._lift(other))
        out = []
        for (ar, ai), (br, bi) in zip(a._c, b._c):
            nr = dict(ar)
            ni = dict(ai)
            if br:
                kernels.add_into(nr, br, True)
            if bi:
                kernels.add_into(ni, bi, True)
            out.append((nr, ni))
        return TruncSeries(a._r, out)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, value) -> "TruncSeries":
        sr, si = _coerce_q_pair(value)
        out = []
        for re, im in self._c:
            nr: dict = {}
            ni: dict = {}
            if sr:
                for k, v in re.items():
                    nr[k] = sr * v
                for k, v in im.items():
                    ni[k] = sr * v
            if si:
                for k, v in im.items():
                    s = nr.get(k, 0) - si * v
                    if s:
                        nr[k] = s
                    else:
                        nr.pop(k, None)
                for k, v in re.items():
                    s = ni.get(k, 0) + si * v
                    if s:
                        ni[k] = s
                    else:
                        ni.pop(k, None)
            out.append((nr, ni))
        return TruncSeries(self._r, out)

    @staticmethod
    def _mac(r: Ring, out, x, y, negate_cross: bool = False):
        """out += x*y on component pairs (complex multiply)."""
        xr, xi = x
        yr, yi = y
        b, ds, cap = r.bias, r.degshift, r.capval
        if xr and yr:
            kernels.mul_into(out[0], xr, yr, False, b, ds, cap)
        if xi and yi:
            kernels.mul_into(out[0], xi, yi, True, b, ds, cap)
        if xr and yi:
            kernels.mul_into(out[1], xr, yi, False, b, ds, cap)
        if xi and yr:
            kernels.mul_into(out[1], xi, yr, False, b, ds, cap)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        a, b = self._align(other)
        r = a._r
        n = r.order
        ac, bc = a._c, b._c
        anz = [k for k in range(n + 1) if ac[k][0] or ac[k][1]]
        bnz = [k for k in range(n + 1) if bc[k][0] or bc[k][1]]
        out = _empty(n)
        for i in anz:
            for j in bnz:
                if i + j > n:
                    break
                TruncSeries._mac(r, out[i + j], ac[i], bc[j])
        return TruncSeries(r, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int) -> "TruncSeries":
        if not isinstance(n, int):
            return self.pow_fractional(Fraction(n))
        if n < 0:
            return self.invert() ** (-n)
        out = self.like_const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __truediv__(self, other):
        if isinstance(other, TruncSeries):
            return self * other.invert()
        return self.scale(Scalar.coerce(other).inverse())

    def conj(self) -> "TruncSeries":
        return TruncSeries(self._r, [(dict(re), {k: -v for k, v in im.items()}) for re, im in self._c])

    def component(self, k: int) -> "TruncSeries":
        """The h^k coefficient placed at h^0."""
        comps = _empty(self._r.order)
        if 0 <= k <= self._r.order:
            comps[0] = (dict(self._c[k][0]), dict(self._c[k][1]))
        return TruncSeries(self._r, comps)

    def shift_h(self, k: int) -> "TruncSeries":
        """Multiply by h^k (k may be negative when the low components vanish)."""
        n = self._r.order
        if k < 0:
            for j in range(min(-k, n + 1)):
                if self._c[j][0] or self._c[j][1]:
                    raise NonUnitError("division by h of a series with nonzero low-order part")
        comps = _empty(n)
        for j in range(n + 1):
            t = j + k
            if 0 <= t <= n:
                comps[t] = (dict(self._c[j][0]), dict(self._c[j][1]))
        return TruncSeries(self._r, comps)

    def div_h(self) -> "TruncSeries":
        """Exact division by h; the h^0 part must vanish (top order is lost)."""
        return self.shift_h(-1)

    def truncate_degree(self, cap: int) -> "TruncSeries":
        r = self._r
        comps = [({k: v for k, v in re.items() if r.degree(k) <= cap}, {k: v for k, v in im.items() if r.degree(k) <= cap})
                 for re, im in self._c]
        return TruncSeries(r, comps)

    # unit handling ------------------------------------------------------------
    def _comp0_unit_inverse(self):
        """Inverse of the h^0 component, as component pair, or raise."""
        r = self._r
        re, im = self._c[0]
        keys = set(re) | set(im)
        if not keys:
            raise NonUnitError("series with zero h^0 part is not invertible")
        zero_deg = [k for k in keys if r.degree(k) == 0]
        if len(keys) == 1 and zero_deg:
            key = zero_deg[0]
            e = r.unpack(key)
            inv_key = r.pack(tuple(-x for x in e))
            a, b = re.get(key, Q(0)), im.get(key, Q(0))
            n2 = a * a + b * b
            ir, ii = a / n2, -b / n2
            return ({inv_key: ir} if ir else {}, {inv_key: ii} if ii else {})
        if len(zero_deg) == 1 and r.cap is not None:
            key = zero_deg[0]
            unit = TruncSeries(r, [({key: re[key]} if key in re else {}, {key: im[key]} if key in im else {})] +
                               [({}, {}) for _ in range(r.order)])
            uinv = TruncSeries(r, [unit._comp0_unit_inverse()] + [({}, {}) for _ in range(r.order)])
            rest = self.component(0) - unit
            t = -(rest * uinv)
            acc = self.like_const(1)
            term = self.like_const(1)
            for _ in range(r.cap + 1):
                term = term * t
                if term.is_zero():
                    break
                acc = acc + term
            return (uinv * acc)._c[0]
        raise NonUnitError("h^0 part is not a unit (needs a single scalar-times-Laurent monomial, or a degree cap)")

    def invert(self) -> "TruncSeries":
        r = self._r
        n = r.order
        b0 = self._comp0_unit_inverse()
        out = [b0]
        ac = self._c
        nb0 = TruncSeries(r, [b0] + [({}, {}) for _ in range(n)])
        for m in range(1, n + 1):
            acc = ({}, {})
            for k in range(1, m + 1):
                if ac[k][0] or ac[k][1]:
                    TruncSeries._mac(r, acc, ac[k], out[m - k])
            if acc[0] or acc[1]:
                t = TruncSeries(r, [acc] + [({}, {}) for _ in range(n)]) * nb0
                out.append(tuple({k: -v for k, v in d.items()} for d in t._c[0]))
            else:
                out.append(({}, {}))
        return TruncSeries(r, out)

    def _is_one_at_zero(self) -> bool:
        r = self._r
        re, im = self._c[0]
        key = r.pack((0,) * r.nv)
        return not im and len(re) == 1 and re.get(key) == 1

    def pow_fractional(self, beta) -> "TruncSeries":
        """(1+u)^beta by the graded recurrence n b_n = sum_k (beta k - (n-k)) a_k b_{n-k}."""
        beta = to_q(Fraction(beta))
        if not self._is_one_at_zero():
            raise NormalizationError("fractional power needs h^0 part equal to 1")
        r = self._r
        n = r.order
        ac = self._c
        out = [self._c[0]]
        for m in range(1, n + 1):
            acc = ({}, {})
            for k in range(1, m + 1):
                if not (ac[k][0] or ac[k][1]) or not (out[m - k][0] or out[m - k][1]):
                    continue
                w = (beta * k - (m - k)) / m
                if not w:
                    continue
                tmp = ({}, {})
                TruncSeries._mac(r, tmp, ac[k], out[m - k])
                for j in (0, 1):
                    kernels.add_into(acc[j], {kk: w * v for kk, v in tmp[j].items()}, False)
            out.append(acc)
        return TruncSeries(r, out)

    def sqrt(self) -> "TruncSeries":
        return self.pow_fractional(Fraction(1, 2))

    def exp(self) -> "TruncSeries":
        """exp(a) by n b_n = sum_k k a_k b_{n-k}; needs zero h^0 part."""
        r = self._r
        if self._c[0][0] or self._c[0][1]:
            raise NormalizationError("exp needs a series with zero h^0 part")
        n = r.order
        ac = self._c
        out = [self.like_const(1)._c[0]]
        for m in range(1, n + 1):
            acc = ({}, {})
            for k in range(1, m + 1):
                if not (ac[k][0] or ac[k][1]) or not (out[m - k][0] or out[m - k][1]):
                    continue
                w = Q(k, m)
                tmp = ({}, {})
                TruncSeries._mac(r, tmp, ac[k], out[m - k])
                for j in (0, 1):
                    kernels.add_into(acc[j], {kk: w * v for kk, v in tmp[j].items()}, False)
            out.append(acc)
        return TruncSeries(r, out)

    def log1p(self) -> "TruncSeries":
        """log(1+u) for u with zero h^0 part: n b_n = n u_n - sum_{k<n} k b_k u_{n-k}."""
        r = self._r
        if self._c[0][0] or self._c[0][1]:
            raise NormalizationError("log1p needs a series with zero h^0 part")
        n = r.order
        uc = self._c
        out = [({}, {})]
        for m in range(1, n + 1):
            acc = (dict(uc[m][0]), dict(uc[m][1]))
            for k in range(1, m):
                if not (out[k][0] or out[k][1]) or not (uc[m - k][0] or uc[m - k][1]):
                    continue
                w = Q(k, m)
                tmp = ({}, {})
                TruncSeries._mac(r, tmp, out[k], uc[m - k])
                for j in (0, 1):
                    kernels.add_into(acc[j], {kk: w * v for kk, v in tmp[j].items()}, True)
            out.append(acc)
        return TruncSeries(r, out)

    def log(self) -> "TruncSeries":
        """log(a) for a with h^0 part equal to 1."""
        if not self._is_one_at_zero():
            raise NormalizationError("log needs h^0 part equal to 1")
        return (self - 1).log1p()

    # calculus and substitution ------------------------------------------------
    def derivative(self, name: str) -> "TruncSeries":
        r = self._r
        if name not in r.index:
            return self.like_const(0)
        i = r.index[name]
        shift = _FIELD * i
        dstep = (1 << r.degshift) if i not in r.lset else 0
        step = (1 << shift) + dstep
        out = []
        for re, im in self._c:
            parts = []
            for d in (re, im):
                nd = {}
                for k, v in d.items():
                    e = ((k >> shift) & 255) - _B
                    if e:
                        nd[k - step] = e * v
                parts.append(nd)
            out.append(tuple(parts))
        return TruncSeries(r, out)

    def terms(self) -> Iterator[Tuple[Tuple[int, ...], Scalar]]:
        """Yield ((h_exp, e_1, ..., e_n), Scalar) in canonical order."""
        r = self._r
        for k, (re, im) in enumerate(self._c):
            for key in sorted(set(re) | set(im)):
                yield (k,) + r.unpack(key), Scalar(q_to_fraction(re.get(key, Q(0))), q_to_fraction(im.get(key, Q(0))))

    def raw_terms(self):
        """Yield (h_exp, exps, re, im) with internal rationals (fast path)."""
        r = self._r
        zero = Q(0)
        for k, (re, im) in enumerate(self._c):
            for key in set(re) | set(im):
                yield k, r.unpack(key), re.get(key, zero), im.get(key, zero)

    def coefficient(self, exps: Mapping[str, int]) -> Scalar:
        r = self._r
        hk = exps.get(H, 0)
        vec = [0] * r.nv
        for n, e in exps.items():
            if n == H:
                continue
            if n not in r.index:
                return Scalar(0) if e else Scalar(0)
            vec[r.index[n]] = e
        if hk > r.order:
            return Scalar(0)
        key = r.pack(vec)
        re, im = self._c[hk]
        return Scalar(q_to_fraction(re.get(key, Q(0))), q_to_fraction(im.get(key, Q(0))))

    def substitute(self, bindings: Mapping[str, "TruncSeries"]) -> "TruncSeries":
        """Compose: replace each bound symbol by a series; unbound symbols stay."""
        r = self._r
        binds_in = {n: b for n, b in bindings.items() if n in r.index}
        if not binds_in:
            return self
        keep = tuple(v for v in r.vars if v not in binds_in)
        target = get_ring(keep, tuple(n for n in r.lnames if n in keep), r.order, r.cap)
        for b in binds_in.values():
            if isinstance(b, TruncSeries):
                if b.h_order != r.order:
                    raise OrderMismatchError("binding h_order differs")
                target = _merge_rings(target, b._r)
        base = TruncSeries(target, _empty(r.order))
        binds = {n: (b._repack(target) if isinstance(b, TruncSeries) else base.like_const(b)) for n, b in binds_in.items()}
        bound_idx = [(r.index[n], n) for n in binds]
        keep_pos = [(r.index[n], target.index[n]) for n in keep]
        powcache: Dict[Tuple[str, int], TruncSeries] = {}

        def power(name, e):
            key = (name, e)
            if key not in powcache:
                if e == 0:
                    val = base.like_const(1)
                elif e == -1:
                    if name not in r.lnames:
                        raise ExponentError("negative exponent on non-Laurent symbol")
                    try:
                        val = binds[name].invert()
                    except NonUnitError as exc:
                        raise NonUnitError(f"binding for Laurent symbol {name} is not a unit") from exc
                elif e < 0:
                    val = power(name, e + 1) * power(name, -1)
                elif e == 1:
                    val = binds[name]
                else:
                    half = power(name, e // 2)
                    val = half * half if e % 2 == 0 else half * half * binds[name]
                powcache[key] = val
            return powcache[key]

        groups: Dict[Tuple[int, ...], list] = {}
        for j, (re, im) in enumerate(self._c):
            for part, d in ((0, re), (1, im)):
                for key, v in d.items():
                    exps = r.unpack(key)
                    bkey = tuple(exps[i] for i, _ in bound_idx)
                    vec = [0] * target.nv
                    for i, ti in keep_pos:
                        vec[ti] = exps[i]
                    groups.setdefault(bkey, []).append((j, part, target.pack(vec), v))
        total = base
        for bkey, items in groups.items():
            comps = _empty(r.order)
            for j, part, nk, v in items:
                comps[j][part][nk] = v
            poly = TruncSeries(target, comps)
            factor = None
            for (_, n), e in zip(bound_idx, bkey):
                if e:
                    p = power(n, e)
                    factor = p if factor is None else factor * p
            total = total + (poly if factor is None else poly * factor)
        return total

    def evaluate(self, values: Mapping[str, complex]) -> complex:
        """Numeric value with every symbol (including h) bound to a number."""
        r = self._r
        hv = complex(values.get(H, 0))
        vals = [complex(values[v]) if v in values else None for v in r.vars]
        total = 0j
        for hk, exps, re, im in self.raw_terms():
            t = complex(float(re), float(im)) * (hv ** hk)
            for v, e in zip(vals, exps):
                if e:
                    if v is None:
                        raise KeyError("missing value for a symbol with nonzero exponent")
                    t *= v ** e
            total += t
        return total

    def partial_evaluate(self, values: Mapping[str, object]) -> "TruncSeries":
        """Bind some symbols to exact numbers."""
        return self.substitute({k: self.like_const(v) for k, v in values.items() if k in self._r.index})

    def drop_unused(self) -> "TruncSeries":
        r = self._r
        used = set()
        for _, exps, _, _ in self.raw_terms():
            used.update(i for i, e in enumerate(exps) if e)
        names = tuple(v for i, v in enumerate(r.vars) if i in used)
        if len(names) == r.nv:
            return self
        lr = tuple(n for n in r.lnames if n in names)
        return self._repack_subset(get_ring(names, lr, r.order, r.cap))

    def _repack_subset(self, target: Ring) -> "TruncSeries":
        r = self._r
        comps = _empty(r.order)
        for k, (re, im) in enumerate(self._c):
            for j, d in enumerate((re, im)):
                for key, v in d.items():
                    e = dict(zip(r.vars, r.unpack(key)))
                    comps[k][j][target.pack([e[n] for n in target.vars])] = v
        return TruncSeries(target, comps)

    # serialization -----------------------------------------------------------
    def to_json_obj(self) -> dict:
        out = []
        for exps, s in self.terms():
            out.append({"exponents": list(exps), "re": f"{s.re.numerator}/{s.re.denominator}",
                        "im": f"{s.im.numerator}/{s.im.denominator}"})
        lr = self.laurent
        return {"variables": list(self.variables), "laurent": list(lr) if isinstance(lr, tuple) else lr, "h_order": self.h_order,
                "deg_cap": self.deg_cap, "terms": out}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "TruncSeries":
        vs = [v for v in obj["variables"]]
        if not vs or vs[0] != H:
            raise ValueError("variables must start with 'h'")
        terms = {tuple(t["exponents"]): Scalar(Fraction(t["re"]), Fraction(t["im"])) for t in obj["terms"]}
        return cls.from_terms(vs[1:], terms, obj["h_order"], obj.get("laurent"), obj.get("deg_cap"))

    @classmethod
    def from_json(cls, text: str) -> "TruncSeries":
        return cls.from_json_obj(json.loads(text))

    # display ----------------------------------------------------------------
    def __repr__(self):
        return f"TruncSeries({format_series(self)}, h_order={self.h_order})"

    def __str__(self):
        return format_series(self)


def format_series(s: TruncSeries) -> str:
    from .scalar import format_scalar

    parts = []
    for exps, c in s.terms():
        mono = []
        if exps[0]:
            mono.append("h" if exps[0] == 1 else f"h^{exps[0]}")
        for n, e in zip(s.symbols, exps[1:]):
            if e:
                mono.append(n if e == 1 else f"{n}^{e}")
        cs = format_scalar(c)
        if not mono:
            parts.append(cs if (" " not in cs) else f"({cs})")
        elif c == 1:
            parts.append("*".join(mono))
        elif c == -1:
            parts.append("-" + "*".join(mono))
        else:
            parts.append((cs if " " not in cs else f"({cs})") + "*" + "*".join(mono))
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def h_series(coeffs: Sequence, variables: Sequence[str] = (), h_order: int = DEFAULT_ORDER) -> TruncSeries:
    """Series sum_k coeffs[k] h^k with scalar coefficients."""
    vs = tuple(v for v in variables if v != H)
    terms = {(k,) + (0,) * len(vs): c for k, c in enumerate(coeffs) if k <= h_order and c}
    return TruncSeries.from_terms(vs, terms, h_order)
