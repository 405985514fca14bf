"""Enveloping algebras of the form (commutative momentum functions) x (Lorentz generators).

An element on ``nlegs`` tensor legs is a sum of f(P, P', ...) * w_0 (x) w_1 (x) ...
with momentum functions on the left and one ordered Lorentz word per leg. The
Lorentz generators close among themselves; their commutators with momentum
functions follow the derivation rule ad_L f = sum_v [L, v] df/dv, where the
brackets [L, v] are themselves momentum functions.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .scalar import Scalar
from .series import TruncSeries

Word = Tuple[int, ...]
LORENTZ = ("M1", "M2", "M3", "N1", "N2", "N3")


def leg_name(var: str, leg: int) -> str:
    return var + "'" * leg


class MomentumSpace:
    """Momentum variables, the Lorentz bracket table and the momentum action."""

    def __init__(self, base_vars: Sequence[str], h_order: int, lorentz: Mapping[Tuple[int, int], Mapping[int, Scalar]],
                 action: Mapping[Tuple[int, str], TruncSeries], laurent: Optional[str] = None,
                 deg_cap: Optional[int] = None, letters: Sequence[str] = LORENTZ):
        self.base_vars = tuple(base_vars)
        self.h_order = h_order
        self.laurent = laurent
        self.deg_cap = deg_cap
        self.letters = tuple(letters)
        self.lorentz = {k: dict(v) for k, v in lorentz.items()}
        self._rings: Dict[int, TruncSeries] = {}
        self._normal_cache: Dict[Word, Dict[Word, Scalar]] = {}
        self._placed: Dict[Tuple, TruncSeries] = {}
        self._action1 = {k: self.coerce1(v) for k, v in action.items()}

    # rings and placement ----------------------------------------------------
    def leg_vars(self, leg: int) -> Tuple[str, ...]:
        return tuple(leg_name(v, leg) for v in self.base_vars)

    def zero_series(self, nlegs: int) -> TruncSeries:
        if nlegs not in self._rings:
            names = tuple(n for leg in range(nlegs) for n in self.leg_vars(leg))
            lr = tuple(leg_name(self.laurent, leg) for leg in range(nlegs)) if self.laurent else None
            self._rings[nlegs] = TruncSeries.zero(names, self.h_order, lr, self.deg_cap)
        return self._rings[nlegs]

    def coerce1(self, f) -> TruncSeries:
        base = self.zero_series(1)
        if isinstance(f, TruncSeries):
            return f.extend(base.symbols).with_laurent(base.laurent).with_cap(self.deg_cap).in_ring(base.ring) \
                if f.ring is not base.ring else f
        return base.like_const(f)

    def place(self, f: TruncSeries, leg: int, nlegs: int) -> TruncSeries:
        """Move a one-leg series onto leg ``leg`` of an nlegs ring."""
        f = self.coerce1(f)
        key = (id(f), leg, nlegs)
        hit = self._placed.get(key)
        if hit is not None and hit[0] is f:
            return hit[1]
        g = f.rename({v: leg_name(v, leg) for v in self.base_vars}) if leg else f
        out = g.in_ring(self.zero_series(nlegs).ring)
        self._placed[key] = (f, out)
        return out

    def var(self, name: str, leg: int = 0, nlegs: int = 1) -> TruncSeries:
        z = self.zero_series(nlegs)
        return z.like_monomial({leg_name(name, leg): 1})

    def action(self, letter: int, var: str) -> Optional[TruncSeries]:
        return self._action1.get((letter, var))

    # Lorentz words ------------------------------------------------------------
    def bracket_letters(self, a: int, b: int) -> Dict[int, Scalar]:
        if (a, b) in self.lorentz:
            return self.lorentz[(a, b)]
        if (b, a) in self.lorentz:
            return {c: -v for c, v in self.lorentz[(b, a)].items()}
        return {}

    def normal(self, word: Word) -> Dict[Word, Scalar]:
        """Normal-order a word into sorted words."""
        hit = self._normal_cache.get(word)
        if hit is not None:
            return hit
        out: Dict[Word, Scalar] = {}
        for i in range(len(word) - 1):
            if word[i] > word[i + 1]:
                swapped = word[:i] + (word[i + 1], word[i]) + word[i + 2:]
                for w, c in self.normal(swapped).items():
                    out[w] = out.get(w, Scalar(0)) + c
                for letter, c in self.bracket_letters(word[i], word[i + 1]).items():
                    for w, c2 in self.normal(word[:i] + (letter,) + word[i + 2:]).items():
                        out[w] = out.get(w, Scalar(0)) + c * c2
                break
        else:
            out = {word: Scalar(1)}
        out = {w: c for w, c in out.items() if c}
        self._normal_cache[word] = out
        return out

    # derivation rule ----------------------------------------------------------
    def ad(self, letter: int, f: TruncSeries, leg: int, nlegs: int) -> TruncSeries:
        """[L, f] for L on leg ``leg`` and f a momentum function on nlegs legs."""
        out = self.zero_series(nlegs)
        for v in self.base_vars:
            br = self.action(letter, v)
            if br is None or br.is_zero():
                continue
            d = f.derivative(leg_name(v, leg))
            if d.is_zero():
                continue
            out = out + self.place(br, leg, nlegs) * d
        return out

    def move_word(self, word: Word, f: TruncSeries, leg: int, nlegs: int) -> Dict[Word, TruncSeries]:
        """w f = sum_u g_u u, u running over subsequences of w."""
        if not word:
            return {(): f}
        rest = self.move_word(word[1:], f, leg, nlegs)
        out: Dict[Word, TruncSeries] = {}
        first = word[0]
        for u, g in rest.items():
            k = (first,) + u
            out[k] = out[k] + g if k in out else g
            adg = self.ad(first, g, leg, nlegs)
            if not adg.is_zero():
                out[u] = out[u] + adg if u in out else adg
        return out

    # element constructors -----------------------------------------------------
    def zero(self, nlegs: int = 1) -> "PBW":
        return PBW(self, nlegs, {})

    def one(self, nlegs: int = 1) -> "PBW":
        return PBW(self, nlegs, {((),) * nlegs: self.zero_series(nlegs).like_const(1)})

    def fn(self, f, leg: int = 0, nlegs: int = 1) -> "PBW":
        s = self.place(f, leg, nlegs) if isinstance(f, TruncSeries) else self.zero_series(nlegs).like_const(f)
        return PBW(self, nlegs, {((),) * nlegs: s}).clean()

    def letter(self, name: str, leg: int = 0, nlegs: int = 1) -> "PBW":
        idx = self.letters.index(name)
        words = tuple((idx,) if l == leg else () for l in range(nlegs))
        return PBW(self, nlegs, {words: self.zero_series(nlegs).like_const(1)})

    def gen(self, name: str, leg: int = 0, nlegs: int = 1) -> "PBW":
        """A Lorentz letter or a momentum variable by name."""
        if name in self.letters:
            return self.letter(name, leg, nlegs)
        if name in self.base_vars:
            return PBW(self, nlegs, {((),) * nlegs: self.var(name, leg, nlegs)})
        raise KeyError(name)

    def series1(self) -> TruncSeries:
        return self.zero_series(1)


class PBW:
    __slots__ = ("space", "nlegs", "terms")

    def __init__(self, space: MomentumSpace, nlegs: int, terms: Dict[Tuple[Word, ...], TruncSeries]):
        self.space = space
        self.nlegs = nlegs
        self.terms = terms

    def clean(self) -> "PBW":
        self.terms = {k: v for k, v in self.terms.items() if not v.is_zero()}
        return self

    def __add__(self, other: "PBW") -> "PBW":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return PBW(self.space, self.nlegs, out).clean()

    def __neg__(self) -> "PBW":
        return PBW(self.space, self.nlegs, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "PBW") -> "PBW":
        return self + (-other)

    def scale(self, c) -> "PBW":
        if isinstance(c, TruncSeries):
            c = c.extend(self.space.zero_series(self.nlegs).symbols).in_ring(self.space.zero_series(self.nlegs).ring)
            return PBW(self.space, self.nlegs, {k: v * c for k, v in self.terms.items()}).clean()
        return PBW(self.space, self.nlegs, {k: v.scale(c) for k, v in self.terms.items()}).clean()

    def left_fn(self, f: TruncSeries) -> "PBW":
        """f * self for a momentum function f on the same legs."""
        return PBW(self.space, self.nlegs, {k: f * v for k, v in self.terms.items()}).clean()

    def __mul__(self, other: "PBW") -> "PBW":
        sp = self.space
        n = self.nlegs
        acc: Dict[Tuple[Word, ...], TruncSeries] = {}
        for wa, fa in self.terms.items():
            for wb, fb in other.terms.items():
                moved = {(): fb}
                for leg in range(n):
                    nxt = {}
                    for prefix, g in moved.items():
                        for u, gu in sp.move_word(wa[leg], g, leg, n).items():
                            nxt[prefix + (u,)] = nxt[prefix + (u,)] + gu if prefix + (u,) in nxt else gu
                    moved = nxt
                for us, g in moved.items():
                    coef = fa * g
                    if coef.is_zero():
                        continue
                    combos = [{(): Scalar(1)}]
                    for leg in range(n):
                        nf = sp.normal(us[leg] + wb[leg])
                        new = {}
                        for p, c in combos[0].items():
                            for w, c2 in nf.items():
                                key = p + (w,)
                                new[key] = new.get(key, Scalar(0)) + c * c2
                        combos = [new]
                    for words, c in combos[0].items():
                        if not c:
                            continue
                        t = coef.scale(c)
                        acc[words] = acc[words] + t if words in acc else t
        return PBW(sp, n, acc).clean()

    def commutator(self, other: "PBW") -> "PBW":
        return self * other - other * self

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.terms.values())

    def valuation(self) -> Optional[int]:
        vals = [v.valuation() for v in self.terms.values()]
        vals = [v for v in vals if v is not None]
        return min(vals) if vals else None

    def __eq__(self, other) -> bool:
        return isinstance(other, PBW) and (self - other).is_zero()

    def momentum_part(self) -> TruncSeries:
        return self.terms.get(((),) * self.nlegs, self.space.zero_series(self.nlegs))

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for words, f in sorted(self.terms.items()):
            w = " (x) ".join("*".join(self.space.letters[i] for i in wd) or "1" for wd in words)
            parts.append(f"({f})*[{w}]")
        return " + ".join(parts)


def tensor(*elems: PBW) -> PBW:
    """a (x) b (x) ... of one-leg elements."""
    sp = elems[0].space
    n = len(elems)
    out = sp.one(n)
    for leg, e in enumerate(elems):
        placed = embed(e, (leg,), n)
        out = out * placed
    return out


def embed(e: PBW, legmap: Sequence[int], nlegs: int) -> PBW:
    """Place leg j of ``e`` on leg legmap[j] of an nlegs element."""
    sp = e.space
    ren = {}
    for j, target in enumerate(legmap):
        for v in sp.base_vars:
            ren[leg_name(v, j)] = leg_name(v, target)
    ring = sp.zero_series(nlegs).ring
    out = {}
    for words, f in e.terms.items():
        nw = [()] * nlegs
        for j, target in enumerate(legmap):
            nw[target] = words[j]
        g = f.rename({a: "~" + b for a, b in ren.items()}).rename({"~" + b: b for b in ren.values()})
        g = g.extend(sp.zero_series(nlegs).symbols).with_laurent(sp.zero_series(nlegs).laurent).in_ring(ring)
        key = tuple(nw)
        out[key] = out[key] + g if key in out else g
    return PBW(sp, nlegs, out).clean()
