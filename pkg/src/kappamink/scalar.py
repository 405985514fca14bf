"""Exact Gaussian-rational scalars."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

try:
    from gmpy2 import mpq as _mpq

    def to_q(v) -> "_mpq":
        if isinstance(v, Fraction):
            return _mpq(v.numerator, v.denominator)
        return _mpq(v)

    HAVE_GMPY = True
except ImportError:  # pragma: no cover
    _mpq = Fraction

    def to_q(v):
        return Fraction(v)

    HAVE_GMPY = False

Q = _mpq


def q_to_fraction(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


def parse_rational(text: str) -> Fraction:
    """Parse '3', '-1/2', '0.25' into an exact Fraction."""
    return Fraction(text.strip())


def q_str(v) -> str:
    f = q_to_fraction(v)
    return f"{f.numerator}/{f.denominator}"


@dataclass(frozen=True)
class Scalar:
    """Complex number re + i*im with rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, v) -> "Scalar":
        if isinstance(v, Scalar):
            return v
        if isinstance(v, complex):
            return cls(Fraction(v.real), Fraction(v.imag))
        if isinstance(v, (int, Rational)):
            return cls(Fraction(v), Fraction(0))
        if hasattr(v, "numerator") and hasattr(v, "denominator"):
            return cls(Fraction(int(v.numerator), int(v.denominator)))
        raise TypeError(f"cannot coerce {v!r} to Scalar")

    def __add__(self, o):
        o = Scalar.coerce(o)
        return Scalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-Scalar.coerce(o))

    def __rsub__(self, o):
        return Scalar.coerce(o) - self

    def __mul__(self, o):
        o = Scalar.coerce(o)
        return Scalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "Scalar":
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("inverse of zero scalar")
        return Scalar(self.re / n, -self.im / n)

    def __truediv__(self, o):
        return self * Scalar.coerce(o).inverse()

    def __rtruediv__(self, o):
        return Scalar.coerce(o) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = Scalar(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, o):
        try:
            o = Scalar.coerce(o)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        return format_scalar(self)


I = Scalar(0, 1)
ONE = Scalar(1)
ZERO = Scalar(0)


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_scalar(s: Scalar) -> str:
    """Compact text form, e.g. '3/2', '-ı', '1/2 + ı'."""
    if not s.im:
        return _frac_str(s.re)
    if s.im == 1:
        ims = "ı"
    elif s.im == -1:
        ims = "-ı"
    else:
        ims = f"{_frac_str(s.im)}*ı"
    if not s.re:
        return ims
    sign = " - " if ims.startswith("-") else " + "
    return f"{_frac_str(s.re)}{sign}{ims.lstrip('-')}"
