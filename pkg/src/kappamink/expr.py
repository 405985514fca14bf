"""Parser for polynomial expressions in x0..x3 with rational and imaginary scalars.

Grammar::

    expr   := sign? term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' INT)?
    atom   := INT ('/' INT)? | 'x' DIGIT | 'i' | 'ı' | 'h' | '(' expr ')'
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Tuple

from .errors import ParseError
from .scalar import Scalar
from .series import DEFAULT_ORDER, TruncSeries
from .weyl import PolyState

Token = Tuple[str, str, int]


def _tokens(text: str) -> List[Token]:
    out: List[Token] = []
    i = 0
    text = text.replace("−", "-")
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(("int", text[i:j], i))
            i = j
        elif ch == "x":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError("coordinate needs an index", i)
            out.append(("x", text[i + 1:j], i))
            i = j
        elif ch in "iı":
            out.append(("i", ch, i))
            i += 1
        elif ch == "h":
            out.append(("h", ch, i))
            i += 1
        elif ch in "+-*/^()":
            out.append((ch, ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, n: int, h_order: int):
        self.toks = _tokens(text)
        self.k = 0
        self.n = n
        self.h_order = h_order

    def peek(self) -> Token:
        return self.toks[self.k]

    def take(self, kind: str) -> Token:
        t = self.peek()
        if t[0] != kind:
            raise ParseError(f"expected {kind!r}, found {t[1] or 'end of input'!r}", t[2])
        self.k += 1
        return t

    def const(self, value) -> PolyState:
        return PolyState.const(value, self.n, 1, self.h_order)

    def expr(self) -> PolyState:
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take(self.peek()[0])[0] == "-" else 1
        acc = self.term() * sign
        while self.peek()[0] in ("+", "-"):
            op = self.take(self.peek()[0])[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> PolyState:
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take("*")
            acc = acc * self.factor()
        return acc

    def factor(self) -> PolyState:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take("^")
            e = int(self.take("int")[1])
            out = self.const(1)
            for _ in range(e):
                out = out * base
            return out
        return base

    def atom(self) -> PolyState:
        kind, val, pos = self.peek()
        if kind == "int":
            self.take("int")
            num = Fraction(int(val))
            if self.peek()[0] == "/":
                self.take("/")
                den = int(self.take("int")[1])
                if den == 0:
                    raise ParseError("zero denominator", self.toks[self.k - 1][2])
                num /= den
            return self.const(num)
        if kind == "x":
            self.take("x")
            mu = int(val)
            if mu >= self.n:
                raise ParseError(f"coordinate x{mu} outside dimension {self.n}", pos)
            return PolyState.x(mu, self.n, 1, self.h_order)
        if kind == "i":
            self.take("i")
            return self.const(Scalar(0, 1))
        if kind == "h":
            self.take("h")
            return self.const(TruncSeries.zero((), self.h_order).like_monomial({"h": 1}))
        if kind == "(":
            self.take("(")
            e = self.expr()
            self.take(")")
            return e
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse_poly(text: str, n: int = 4, h_order: int = DEFAULT_ORDER) -> PolyState:
    p = _Parser(text, n, h_order)
    if p.peek()[0] == "end":
        raise ParseError("empty expression", 0)
    out = p.expr()
    p.take("end")
    return out
