"""Text syntax for scalars, bihomogeneous polynomials and automorphisms.

    scalar      z8^3 - 1/2*z8 + 2      (zN^k is a power of exp(2 pi i / N))
    polynomial  X0^4*Y0^5 + (z4)*X1^4*Y1^5 - 1/2*X0^2*X1^2*Y1^5
    automorph   diag(20; 5, 4)
                mat([[1,0],[0,z4]], [[0,1],[1,0]], swap=true)
                swapdiag(6; 1)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .bipoly import BiPoly
from .scalars import CycloScalar, zeta
from .surfauto import DiagonalAut, SurfaceAut, SwapNormalForm, mat

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<var>[XY][01])|(?P<zeta>z(?P<zn>\d+))|(?P<word>[A-Za-z_]+)|(?P<op>[-+*/^(),;\[\]=]))"
)

VARIABLES = ("X0", "X1", "Y0", "Y1")


class ParseError(SyntaxError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text[:pos]}<HERE>{text[pos:]}")
        self.pos = pos


class NotBihomogeneous(ValueError):
    pass


@dataclass(frozen=True)
class _Tok:
    kind: str
    value: str
    pos: int


def tokenize(text: str) -> list[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError("unexpected character", text, pos)
        start = m.start(m.lastgroup) if m.lastgroup != "zn" else m.start("zeta")
        kind = m.lastgroup
        if kind == "zn":
            kind = "zeta"
        value = m.group("zn") if kind == "zeta" else m.group(kind)
        out.append(_Tok(kind, value, start))
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message: str):
        raise ParseError(message, self.text, self.tok.pos)

    def accept(self, kind: str, value: str | None = None) -> _Tok | None:
        t = self.tok
        if t.kind == kind and (value is None or t.value == value):
            self.i += 1
            return t
        return None

    def expect(self, kind: str, value: str | None = None) -> _Tok:
        t = self.accept(kind, value)
        if t is None:
            self.error(f"expected {value or kind}")
        return t

    def op(self, value: str) -> bool:
        return self.accept("op", value) is not None

    def integer(self) -> int:
        neg = self.op("-")
        v = int(self.expect("num").value)
        return -v if neg else v

    def finish(self):
        if self.tok.kind != "end":
            self.error("unexpected trailing input")

    # scalars
    def number(self) -> Fraction:
        v = Fraction(int(self.expect("num").value))
        if self.tok.kind == "op" and self.tok.value == "/" and self.toks[self.i + 1].kind == "num":
            self.i += 1
            d = int(self.expect("num").value)
            if d == 0:
                self.error("zero denominator")
            v /= d
        return v

    def scalar_atom(self) -> CycloScalar:
        if self.tok.kind == "num":
            return CycloScalar.rational(self.number())
        t = self.accept("zeta")
        if t is not None:
            n = int(t.value)
            if n < 1:
                self.error("conductor must be positive")
            k = self.integer() if self.op("^") else 1
            return zeta(n, k)
        if self.op("("):
            v = self.scalar_expr()
            self.expect("op", ")")
            if self.op("^"):
                v = v ** self.integer()
            return v
        self.error("expected a scalar")

    def scalar_term(self) -> CycloScalar:
        v = self.scalar_atom()
        while True:
            if self.op("*"):
                v = v * self.scalar_atom()
            elif self.tok.kind == "op" and self.tok.value == "/":
                self.i += 1
                d = self.scalar_atom()
                if d.is_zero():
                    self.error("division by zero")
                v = v / d
            else:
                return v

    def scalar_expr(self) -> CycloScalar:
        neg = self.op("-")
        if not neg:
            self.op("+")
        v = self.scalar_term()
        if neg:
            v = -v
        while True:
            if self.op("+"):
                v = v + self.scalar_term()
            elif self.op("-"):
                v = v - self.scalar_term()
            else:
                return v

    # polynomials
    def poly_factor(self, exps: list[int]) -> CycloScalar:
        t = self.accept("var")
        if t is not None:
            k = int(self.expect("num").value) if self.op("^") else 1
            exps[VARIABLES.index(t.value)] += k
            return CycloScalar.rational(1)
        return self.scalar_atom()

    def poly_term(self):
        exps = [0, 0, 0, 0]
        start = self.tok.pos
        c = self.poly_factor(exps)
        while self.op("*"):
            c = c * self.poly_factor(exps)
        return c, tuple(exps), self.text[start : self.tok.pos].strip()

    def poly_expr(self):
        terms = []
        sign = -1 if self.op("-") else 1
        if sign == 1:
            self.op("+")
        while True:
            c, e, src = self.poly_term()
            terms.append((c * sign, e, src))
            if self.op("+"):
                sign = 1
            elif self.op("-"):
                sign = -1
            else:
                return terms


@dataclass(frozen=True)
class ParsedExpression:
    source: str
    poly: BiPoly
    bidegree: tuple[int, int]


def parse_scalar(text: str) -> CycloScalar:
    p = _Parser(text)
    v = p.scalar_expr()
    p.finish()
    return v


def parse_bipoly(text: str) -> ParsedExpression:
    p = _Parser(text)
    if p.tok.kind == "end":
        p.error("empty polynomial")
    terms = p.poly_expr()
    p.finish()
    degrees = {}
    for _, (x0, x1, y0, y1), src in terms:
        degrees.setdefault((x0 + x1, y0 + y1), []).append(src)
    if len(degrees) > 1:
        detail = "; ".join(f"{src} has bidegree {bd}" for bd, srcs in sorted(degrees.items()) for src in srcs)
        raise NotBihomogeneous(f"terms of different bidegrees: {detail}")
    (a, b), = degrees
    F = BiPoly(a, b, [((e[0], e[2]), c) for c, e, _ in terms])
    return ParsedExpression(text, F, (a, b))


def _matrix(p: _Parser):
    p.expect("op", "[")
    rows = []
    for r in range(2):
        if r:
            p.expect("op", ",")
        p.expect("op", "[")
        x = p.scalar_expr()
        p.expect("op", ",")
        y = p.scalar_expr()
        p.expect("op", "]")
        rows.append((x, y))
    p.expect("op", "]")
    (a, b), (c, d) = rows
    return mat(a, b, c, d)


def parse_automorphism(text: str):
    p = _Parser(text)
    word = p.expect("word").value
    p.expect("op", "(")
    if word == "diag":
        n = p.integer()
        p.expect("op", ";")
        r1 = p.integer()
        p.expect("op", ",")
        r2 = p.integer()
        p.expect("op", ")")
        p.finish()
        if n < 1:
            raise ParseError("conductor must be positive", text, 0)
        return DiagonalAut(n, r1, r2)
    if word == "swapdiag":
        n = p.integer()
        p.expect("op", ";")
        r = p.integer()
        p.expect("op", ")")
        p.finish()
        return SwapNormalForm(n, r)
    if word == "mat":
        A = _matrix(p)
        p.expect("op", ",")
        B = _matrix(p)
        swap = False
        if p.op(","):
            key = p.expect("word")
            if key.value != "swap":
                p.error("expected swap=")
            p.expect("op", "=")
            flag = p.expect("word").value.lower()
            if flag not in ("true", "false"):
                p.error("expected true or false")
            swap = flag == "true"
        p.expect("op", ")")
        p.finish()
        for m in (A, B):
            if (m[0] * m[3] - m[1] * m[2]).is_zero():
                raise ValueError("singular matrix in automorphism")
        return SurfaceAut(A, B, swap)
    raise ParseError(f"unknown automorphism form {word!r}", text, 0)
