"""Knot-construction expressions: AST, parser, formatter and classifier.

Grammar (whitespace-insensitive)::

    expr    := term ('#' term)*
    term    := 'U' | 'T(' int ',' int ')' | 'K(' int ')' | 'J(' int ',' int ')'
             | 'cable(' int ',' int ';' expr ')' | 'D[' int (',' int)? '](' expr ')'
             | 'mirror(' expr ')' | '(' expr ')'
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd
from typing import Union


class KnotSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class KnotValidationError(ValueError):
    pass


@dataclass(frozen=True)
class Unknot:
    pass


@dataclass(frozen=True)
class Torus:
    p: int
    q: int

    def __post_init__(self):
        if not (abs(self.p) > self.q >= 2):
            raise KnotValidationError(f"T({self.p},{self.q}): need |p| > q >= 2")
        if gcd(abs(self.p), self.q) != 1:
            raise KnotValidationError(f"T({self.p},{self.q}): gcd(|p|,q) must be 1")


@dataclass(frozen=True)
class Twist:
    n: int


@dataclass(frozen=True)
class DoubleTwistKnot:
    """J(2m, 2n); the fields hold the half-counts m and n."""

    m: int
    n: int


@dataclass(frozen=True)
class Cable:
    p: int
    q: int
    inner: "KnotExpr"

    def __post_init__(self):
        if self.q < 2:
            raise KnotValidationError(f"cable({self.p},{self.q}): need q >= 2")
        if self.p == 0:
            raise KnotValidationError(f"cable({self.p},{self.q}): need p != 0")
        if gcd(abs(self.p), self.q) != 1:
            raise KnotValidationError(f"cable({self.p},{self.q}): gcd(|p|,q) must be 1")


@dataclass(frozen=True)
class Sum:
    left: "KnotExpr"
    right: "KnotExpr"


@dataclass(frozen=True)
class WhiteheadDouble:
    n: int
    inner: "KnotExpr"


@dataclass(frozen=True)
class DoubleTwistedDouble:
    m: int
    n: int
    inner: "KnotExpr"


@dataclass(frozen=True)
class Mirror:
    inner: "KnotExpr"


KnotExpr = Union[
    Unknot, Torus, Twist, DoubleTwistKnot, Cable, Sum,
    WhiteheadDouble, DoubleTwistedDouble, Mirror,
]


def twist(n: int) -> KnotExpr:
    """Canonical twist knot: K(0) is the unknot and K(1) the trefoil T(3,2)."""
    if n == 0:
        return Unknot()
    if n == 1:
        return Torus(3, 2)
    return Twist(n)


def double_twist(m: int, n: int) -> KnotExpr:
    # J(2, 2n) = K(n) and J(k, l) = J(l, k)
    if m == 1:
        return twist(n)
    if n == 1:
        return twist(m)
    return DoubleTwistKnot(m, n)


class KnotClass(enum.Enum):
    GraphKnot = "graph"
    IntegerPseudoGraph = "integer-pseudo-graph"
    Other = "other"


def classify(e: KnotExpr) -> KnotClass:
    if isinstance(e, Twist):
        e = twist(e.n)
    if isinstance(e, DoubleTwistKnot):
        e = double_twist(e.m, e.n)
    if isinstance(e, (Unknot, Torus)):
        return KnotClass.GraphKnot
    if isinstance(e, Mirror):
        return classify(e.inner)
    if isinstance(e, Cable):
        return classify(e.inner)
    if isinstance(e, Sum):
        a, b = classify(e.left), classify(e.right)
        if a is KnotClass.GraphKnot and b is KnotClass.GraphKnot:
            return KnotClass.GraphKnot
        if KnotClass.Other in (a, b):
            return KnotClass.Other
        return KnotClass.IntegerPseudoGraph
    return KnotClass.Other


def format_expr(e: KnotExpr) -> str:
    if isinstance(e, Unknot):
        return "U"
    if isinstance(e, Torus):
        return f"T({e.p},{e.q})"
    if isinstance(e, Twist):
        return f"K({e.n})"
    if isinstance(e, DoubleTwistKnot):
        return f"J({2 * e.m},{2 * e.n})"
    if isinstance(e, Cable):
        return f"cable({e.p},{e.q}; {format_expr(e.inner)})"
    if isinstance(e, Sum):
        right = format_expr(e.right)
        # left-associative: a right-nested sum needs parentheses
        if isinstance(e.right, Sum):
            right = f"({right})"
        return f"{format_expr(e.left)} # {right}"
    if isinstance(e, WhiteheadDouble):
        return f"D[{e.n}]({format_expr(e.inner)})"
    if isinstance(e, DoubleTwistedDouble):
        return f"D[{e.m},{e.n}]({format_expr(e.inner)})"
    if isinstance(e, Mirror):
        return f"mirror({format_expr(e.inner)})"
    raise TypeError(f"not a knot expression: {e!r}")


def to_json(e: KnotExpr) -> dict:
    out: dict = {"type": type(e).__name__}
    for name, value in vars(e).items():
        out[name] = to_json(value) if not isinstance(value, int) else value
    return out


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self._skip()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def expect(self, tok: str):
        self._skip()
        if not self.src.startswith(tok, self.pos):
            found = self.src[self.pos:self.pos + 1] or "end of input"
            raise KnotSyntaxError(f"expected {tok!r}, found {found!r}", self.pos)
        self.pos += len(tok)

    def integer(self) -> int:
        self._skip()
        start = self.pos
        if self.pos < len(self.src) and self.src[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.src) and self.src[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            raise KnotSyntaxError("expected an integer", start)
        return int(self.src[start:self.pos])

    def word(self) -> str:
        self._skip()
        start = self.pos
        while self.pos < len(self.src) and self.src[self.pos].isalpha():
            self.pos += 1
        return self.src[start:self.pos]

    def expr(self) -> KnotExpr:
        node = self.term()
        while self.peek() == "#":
            self.pos += 1
            node = Sum(node, self.term())
        return node

    def _validated(self, build, start):
        try:
            return build()
        except KnotValidationError as exc:
            raise KnotValidationError(f"{exc} (at position {start})") from None

    def term(self) -> KnotExpr:
        self._skip()
        start = self.pos
        if self.peek() == "(":
            self.pos += 1
            node = self.expr()
            self.expect(")")
            return node
        name = self.word()
        if name == "U":
            return Unknot()
        if name == "T":
            self.expect("(")
            p = self.integer()
            self.expect(",")
            q = self.integer()
            self.expect(")")
            return self._validated(lambda: Torus(p, q), start)
        if name == "K":
            self.expect("(")
            n = self.integer()
            self.expect(")")
            return twist(n)
        if name == "J":
            self.expect("(")
            a = self.integer()
            self.expect(",")
            b = self.integer()
            self.expect(")")
            if a % 2 or b % 2:
                raise KnotValidationError(
                    f"J({a},{b}): both twist parameters must be even (at position {start})")
            return double_twist(a // 2, b // 2)
        if name == "cable":
            self.expect("(")
            p = self.integer()
            self.expect(",")
            q = self.integer()
            self.expect(";")
            inner = self.expr()
            self.expect(")")
            return self._validated(lambda: Cable(p, q, inner), start)
        if name == "D":
            self.expect("[")
            a = self.integer()
            b = None
            if self.peek() == ",":
                self.pos += 1
                b = self.integer()
            self.expect("]")
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            if b is None:
                return WhiteheadDouble(a, inner)
            return DoubleTwistedDouble(a, b, inner)
        if name == "mirror":
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return Mirror(inner)
        if not name:
            found = self.src[start:start + 1] or "end of input"
            raise KnotSyntaxError(f"unexpected {found!r}", start)
        raise KnotSyntaxError(f"unknown constructor {name!r}", start)


def parse(src: str) -> KnotExpr:
    p = _Parser(src)
    node = p.expr()
    p._skip()
    if p.pos != len(src):
        raise KnotSyntaxError(f"unexpected {src[p.pos]!r}", p.pos)
    return node
