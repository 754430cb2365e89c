"""Concrete syntax for k-roots and monomials.

    expr     := factor+ | monomial
    factor   := '(' term ('+' | '-') term ')'
    term     := ['-'] 'x' INT
    monomial := 'x' INT ('*' 'x' INT)*

Whitespace is ignored everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

from kroots.monomials import Monomial, ParameterError, check_monomial
from kroots.roots import KRoot, NotAKRootError, normalize


class ExpressionSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class FactorNode:
    sign1: int
    idx1: int
    sign2: int
    idx2: int


@dataclass(frozen=True)
class RootExpr:
    factors: tuple[FactorNode, ...]


@dataclass(frozen=True)
class MonomialExpr:
    indices: tuple[int, ...]


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise ExpressionSyntaxError(f"expected {ch!r}, found {found!r}", self.pos)
        self.pos += 1

    def variable(self) -> int:
        self.expect("x")
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ExpressionSyntaxError("expected a variable index", start)
        return int(self.text[start:self.pos])

    def term(self) -> tuple[int, int]:
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        return sign, self.variable()


def parse_expression(text: str) -> RootExpr | MonomialExpr:
    lex = _Lexer(text)
    if lex.peek() == "x":
        indices = [lex.variable()]
        while lex.peek() == "*":
            lex.pos += 1
            indices.append(lex.variable())
        if lex.peek():
            raise ExpressionSyntaxError(f"unexpected {lex.peek()!r}", lex.pos)
        return MonomialExpr(tuple(indices))
    factors = []
    while lex.peek():
        lex.expect("(")
        s1, i1 = lex.term()
        op = lex.peek()
        if not op or op not in "+-":
            raise ExpressionSyntaxError(f"expected '+' or '-', found {op or 'end of input'!r}", lex.pos)
        lex.pos += 1
        s2, i2 = lex.term()
        if op == "-":
            s2 = -s2
        lex.expect(")")
        factors.append(FactorNode(s1, i1, s2, i2))
    if not factors:
        raise ExpressionSyntaxError("empty expression", lex.pos)
    return RootExpr(tuple(factors))


def elaborate_root(expr: RootExpr, n: int, k: int | None = None) -> KRoot:
    """Turn a parse tree into a normalized k-root, checking indices against n."""
    for f in expr.factors:
        for idx in (f.idx1, f.idx2):
            if not 1 <= idx <= n:
                raise ParameterError(f"index {idx} outside [1, {n}]")
    if k is not None and len(expr.factors) != k:
        raise ParameterError(f"expected {k} factors, got {len(expr.factors)}")
    return normalize([(f.sign1 * f.idx1, f.sign2 * f.idx2) for f in expr.factors], n)


def parse_kroot(text: str, n: int, k: int | None = None) -> KRoot:
    expr = parse_expression(text)
    if not isinstance(expr, RootExpr):
        raise ExpressionSyntaxError("expected a product of factors", 0)
    return elaborate_root(expr, n, k)


def parse_monomial(text: str, n: int, k: int | None = None) -> Monomial:
    expr = parse_expression(text)
    if not isinstance(expr, MonomialExpr):
        raise ExpressionSyntaxError("expected a monomial such as x1*x3", 0)
    if len(set(expr.indices)) != len(expr.indices):
        raise NotAKRootError(f"repeated index in monomial {text!r}")
    I = tuple(sorted(expr.indices))
    return check_monomial(I, n, len(I) if k is None else k)
