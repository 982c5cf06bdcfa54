"""Expression language for Dist(SL2) elements.

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' NAT)?
    atom   := 'E[' NAT ']' | 'F[' NAT ']' | 'H' | 'D[' INT ']'
            | 'binom(H' (('+' | '-') NAT)? ',' NAT ')' | INT | '(' expr ')'

Multiplication is always explicit, which keeps the grammar LL(1).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .norm import delta_dist
from .pbw import DistElem, binom_shift


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.line, self.column, self.pos = line, col, pos


# --------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Gen:
    kind: str  # "E" | "F" | "D"
    index: int


@dataclass(frozen=True)
class BinomH:
    shift: int
    r: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int


Expr = Union[Num, Gen, BinomH, BinOp, Pow]


# --------------------------------------------------------------------------
# lexer

_TOKEN = re.compile(r"\s*(?:(\d+)|(binom)|([EFHD])|(.))", re.S)


@dataclass(frozen=True)
class Token:
    kind: str  # NUM, NAME, GEN, SYM, END
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1):
            tokens.append(Token("NUM", m.group(1), start))
        elif m.group(2):
            tokens.append(Token("NAME", "binom", start))
        elif m.group(3):
            tokens.append(Token("GEN", m.group(3), start))
        elif m.group(4):
            ch = m.group(4)
            if ch not in "+-*^()[],":
                raise ParseError(f"unexpected character {ch!r}", text, start)
            tokens.append(Token("SYM", ch, start))
        pos = m.end()
    tokens.append(Token("END", "", len(text)))
    return tokens


# --------------------------------------------------------------------------
# parser

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str):
        t = self.tok
        found = "end of input" if t.kind == "END" else repr(t.text)
        raise ParseError(f"{message}, found {found}", self.text, t.pos)

    def take(self, sym: str) -> Token:
        if self.tok.text != sym or self.tok.kind not in ("SYM", "GEN", "NAME"):
            self.error(f"expected {sym!r}")
        t = self.tok
        self.i += 1
        return t

    def nat(self) -> int:
        if self.tok.kind != "NUM":
            self.error("expected a natural number")
        v = int(self.tok.text)
        self.i += 1
        return v

    def integer(self) -> int:
        sign = 1
        if self.tok.kind == "SYM" and self.tok.text == "-":
            sign = -1
            self.i += 1
        return sign * self.nat()

    def expr(self) -> Expr:
        node = self.term()
        while self.tok.kind == "SYM" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.tok.kind == "SYM" and self.tok.text == "*":
            self.i += 1
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> Expr:
        node = self.atom()
        if self.tok.kind == "SYM" and self.tok.text == "^":
            self.i += 1
            node = Pow(node, self.nat())
        return node

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "NUM":
            return Num(self.nat())
        if t.kind == "GEN":
            self.i += 1
            if t.text == "H":
                return BinomH(0, 1)
            self.take("[")
            idx = self.integer() if t.text == "D" else self.nat()
            self.take("]")
            return Gen(t.text, idx)
        if t.kind == "NAME":
            self.i += 1
            self.take("(")
            self.take("H")
            shift = 0
            if self.tok.kind == "SYM" and self.tok.text in "+-":
                sign = 1 if self.tok.text == "+" else -1
                self.i += 1
                shift = sign * self.nat()
            self.take(",")
            r = self.nat()
            self.take(")")
            return BinomH(shift, r)
        if t.kind == "SYM" and t.text == "(":
            self.i += 1
            node = self.expr()
            self.take(")")
            return node
        self.error("expected an atom")


def parse(text: str) -> Expr:
    p = _Parser(text)
    node = p.expr()
    if p.tok.kind != "END":
        p.error("expected an operator or end of input")
    return node


def elaborate(node: Expr, p: int) -> DistElem:
    if isinstance(node, Num):
        return DistElem.scalar(node.value, p)
    if isinstance(node, Gen):
        if node.kind == "E":
            return DistElem.E(node.index, p)
        if node.kind == "F":
            return DistElem.F(node.index, p)
        return delta_dist(node.index, p)
    if isinstance(node, BinomH):
        return binom_shift(node.shift, node.r, p).to_dist()
    if isinstance(node, Pow):
        return elaborate(node.base, p) ** node.exp
    left, right = elaborate(node.left, p), elaborate(node.right, p)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    return left * right


def evaluate(text: str, p: int) -> DistElem:
    return elaborate(parse(text), p)
