"""Ideal expressions over the variables x1..xn.

Grammar::

    expr     := term ('+' term)*
    term     := factor ('*' factor)*
    factor   := atom ('^' INT)?
    atom     := '(' expr ')' | 'M(' INT ')' | 'MP(' INT (',' INT)* ')' | monomial
    monomial := var ('^' INT)? ('*' var ('^' INT)?)*

A monomial literal is read greedily, so ``x1*x2^3`` is one principal
generator; ``+`` is the ideal sum, ``*`` the ideal product and ``^`` the
ideal power.  ``M(q)`` is the q-th power of the homogeneous maximal ideal
and ``MP(a1, ..., an)`` is the pure-power ideal (x1^a1, ..., xn^an).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .monomial import (
    MonomialIdeal,
    boxed_ideal,
    format_monomial,
    max_ideal_power,
    power,
    product,
    sum_ideals,
    unit_ideal,
)

__all__ = [
    "ParseError",
    "evaluate",
    "format_expression",
    "format_ideal",
    "parse_expression",
    "parse_ideal",
]


class ParseError(ValueError):
    """Malformed or inconsistent ideal expression, with a 1-based position."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.column, self.message = line, col, message
        super().__init__(f"line {line}, column {col}: {message}")


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class MonomialLit:
    exps: tuple[int, ...]


@dataclass(frozen=True)
class MaxPower:
    q: int


@dataclass(frozen=True)
class PurePowers:
    exps: tuple[int, ...]


@dataclass(frozen=True)
class Sum:
    terms: tuple["Node", ...]


@dataclass(frozen=True)
class Product:
    factors: tuple["Node", ...]


@dataclass(frozen=True)
class Power:
    base: "Node"
    exponent: int


Node = Union[MonomialLit, MaxPower, PurePowers, Sum, Product, Power]


# ---------------------------------------------------------------------------
# lexer

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<mp>MP\()
  | (?P<m>M\()
  | (?P<var>x\d+)
  | (?P<int>\d+)
  | (?P<op>[+*^(),])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = mt.lastgroup
        if kind != "ws":
            out.append(Token(kind, mt.group(kind), pos))
        pos = mt.end()
    out.append(Token("end", "", len(text)))
    return out


# ---------------------------------------------------------------------------
# recursive descent


class _Parser:
    def __init__(self, text: str, nvars: int):
        self.text = text
        self.n = nvars
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, self.text, tok.pos)

    def at_op(self, ch: str) -> bool:
        return self.tok.kind == "op" and self.tok.value == ch

    def expect_op(self, ch: str) -> Token:
        if not self.at_op(ch):
            raise self.error(f"expected {ch!r}, found {self._describe()}")
        return self.advance()

    def advance(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def _describe(self) -> str:
        t = self.tok
        return "end of input" if t.kind == "end" else repr(t.value)

    def integer(self) -> int:
        if self.tok.kind != "int":
            raise self.error(f"expected an integer, found {self._describe()}")
        return int(self.advance().value)

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self._describe()}")
        return node

    def expr(self) -> Node:
        terms = [self.term()]
        while self.at_op("+"):
            self.advance()
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> Node:
        factors = [self.factor()]
        while self.at_op("*"):
            self.advance()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self) -> Node:
        node = self.atom()
        if self.at_op("^"):
            self.advance()
            node = Power(node, self.integer())
        return node

    def atom(self) -> Node:
        tok = self.tok
        if self.at_op("("):
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        if tok.kind == "m":
            self.advance()
            q = self.integer()
            self.expect_op(")")
            return MaxPower(q)
        if tok.kind == "mp":
            self.advance()
            exps = [self.integer()]
            while self.at_op(","):
                self.advance()
                exps.append(self.integer())
            self.expect_op(")")
            if len(exps) != self.n:
                raise self.error(f"MP has {len(exps)} exponents but {self.n} variables are declared", tok)
            if any(a < 1 for a in exps):
                raise self.error("MP exponents must be positive", tok)
            return PurePowers(tuple(exps))
        if tok.kind == "var":
            return self.monomial()
        raise self.error(f"expected a monomial, M(, MP( or '(', found {self._describe()}")

    def variable(self) -> int:
        tok = self.advance()
        idx = int(tok.value[1:])
        if not 1 <= idx <= self.n:
            raise self.error(f"undeclared variable {tok.value} (declared x1..x{self.n})", tok)
        return idx - 1

    def monomial(self) -> MonomialLit:
        exps = [0] * self.n
        while True:
            i = self.variable()
            e = 1
            if self.at_op("^"):
                self.advance()
                e = self.integer()
            exps[i] += e
            # greedy: keep going only while '*' is followed by another variable
            if self.at_op("*") and self.toks[self.i + 1].kind == "var":
                self.advance()
                continue
            return MonomialLit(tuple(exps))


def parse_expression(text: str, nvars: int) -> Node:
    if nvars < 1:
        raise ParseError("at least one variable must be declared", text, 0)
    return _Parser(text, nvars).parse()


# ---------------------------------------------------------------------------
# evaluation and printing


def evaluate(node: Node, nvars: int) -> MonomialIdeal:
    if isinstance(node, MonomialLit):
        return MonomialIdeal(nvars, [list(node.exps)])
    if isinstance(node, MaxPower):
        return unit_ideal(nvars) if node.q == 0 else max_ideal_power(nvars, node.q)
    if isinstance(node, PurePowers):
        return boxed_ideal(node.exps)
    if isinstance(node, Sum):
        out = evaluate(node.terms[0], nvars)
        for t in node.terms[1:]:
            out = sum_ideals(out, evaluate(t, nvars))
        return out
    if isinstance(node, Product):
        out = evaluate(node.factors[0], nvars)
        for f in node.factors[1:]:
            out = product(out, evaluate(f, nvars))
        return out
    if isinstance(node, Power):
        return power(evaluate(node.base, nvars), node.exponent)
    raise TypeError(f"not an expression node: {node!r}")


def parse_ideal(text: str, nvars: int) -> MonomialIdeal:
    """Parse and evaluate to a minimally generated ideal."""
    return evaluate(parse_expression(text, nvars), nvars)


def _names(n):
    return [f"x{i + 1}" for i in range(n)]


def _format_monomial_lit(exps) -> str:
    if not any(exps):
        # the grammar has no literal 1; x^0 is not expressible either
        return "M(0)"
    return format_monomial(exps, _names(len(exps)))


def format_expression(node: Node) -> str:
    """Fully parenthesized where precedence requires; re-parses to the same tree."""
    if isinstance(node, MonomialLit):
        return _format_monomial_lit(node.exps)
    if isinstance(node, MaxPower):
        return f"M({node.q})"
    if isinstance(node, PurePowers):
        return "MP(" + ",".join(map(str, node.exps)) + ")"
    if isinstance(node, Sum):
        return " + ".join(format_expression(t) for t in node.terms)
    if isinstance(node, Product):
        parts = []
        for f in node.factors:
            s = format_expression(f)
            parts.append(f"({s})" if isinstance(f, (Sum, MonomialLit)) else s)
        return " * ".join(parts)
    if isinstance(node, Power):
        s = format_expression(node.base)
        if not isinstance(node.base, (MaxPower, PurePowers)):
            s = f"({s})"
        return f"{s}^{node.exponent}"
    raise TypeError(f"not an expression node: {node!r}")


def format_ideal(I: MonomialIdeal) -> str:
    """Sum of generator literals in the input grammar."""
    if I.is_zero:
        raise ValueError("the zero ideal has no expression in the input grammar")
    return " + ".join(_format_monomial_lit(g) for g in I.gens.tolist())
