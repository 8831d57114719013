"""Recursive-descent parser for polynomial and rational expressions.

Accepted syntax::

    expr    := ['-'] term (('+'|'-') term)*
    term    := factor (('*'|'/') factor)*
    factor  := base ('^' natural)?
    base    := integer | identifier | '(' expr ')'

Integer literals divided by integers give rational constants, so ``1/2*x``
and ``x/(y^2*z)`` both parse.  Whitespace is ignored and there is no
implicit multiplication.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .poly import SparsePolynomial
from .ratfunc import RationalFunction
from .scalars import QuadraticScalar, squarefree

__all__ = ["Context", "ParseError", "parse_expression"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


@dataclass
class Context:
    """Declared names for parsing.

    ``vars`` and ``diffs`` become the polynomial variables, in that order.
    ``sqrt`` optionally adjoins a square root of a square-free integer under
    ``root_name`` (``I`` for -1, ``sqrtD`` otherwise).  ``definitions`` maps
    extra names to already-built expressions.
    """

    vars: tuple = ()
    diffs: tuple = ()
    sqrt: int | None = None
    root_name: str | None = None
    definitions: dict = field(default_factory=dict)

    def __post_init__(self):
        self.vars = tuple(self.vars)
        self.diffs = tuple(self.diffs)
        for d in self.diffs:
            if not d.startswith("d"):
                raise ValueError(f"differential symbol {d!r} must begin with 'd'")
        names = self.vars + self.diffs
        if len(set(names)) != len(names):
            raise ValueError("duplicate declaration")
        if self.sqrt is not None:
            if self.sqrt == 0 or not squarefree(self.sqrt):
                raise ValueError(f"sqrt discriminant {self.sqrt} is not square-free and nonzero")
            if self.root_name is None:
                self.root_name = "I" if self.sqrt == -1 else "sqrtD"
            if self.root_name in names:
                raise ValueError(f"reserved name {self.root_name!r} clashes with a variable")

    @property
    def all_vars(self) -> tuple:
        return self.vars + self.diffs

    @property
    def printing_root(self) -> str:
        return self.root_name or "sqrtD"

    def root(self) -> QuadraticScalar:
        if self.sqrt is None:
            raise ValueError("no square root declared")
        return QuadraticScalar(0, 1, self.sqrt)

    def extended(self, **kw) -> "Context":
        data = dict(vars=self.vars, diffs=self.diffs, sqrt=self.sqrt,
                    root_name=self.root_name, definitions=dict(self.definitions))
        data.update(kw)
        return Context(**data)

    def to_string(self, expr) -> str:
        return expr.to_string(self.printing_root)


class _Parser:
    def __init__(self, text: str, ctx: Context):
        self.text = text
        self.ctx = ctx
        self.vars = ctx.all_vars
        self.tokens = self._tokenize(text)
        self.i = 0

    def _tokenize(self, text):
        out = []
        pos = 0
        n = len(text)
        while pos < n:
            m = _TOKEN.match(text, pos)
            if m is None:
                break  # only trailing whitespace left
            if m.lastindex is None:
                break
            kind = ("int", "name", "op")[m.lastindex - 1]
            value = m.group(m.lastindex)
            if kind == "op" and value not in "+-*/^()":
                raise ParseError(f"unexpected character {value!r}", m.start(m.lastindex), text)
            out.append((kind, value, m.start(m.lastindex)))
            pos = m.end()
        out.append(("end", "", len(text)))
        return out

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, v, pos = self.take()
        if v != value or kind != "op":
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", pos, self.text)

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0, self.text)
        value = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {v!r}", pos, self.text)
        return value

    def expr(self):
        negate = False
        if self.peek()[1] == "-" and self.peek()[0] == "op":
            self.take()
            negate = True
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            kind, v, _ = self.peek()
            if kind == "op" and v in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if v == "+" else acc - rhs
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, v, pos = self.peek()
            if kind == "op" and v in "*/":
                self.take()
                rhs_pos = self.peek()[2]
                rhs = self.factor()
                if v == "*":
                    acc = _mul(acc, rhs)
                else:
                    acc = _div(acc, rhs, rhs_pos, self.text)
            else:
                return acc

    def factor(self):
        base = self.base()
        kind, v, _ = self.peek()
        if kind == "op" and v == "^":
            self.take()
            kind, v, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a natural number", pos, self.text)
            base = base ** int(v)
        return base

    def base(self):
        kind, v, pos = self.take()
        if kind == "int":
            return int(v)
        if kind == "name":
            if v in self.vars:
                return SparsePolynomial.variable(v, self.vars)
            if self.ctx.sqrt is not None and v == self.ctx.root_name:
                return self.ctx.root()
            if v in self.ctx.definitions:
                return _lift(self.ctx.definitions[v], self.vars)
            raise ParseError(f"undeclared identifier {v!r}", pos, self.text)
        if kind == "op" and v == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", pos, self.text)
        raise ParseError(f"unexpected token {v!r}", pos, self.text)


def _lift(x, vars):
    if isinstance(x, SparsePolynomial):
        return x.with_vars(vars) if set(x.used_vars()) <= set(vars) else x
    if isinstance(x, RationalFunction):
        return x
    return x


def _mul(a, b):
    return a * b


def _div(a, b, pos, text):
    if isinstance(b, (int, Fraction, QuadraticScalar)):
        if not b:
            raise ParseError("division by zero", pos, text)
        if isinstance(a, int) and isinstance(b, int):
            return Fraction(a, b)
        return a * (Fraction(1, b) if isinstance(b, int) else 1 / b)
    if not b:
        raise ParseError("division by zero", pos, text)
    if isinstance(b, SparsePolynomial) and b.is_constant():
        return _div(a, b.constant_value(), pos, text)
    if isinstance(b, RationalFunction):
        return a * b.inverse()
    num = a if isinstance(a, SparsePolynomial) else SparsePolynomial.constant(a, b.vars)
    q = RationalFunction(num, b)
    return q.num if q.is_polynomial() else q


def _finish(value, vars):
    if isinstance(value, RationalFunction):
        if value.is_polynomial():
            return value.num.with_vars(vars)
        return value.with_vars(vars)
    if isinstance(value, SparsePolynomial):
        return value.with_vars(vars)
    return SparsePolynomial.constant(value, vars)


def parse_expression(text: str, context: Context | None = None, *,
                     vars: Iterable[str] = (), diffs: Iterable[str] = (),
                     sqrt: int | None = None):
    """Parse ``text`` into a SparsePolynomial or a RationalFunction.

    The result lives in the variable tuple ``context.vars + context.diffs``.
    """
    if context is None:
        context = Context(vars=tuple(vars), diffs=tuple(diffs), sqrt=sqrt)
    value = _Parser(text, context).parse()
    return _finish(value, context.all_vars)
