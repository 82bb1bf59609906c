"""Recursive-descent parser for momentum-space phase expressions.

Grammar (EBNF)::

    expression = term { ("+" | "-") term } ;
    term       = unary { ("*" | "/") unary } ;
    unary      = ("+" | "-") unary | power ;
    power      = atom [ "^" [ "+" | "-" ] integer ] ;
    atom       = number
               | variable
               | parameter
               | function "(" expression { "," expression } ")"
               | "(" expression ")" ;
    variable   = "p_x" | "p_y" | "p_z" | "p_perp" | "phi_p" ;
    function   = "sin" | "cos" | "sqrt" | "atan2" ;

Unary minus binds looser than ``^``: ``-p_x^2`` is ``-(p_x^2)``. Every input
either parses or raises :class:`PhaseSyntaxError` / :class:`UnboundParameter`;
error offsets are byte offsets into the UTF-8 encoded source.
"""

from __future__ import annotations

import math
import re
from collections.abc import Mapping
from dataclasses import dataclass

from packet_multipoles.errors import InvalidConfig, PhaseSyntaxError, UnboundParameter
from packet_multipoles.phase.ast import (
    FUNCTIONS,
    VARIABLES,
    BinOp,
    Call,
    Neg,
    Node,
    Num,
    Param,
    PhaseExpr,
    Pow,
    Var,
)

MAX_DEPTH = 100
MAX_EXPONENT_DIGITS = 6

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)

_ATOM_START = ("number", "identifier", "'('")


@dataclass(frozen=True)
class Token:
    kind: str  # "number", "ident", "op" or "eof"
    text: str
    offset: int  # character offset


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(source):
        match = _TOKEN.match(source, pos)
        if match is None:
            raise PhaseSyntaxError(
                f"Unexpected character {source[pos]!r}",
                _byte_offset(source, pos),
                ("operator", *_ATOM_START),
            )
        kind = match.lastgroup or "ws"
        if kind != "ws":
            tokens.append(Token(kind, match.group(), pos))
        pos = match.end()
    tokens.append(Token("eof", "", len(source)))
    return tokens


def _byte_offset(source: str, index: int) -> int:
    return len(source[:index].encode("utf-8"))


class _Parser:
    def __init__(self, source: str, params: Mapping[str, float]):
        self.source = source
        self.params = params
        self.tokens = tokenize(source)
        self.pos = 0
        self.depth = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != "eof":
            self.pos += 1
        return token

    def _error(self, message: str, expected: tuple[str, ...], token: Token | None = None) -> PhaseSyntaxError:
        token = token or self.current
        found = "end of input" if token.kind == "eof" else repr(token.text)
        return PhaseSyntaxError(f"{message}, found {found}", _byte_offset(self.source, token.offset), expected)

    def _expect(self, text: str) -> Token:
        if self.current.kind == "op" and self.current.text == text:
            return self._advance()
        raise self._error(f"Expected '{text}'", (f"'{text}'",))

    def _enter(self) -> None:
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise self._error("Expression nests too deeply", ())

    def parse(self) -> Node:
        if self.current.kind == "eof":
            raise self._error("Empty expression", _ATOM_START)
        node = self.expression()
        if self.current.kind != "eof":
            raise self._error("Unexpected token", ("operator", "end of input"))
        return node

    def expression(self) -> Node:
        self._enter()
        left = self.term()
        while self.current.kind == "op" and self.current.text in "+-":
            op = self._advance().text
            left = BinOp(op, left, self.term())  # type: ignore[arg-type]
        self.depth -= 1
        return left

    def term(self) -> Node:
        left = self.unary()
        while self.current.kind == "op" and self.current.text in "*/":
            op = self._advance().text
            left = BinOp(op, left, self.unary())  # type: ignore[arg-type]
        return left

    def unary(self) -> Node:
        if self.current.kind == "op" and self.current.text in "+-":
            self._enter()
            sign = self._advance().text
            operand = self.unary()
            self.depth -= 1
            return Neg(operand) if sign == "-" else operand
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if not (self.current.kind == "op" and self.current.text == "^"):
            return base
        self._advance()
        negative = False
        if self.current.kind == "op" and self.current.text in "+-":
            negative = self._advance().text == "-"
        token = self.current
        if token.kind != "number" or not token.text.isdigit() or len(token.text) > MAX_EXPONENT_DIGITS:
            raise self._error("Exponent must be an integer literal", ("integer",))
        self._advance()
        exponent = int(token.text)
        return Pow(base, -exponent if negative else exponent)

    def atom(self) -> Node:
        token = self.current
        if token.kind == "number":
            self._advance()
            value = float(token.text)
            if not math.isfinite(value):
                raise self._error("Number out of range", ("number",), token)
            return Num(value)
        if token.kind == "ident":
            return self._identifier()
        if token.kind == "op" and token.text == "(":
            self._advance()
            node = self.expression()
            self._expect(")")
            return node
        raise self._error("Expected an operand", _ATOM_START)

    def _identifier(self) -> Node:
        token = self._advance()
        name = token.text
        calls = self.current.kind == "op" and self.current.text == "("
        if name in FUNCTIONS:
            if not calls:
                raise self._error(f"Function '{name}' needs arguments", ("'('",))
            return self._call(name, token)
        if calls:
            raise self._error(f"Unknown function '{name}'", tuple(sorted(FUNCTIONS)), token)
        if name in VARIABLES:
            return Var(name)
        if name in self.params:
            return Param(name, float(self.params[name]))
        raise UnboundParameter(name, _byte_offset(self.source, token.offset))

    def _call(self, name: str, token: Token) -> Node:
        self._advance()  # "("
        args = [self.expression()]
        while self.current.kind == "op" and self.current.text == ",":
            self._advance()
            args.append(self.expression())
        self._expect(")")
        if len(args) != FUNCTIONS[name]:
            raise self._error(
                f"Function '{name}' takes {FUNCTIONS[name]} argument(s), got {len(args)}", (), token
            )
        return Call(name, tuple(args))


def parse(source: str, params: Mapping[str, float] | None = None) -> PhaseExpr:
    """Parse ``source`` with the given parameter bindings."""
    params = dict(params or {})
    for name, value in params.items():
        if not math.isfinite(float(value)):
            raise InvalidConfig(f"Parameter '{name}' must be finite")
    return PhaseExpr(root=_Parser(source, params).parse(), source=source)
