"""
Profile expressions.

A small Pratt (top-down operator precedence) parser for index profiles
written as text, e.g. "2 + cos(2*pi*x)". The grammar has decimal literals,
the variable `x`, the constant `pi`, the binary operators + - * / ^ (with ^
right-associative and binding tighter than unary minus), parentheses, and the
functions sin, cos, exp, sqrt and abs. Parsing produces a tree of nodes that
evaluate on numpy arrays and pretty-print back to text that re-parses to the
same tree.
"""

import logging
import math
import re
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Union

import numpy as np

from pcband.constants import FD_STEP_FRACTION
from pcband.exceptions import ProfileSyntaxError, UnknownIdentifierError
from pcband.profile.base import Profile, detect_symmetry

logger = logging.getLogger(__name__)

FUNCTIONS: Dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "sqrt": np.sqrt,
    "abs": np.abs,
}
CONSTANTS: Dict[str, float] = {"pi": math.pi}
VARIABLE = "x"

_TOKEN_PATTERN = re.compile(
    r"\s*(?:(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)

Value = Union[float, np.ndarray]


class Node:
    """Expression tree node."""

    def evaluate(self, x: np.ndarray) -> Value:
        raise NotImplementedError

    def pretty(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Number(Node):
    value: float

    def evaluate(self, x: np.ndarray) -> Value:
        return self.value

    def pretty(self) -> str:
        return repr(self.value)


@dataclass(frozen=True)
class Constant(Node):
    name: str

    def evaluate(self, x: np.ndarray) -> Value:
        return CONSTANTS[self.name]

    def pretty(self) -> str:
        return self.name


@dataclass(frozen=True)
class Variable(Node):
    def evaluate(self, x: np.ndarray) -> Value:
        return x

    def pretty(self) -> str:
        return VARIABLE


@dataclass(frozen=True)
class Negate(Node):
    operand: Node

    def evaluate(self, x: np.ndarray) -> Value:
        return -self.operand.evaluate(x)

    def pretty(self) -> str:
        return f"(-{self.operand.pretty()})"


@dataclass(frozen=True)
class BinaryOp(Node):
    op: str
    left: Node
    right: Node

    def evaluate(self, x: np.ndarray) -> Value:
        a = self.left.evaluate(x)
        b = self.right.evaluate(x)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        if self.op == "/":
            return np.divide(a, b)
        return np.power(a, b)

    def pretty(self) -> str:
        return f"({self.left.pretty()} {self.op} {self.right.pretty()})"


@dataclass(frozen=True)
class Call(Node):
    function: str
    argument: Node

    def evaluate(self, x: np.ndarray) -> Value:
        return FUNCTIONS[self.function](self.argument.evaluate(x))

    def pretty(self) -> str:
        return f"{self.function}({self.argument.pretty()})"


@dataclass(frozen=True)
class Token:
    kind: str  # number | name | op | end
    text: str
    position: int


# left binding powers
_BINARY_POWER = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 30}
_PREFIX_POWER = 25


def tokenize(text: str) -> Iterator[Token]:
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN_PATTERN.match(text, pos)
        if match is None or match.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ProfileSyntaxError(f"Unexpected character {text[bad]!r}", text, bad)
        kind = match.lastgroup or "op"
        yield Token(kind, match.group(kind), match.start(kind))
        pos = match.end()
    yield Token("end", "", len(text))


class ExpressionParser:
    """Pratt parser over the token stream of one expression."""

    def __init__(self, text: str):
        self.text = text
        self._tokens: List[Token] = list(tokenize(text))
        self._index = 0

    @property
    def token(self) -> Token:
        return self._tokens[self._index]

    def _advance(self) -> Token:
        tok = self._tokens[self._index]
        if tok.kind != "end":
            self._index += 1
        return tok

    def _error(self, message: str, position: int) -> ProfileSyntaxError:
        return ProfileSyntaxError(message, self.text, position)

    def parse(self) -> Node:
        if self.token.kind == "end":
            raise self._error("Empty expression", 0)
        node = self.expression(0)
        if self.token.kind != "end":
            raise self._error(f"Unexpected token {self.token.text!r}", self.token.position)
        return node

    def expression(self, rbp: int) -> Node:
        left = self._nud(self._advance())
        while self.token.kind == "op" and rbp < _BINARY_POWER.get(self.token.text, 0):
            left = self._led(self._advance(), left)
        return left

    def _nud(self, tok: Token) -> Node:
        if tok.kind == "number":
            return Number(float(tok.text))
        if tok.kind == "name":
            return self._name(tok)
        if tok.kind == "op" and tok.text == "(":
            inner = self.expression(0)
            self._expect_close(tok)
            return inner
        if tok.kind == "op" and tok.text == "-":
            return Negate(self.expression(_PREFIX_POWER))
        if tok.kind == "op" and tok.text == "+":
            return self.expression(_PREFIX_POWER)
        if tok.kind == "end":
            raise self._error("Unexpected end of expression", tok.position)
        raise self._error(f"Unexpected token {tok.text!r}", tok.position)

    def _led(self, tok: Token, left: Node) -> Node:
        power = _BINARY_POWER[tok.text]
        if tok.text == "^":
            # right associative
            right = self.expression(power - 1)
        else:
            right = self.expression(power)
        return BinaryOp(tok.text, left, right)

    def _name(self, tok: Token) -> Node:
        name = tok.text
        if name in FUNCTIONS:
            opening = self.token
            if not (opening.kind == "op" and opening.text == "("):
                raise self._error(f"Function {name!r} needs a parenthesized argument", tok.position)
            self._advance()
            argument = self.expression(0)
            self._expect_close(opening)
            return Call(name, argument)
        if name == VARIABLE:
            return Variable()
        if name in CONSTANTS:
            return Constant(name)
        known = ", ".join([VARIABLE] + sorted(CONSTANTS) + sorted(FUNCTIONS))
        raise UnknownIdentifierError(
            f"Unknown identifier {name!r} (known: {known})", self.text, tok.position
        )

    def _expect_close(self, opening: Token) -> None:
        if self.token.kind == "op" and self.token.text == ")":
            self._advance()
            return
        raise self._error("Unclosed parenthesis", opening.position)


def parse_expression(text: str) -> Node:
    """Parse text into an expression tree."""
    return ExpressionParser(text).parse()


def parse_profile_expr(text: str, period: float = 1.0) -> Profile:
    """
    Build a profile from an index expression in x.

    x is wrapped into [-L/2, L/2) before evaluation. The derivative is a
    central difference with step 1e-6·L. Symmetry is detected by sampling.
    Expression profiles are treated as smooth: no jump detection is attempted.

    Raises:
        ProfileSyntaxError: Malformed text (position-annotated)
        UnknownIdentifierError: Identifier other than x, pi and the known functions
        NonPositiveIndexError: n <= 0 (or not finite) on the 1024-point sample grid
    """
    node = parse_expression(text)
    half = 0.5 * period
    h = FD_STEP_FRACTION * period

    def n_func(x: np.ndarray) -> np.ndarray:
        with np.errstate(all="ignore"):
            return np.asarray(node.evaluate(x), dtype=float) + np.zeros(np.shape(x))

    def wrap(x: np.ndarray) -> np.ndarray:
        return x - period * np.floor((x + half) / period)

    def dn_func(x: np.ndarray) -> np.ndarray:
        return (n_func(wrap(x + h)) - n_func(wrap(x - h))) / (2.0 * h)

    profile = Profile(
        n_func=n_func,
        dn_func=dn_func,
        period=period,
        symmetric=detect_symmetry(n_func, period),
        name=text,
        expression=node.pretty(),
    )
    logger.debug(f"Parsed profile expression {text!r} (symmetric={profile.symmetric})")
    return profile
