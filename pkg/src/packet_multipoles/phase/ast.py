"""Phase expression tree.

Nodes are immutable; structural equality is dataclass equality, which the
parse/print round trip relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

VARIABLES = ("p_x", "p_y", "p_z", "p_perp", "phi_p")
FUNCTIONS = {"sin": 1, "cos": 1, "sqrt": 1, "atan2": 2}

BinaryOp = Literal["+", "-", "*", "/"]


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Param:
    """A named parameter, bound to its value at parse time."""

    name: str
    value: float


@dataclass(frozen=True)
class Neg:
    operand: Node


@dataclass(frozen=True)
class BinOp:
    op: BinaryOp
    left: Node
    right: Node


@dataclass(frozen=True)
class Pow:
    base: Node
    exponent: int


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple[Node, ...]


Node = Num | Var | Param | Neg | BinOp | Pow | Call


@dataclass(frozen=True)
class PhaseExpr:
    """A parsed phase phi(p) together with its source text."""

    root: Node
    source: str

    def __str__(self) -> str:
        return to_source(self.root)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PhaseExpr) and self.root == other.root

    def __hash__(self) -> int:
        return hash(self.root)


def to_source(node: Node) -> str:
    """Print ``node`` back to grammar text. Composite nodes are parenthesized."""
    match node:
        case Num(value):
            text = repr(float(value))
            return text if value >= 0 else f"({text})"
        case Var(name) | Param(name, _):
            return name
        case Neg(operand):
            return f"(-{to_source(operand)})"
        case BinOp(op, left, right):
            return f"({to_source(left)} {op} {to_source(right)})"
        case Pow(base, exponent):
            return f"({to_source(base)}^{exponent})"
        case Call(func, args):
            return f"{func}({', '.join(to_source(a) for a in args)})"
    raise TypeError(f"not a phase node: {node!r}")


def contains(node: Node, names: frozenset[str]) -> bool:
    """True if any ``Var`` in ``node`` is one of ``names``."""
    match node:
        case Var(name):
            return name in names
        case Neg(operand):
            return contains(operand, names)
        case BinOp(_, left, right):
            return contains(left, names) or contains(right, names)
        case Pow(base, _):
            return contains(base, names)
        case Call(_, args):
            return any(contains(a, names) for a in args)
    return False
