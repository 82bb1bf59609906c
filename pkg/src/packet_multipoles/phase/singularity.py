"""Syntactic classification of phase singularities on the p_z axis."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from packet_multipoles.phase.ast import BinOp, Call, Neg, Node, Num, Param, PhaseExpr, Pow, Var, contains

_AZIMUTH = frozenset({"phi_p"})
_AXIAL = frozenset({"phi_p", "p_perp"})


@dataclass(frozen=True)
class Singularity:
    kind: Literal["smooth", "vortex", "unknown"]
    ell: int = 0

    def __str__(self) -> str:
        return f"vortex({self.ell})" if self.kind == "vortex" else self.kind


def _constant(node: Node) -> float | None:
    """Fold a variable-free subtree to a number, or None."""
    match node:
        case Num(value) | Param(_, value):
            return value
        case Neg(operand):
            v = _constant(operand)
            return None if v is None else -v
        case BinOp(op, left, right):
            a, b = _constant(left), _constant(right)
            if a is None or b is None:
                return None
            if op == "+":
                return a + b
            if op == "-":
                return a - b
            if op == "*":
                return a * b
            return a / b if b != 0 else None
        case Pow(base, exponent):
            v = _constant(base)
            if v is None or (v == 0 and exponent < 0):
                return None
            try:
                return float(v**exponent)
            except OverflowError:
                return None
    return None


def _terms(node: Node, sign: float = 1.0) -> list[tuple[float, Node]]:
    """Flatten a sum into signed additive terms."""
    match node:
        case BinOp("+", left, right):
            return _terms(left, sign) + _terms(right, sign)
        case BinOp("-", left, right):
            return _terms(left, sign) + _terms(right, -sign)
        case Neg(operand):
            return _terms(operand, -sign)
    return [(sign, node)]


def _is_azimuth(node: Node) -> bool:
    """phi_p, spelled out or as atan2(p_y, p_x)."""
    match node:
        case Var("phi_p") | Call("atan2", (Var("p_y"), Var("p_x"))):
            return True
    return False


def _is_square(node: Node, name: str) -> bool:
    match node:
        case Pow(Var(base), 2):
            return base == name
        case BinOp("*", Var(a), Var(b)):
            return a == b == name
    return False


def _is_radius(node: Node) -> bool:
    """p_perp, spelled out or as sqrt(p_x^2 + p_y^2)."""
    match node:
        case Var("p_perp"):
            return True
        case Call("sqrt", (BinOp("+", left, right),)):
            return (_is_square(left, "p_x") and _is_square(right, "p_y")) or (
                _is_square(left, "p_y") and _is_square(right, "p_x")
            )
    return False


def _touches(node: Node, axial: bool) -> bool:
    """True if ``node`` depends on the azimuth (or, with ``axial``, on p_perp) anywhere.

    Any atan2 counts as azimuthal: off-axis branch points are singular too.
    """
    if _is_azimuth(node) or (axial and _is_radius(node)):
        return True
    match node:
        case Call("atan2", _):
            return True
        case Call(_, args):
            return any(_touches(a, axial) for a in args)
        case Neg(operand) | Pow(operand, _):
            return _touches(operand, axial)
        case BinOp(_, left, right):
            return _touches(left, axial) or _touches(right, axial)
    return contains(node, _AXIAL if axial else _AZIMUTH)


def _azimuth_coefficient(node: Node) -> float | None:
    """c if ``node`` is c*phi_p, phi_p*c, phi_p/c or phi_p; otherwise None."""
    if _is_azimuth(node):
        return 1.0
    match node:
        case Neg(operand):
            c = _azimuth_coefficient(operand)
            return None if c is None else -c
        case BinOp("*", left, right):
            for factor, other in ((left, right), (right, left)):
                c = _constant(factor)
                if c is not None:
                    inner = _azimuth_coefficient(other)
                    if inner is not None:
                        return c * inner
            return None
        case BinOp("/", left, right):
            c = _constant(right)
            inner = _azimuth_coefficient(left)
            if c is None or c == 0 or inner is None:
                return None
            return inner / c
    return None


def _axial_in_denominator(node: Node) -> bool:
    match node:
        case BinOp("/", left, right):
            return _touches(right, axial=True) or _axial_in_denominator(left) or _axial_in_denominator(right)
        case Pow(base, exponent):
            return (exponent < 0 and _touches(base, axial=True)) or _axial_in_denominator(base)
        case BinOp(_, left, right):
            return _axial_in_denominator(left) or _axial_in_denominator(right)
        case Neg(operand):
            return _axial_in_denominator(operand)
        case Call(_, args):
            return any(_axial_in_denominator(a) for a in args)
    return False


def classify_singularity(e: PhaseExpr) -> Singularity:
    """smooth, vortex(l) for an additive integer multiple of the azimuth, or unknown."""
    winding = 0.0
    rest: list[Node] = []
    for sign, term in _terms(e.root):
        c = _azimuth_coefficient(term)
        if c is None:
            rest.append(term)
        else:
            winding += sign * c
    if any(_touches(t, axial=False) or _axial_in_denominator(t) for t in rest):
        return Singularity("unknown")
    if winding == 0.0:
        return Singularity("smooth")
    if not math.isfinite(winding) or abs(winding - round(winding)) > 1e-12:
        return Singularity("unknown")
    return Singularity("vortex", int(round(winding)))
