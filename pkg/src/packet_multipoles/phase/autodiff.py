"""Forward-mode differentiation of phase expressions.

Every node evaluates to a value array and a 3-component tangent array
(d/dp_x, d/dp_y, d/dp_z) in one pass over the tree. Inputs are numpy arrays,
so a whole quadrature rule is evaluated at once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from packet_multipoles.core.tensors import Vec3
from packet_multipoles.errors import SingularPoint
from packet_multipoles.phase.ast import BinOp, Call, Neg, Node, Num, Param, PhaseExpr, Pow, Var

TINY = 1e-300

Array = NDArray[np.float64]


@dataclass(frozen=True)
class PhaseGradient:
    value: float
    grad: Vec3


@dataclass(frozen=True)
class _Dual:
    value: Array
    grad: Array  # shape (3, *value.shape)


class _Evaluator:
    def __init__(self, px: Array, py: Array, pz: Array, derivatives: bool):
        self.px, self.py, self.pz = np.broadcast_arrays(
            np.asarray(px, dtype=float), np.asarray(py, dtype=float), np.asarray(pz, dtype=float)
        )
        self.shape = self.px.shape
        self.derivatives = derivatives

    def _const(self, value: float) -> _Dual:
        return _Dual(np.full(self.shape, value), np.zeros((3, *self.shape)))

    def _singular(self, mask: Array, what: str) -> None:
        if self.derivatives and np.any(mask):
            raise SingularPoint(f"{what} is not differentiable at {int(np.count_nonzero(mask))} point(s)")

    def _variable(self, name: str) -> _Dual:
        zeros = np.zeros(self.shape)
        ones = np.ones(self.shape)
        px, py = self.px, self.py
        match name:
            case "p_x":
                return _Dual(px, np.stack([ones, zeros, zeros]))
            case "p_y":
                return _Dual(py, np.stack([zeros, ones, zeros]))
            case "p_z":
                return _Dual(self.pz, np.stack([zeros, zeros, ones]))
            case "p_perp":
                rho = np.hypot(px, py)
                self._singular(rho < TINY, "p_perp at p_perp = 0")
                safe = np.where(rho < TINY, 1.0, rho)
                return _Dual(rho, np.stack([px / safe, py / safe, zeros]))
            case "phi_p":
                r2 = px * px + py * py
                self._singular(r2 < TINY, "phi_p at p_perp = 0")
                safe = np.where(r2 < TINY, 1.0, r2)
                return _Dual(np.arctan2(py, px), np.stack([-py / safe, px / safe, zeros]))
        raise ValueError(f"unknown variable {name}")

    def run(self, node: Node) -> _Dual:
        match node:
            case Num(value) | Param(_, value):
                return self._const(value)
            case Var(name):
                return self._variable(name)
            case Neg(operand):
                a = self.run(operand)
                return _Dual(-a.value, -a.grad)
            case BinOp(op, left, right):
                return self._binary(op, self.run(left), self.run(right))
            case Pow(base, exponent):
                return self._power(self.run(base), exponent)
            case Call(func, args):
                return self._call(func, [self.run(a) for a in args])
        raise TypeError(f"not a phase node: {node!r}")

    def _binary(self, op: str, a: _Dual, b: _Dual) -> _Dual:
        if op == "+":
            return _Dual(a.value + b.value, a.grad + b.grad)
        if op == "-":
            return _Dual(a.value - b.value, a.grad - b.grad)
        if op == "*":
            return _Dual(a.value * b.value, a.grad * b.value + a.value * b.grad)
        if np.any(np.abs(b.value) < TINY):
            raise SingularPoint("division by zero in phase expression")
        value = a.value / b.value
        return _Dual(value, (a.grad - value * b.grad) / b.value)

    def _power(self, a: _Dual, n: int) -> _Dual:
        if n == 0:
            return self._const(1.0)
        if n < 0 and np.any(np.abs(a.value) < TINY):
            raise SingularPoint("negative power of zero in phase expression")
        lower = np.power(a.value, n - 1)
        return _Dual(lower * a.value, n * lower * a.grad)

    def _call(self, func: str, args: list[_Dual]) -> _Dual:
        if func == "sin":
            (a,) = args
            return _Dual(np.sin(a.value), np.cos(a.value) * a.grad)
        if func == "cos":
            (a,) = args
            return _Dual(np.cos(a.value), -np.sin(a.value) * a.grad)
        if func == "sqrt":
            (a,) = args
            if np.any(a.value < 0.0):
                raise SingularPoint("sqrt of a negative value in phase expression")
            self._singular(a.value < TINY, "sqrt at 0")
            root = np.sqrt(a.value)
            safe = np.where(root < TINY, 1.0, root)
            return _Dual(root, a.grad / (2.0 * safe))
        if func == "atan2":
            y, x = args
            r2 = y.value * y.value + x.value * x.value
            self._singular(r2 < TINY, "atan2(0, 0)")
            safe = np.where(r2 < TINY, 1.0, r2)
            return _Dual(np.arctan2(y.value, x.value), (x.value * y.grad - y.value * x.grad) / safe)
        raise ValueError(f"unknown function {func}")


def evaluate(
    e: PhaseExpr, points: Array, *, derivatives: bool = True
) -> tuple[Array, Array]:
    """Value and gradient of ``e`` at ``points`` of shape ``(3, ...)``.

    Returns ``(value, grad)`` with ``grad`` of shape ``(3, ...)``.
    """
    with np.errstate(over="ignore", invalid="ignore"):
        dual = _Evaluator(points[0], points[1], points[2], derivatives).run(e.root)
    return dual.value, dual.grad


def eval_grad(e: PhaseExpr, p: Vec3) -> PhaseGradient:
    """Value and exact gradient of the phase at a single momentum."""
    value, grad = evaluate(e, p.as_array())
    return PhaseGradient(value=float(value), grad=Vec3.from_array(grad))


def central_difference(e: PhaseExpr, points: Array, h: float) -> Array:
    """Central-difference gradient, used as a cross-check of ``evaluate``."""
    points = np.asarray(points, dtype=float)
    grad = np.empty_like(points)
    for a in range(3):
        step = np.zeros_like(points)
        step[a] = h
        plus, _ = evaluate(e, points + step, derivatives=False)
        minus, _ = evaluate(e, points - step, derivatives=False)
        grad[a] = (plus - minus) / (2.0 * h)
    return grad
