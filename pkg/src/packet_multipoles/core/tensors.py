"""3-vectors and symmetric 3x3 tensors in natural units."""

from __future__ import annotations

import math
from collections.abc import Sequence
from typing import Any

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from packet_multipoles.errors import NotTraceless

TRACE_TOLERANCE = 1e-12


class Vec3(BaseModel):
    """Cartesian 3-vector. Accepts ``[x, y, z]`` as input."""

    model_config = ConfigDict(frozen=True)

    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @model_validator(mode="before")
    @classmethod
    def _from_sequence(cls, data: Any) -> Any:
        if isinstance(data, Sequence | np.ndarray) and not isinstance(data, str):
            values = [float(v) for v in data]
            if len(values) != 3:
                raise ValueError(f"Vec3 needs 3 components, got {len(values)}")
            return {"x": values[0], "y": values[1], "z": values[2]}
        return data

    @field_validator("x", "y", "z")
    @classmethod
    def _finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("Vec3 components must be finite")
        return v

    @classmethod
    def from_array(cls, a: NDArray[np.float64] | Sequence[float]) -> Vec3:
        return cls(x=float(a[0]), y=float(a[1]), z=float(a[2]))

    def as_array(self) -> NDArray[np.float64]:
        return np.array([self.x, self.y, self.z], dtype=float)

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def __add__(self, other: Vec3) -> Vec3:
        return Vec3(x=self.x + other.x, y=self.y + other.y, z=self.z + other.z)

    def __sub__(self, other: Vec3) -> Vec3:
        return Vec3(x=self.x - other.x, y=self.y - other.y, z=self.z - other.z)

    def scaled(self, factor: float) -> Vec3:
        return Vec3(x=factor * self.x, y=factor * self.y, z=factor * self.z)

    def dot(self, other: Vec3) -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: Vec3) -> Vec3:
        return Vec3(
            x=self.y * other.z - self.z * other.y,
            y=self.z * other.x - self.x * other.z,
            z=self.x * other.y - self.y * other.x,
        )


ZERO = Vec3()


class SymTensor3(BaseModel):
    """Symmetric 3x3 tensor stored as its six independent components."""

    model_config = ConfigDict(frozen=True)

    xx: float = 0.0
    yy: float = 0.0
    zz: float = 0.0
    xy: float = 0.0
    xz: float = 0.0
    yz: float = 0.0

    @field_validator("xx", "yy", "zz", "xy", "xz", "yz")
    @classmethod
    def _finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("tensor components must be finite")
        return v

    @classmethod
    def diag(cls, a: float, b: float, c: float) -> SymTensor3:
        return cls(xx=a, yy=b, zz=c)

    @classmethod
    def from_matrix(cls, m: NDArray[np.float64] | Sequence[Sequence[float]]) -> SymTensor3:
        """Symmetrize ``m`` and keep the six independent components."""
        a = np.asarray(m, dtype=float)
        s = 0.5 * (a + a.T)
        return cls(
            xx=float(s[0, 0]),
            yy=float(s[1, 1]),
            zz=float(s[2, 2]),
            xy=float(s[0, 1]),
            xz=float(s[0, 2]),
            yz=float(s[1, 2]),
        )

    @classmethod
    def traceless(cls, m: NDArray[np.float64] | Sequence[Sequence[float]]) -> SymTensor3:
        """Build a tensor that must already be traceless to 1e-12 relative."""
        t = cls.from_matrix(m)
        if abs(t.trace()) > TRACE_TOLERANCE * max(t.norm(), 1e-300):
            raise NotTraceless(f"trace {t.trace():.3e} exceeds tolerance for norm {t.norm():.3e}")
        return t

    def as_matrix(self) -> NDArray[np.float64]:
        return np.array(
            [
                [self.xx, self.xy, self.xz],
                [self.xy, self.yy, self.yz],
                [self.xz, self.yz, self.zz],
            ],
            dtype=float,
        )

    def components(self) -> tuple[float, float, float, float, float, float]:
        """Fixed component order used by reports: xx, yy, zz, xy, xz, yz."""
        return (self.xx, self.yy, self.zz, self.xy, self.xz, self.yz)

    def trace(self) -> float:
        return self.xx + self.yy + self.zz

    def norm(self) -> float:
        """Frobenius norm."""
        return float(np.linalg.norm(self.as_matrix()))

    def scaled(self, factor: float) -> SymTensor3:
        return SymTensor3(**{k: factor * v for k, v in self.model_dump().items()})

    def __add__(self, other: SymTensor3) -> SymTensor3:
        return SymTensor3.from_matrix(self.as_matrix() + other.as_matrix())

    def __sub__(self, other: SymTensor3) -> SymTensor3:
        return SymTensor3.from_matrix(self.as_matrix() - other.as_matrix())

    def contract(self, r: NDArray[np.float64]) -> NDArray[np.float64]:
        """Q_ab r_b."""
        return self.as_matrix() @ r


def traceless_part(t: SymTensor3) -> SymTensor3:
    """Return ``t - (tr t / 3) I``."""
    shift = t.trace() / 3.0
    xx = t.xx - shift
    yy = t.yy - shift
    # zz closes the trace exactly, so applying this twice changes nothing.
    return SymTensor3(xx=xx, yy=yy, zz=-(xx + yy), xy=t.xy, xz=t.xz, yz=t.yz)


def quadrupole_from_second_moments(
    second: NDArray[np.float64], centroid: NDArray[np.float64]
) -> tuple[SymTensor3, float]:
    """Intrinsic Q from raw <r_a r_b> and <r>.

    Returns ``(Q_int, spread)`` where ``spread = <r^2> - d^2``.
    """
    cov = second - np.outer(centroid, centroid)
    spread = float(np.trace(cov))
    q = 3.0 * cov - spread * np.eye(3)
    return traceless_part(SymTensor3.from_matrix(q)), spread
