"""Field samples and field-map requests."""

from __future__ import annotations

import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from packet_multipoles.core.tensors import Vec3


def cylindrical_basis(r: Vec3) -> tuple[Vec3, Vec3, Vec3]:
    """(rho_hat, phi_hat, z_hat) at ``r``; on the axis phi is taken as 0."""
    phi = math.atan2(r.y, r.x)
    c, s = math.cos(phi), math.sin(phi)
    return Vec3(x=c, y=s), Vec3(x=-s, y=c), Vec3(z=1.0)


def to_cylindrical(v: Vec3, r: Vec3) -> Vec3:
    """Components of the Cartesian vector ``v`` in the cylindrical basis at ``r``."""
    rho_hat, phi_hat, z_hat = cylindrical_basis(r)
    return Vec3(x=v.dot(rho_hat), y=v.dot(phi_hat), z=v.dot(z_hat))


class FieldSample(BaseModel):
    """E and H at one point, both in the cylindrical basis (rho, phi, z)."""

    model_config = ConfigDict(frozen=True)

    position: Vec3
    e: Vec3
    h: Vec3

    @classmethod
    def from_cartesian(cls, position: Vec3, e: Vec3, h: Vec3) -> FieldSample:
        return cls(position=position, e=to_cylindrical(e, position), h=to_cylindrical(h, position))

    @property
    def r(self) -> float:
        return self.position.norm()

    @property
    def theta(self) -> float:
        return math.acos(max(-1.0, min(1.0, self.position.z / self.r)))

    @property
    def phi(self) -> float:
        return math.atan2(self.position.y, self.position.x)

    @property
    def rho(self) -> float:
        return math.hypot(self.position.x, self.position.y)

    def row(self) -> dict[str, float]:
        """Flat record: spherical and cylindrical coordinates, then E and H."""
        return {
            "r": self.r,
            "theta": self.theta,
            "phi": self.phi,
            "rho": self.rho,
            "z": self.position.z,
            "E_rho": self.e.x,
            "E_phi": self.e.y,
            "E_z": self.e.z,
            "H_rho": self.h.x,
            "H_phi": self.h.y,
            "H_z": self.h.z,
        }


class FieldGrid(BaseModel):
    """Spherical sampling grid: radii, polar and azimuthal angles (inclusive ranges).

    The azimuthal range is half-open, [phi_min, phi_max), so a full turn does
    not repeat its first point.
    """

    model_config = ConfigDict(frozen=True)

    r_min: float = Field(10.0, gt=0.0)
    r_max: float | None = None
    n_r: int = Field(1, ge=1)
    theta_min: float = 0.0
    theta_max: float = math.pi
    n_theta: int = Field(19, ge=1)
    phi_min: float = 0.0
    phi_max: float = 2.0 * math.pi
    n_phi: int = Field(36, ge=1)

    @model_validator(mode="after")
    def _ranges(self) -> FieldGrid:
        if self.r_max is not None and self.r_max < self.r_min:
            raise ValueError("r_max must not be below r_min")
        if self.theta_max < self.theta_min or self.phi_max < self.phi_min:
            raise ValueError("angle ranges must be increasing")
        return self

    def radii(self) -> np.ndarray:
        if self.n_r == 1 or self.r_max is None:
            return np.array([self.r_min])
        return np.linspace(self.r_min, self.r_max, self.n_r)

    def thetas(self) -> np.ndarray:
        if self.n_theta == 1:
            return np.array([self.theta_min])
        return np.linspace(self.theta_min, self.theta_max, self.n_theta)

    def phis(self) -> np.ndarray:
        return self.phi_min + (self.phi_max - self.phi_min) * np.arange(self.n_phi) / self.n_phi
