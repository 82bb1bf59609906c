"""Declarative packet descriptions.

All packets share a Gaussian envelope of momentum width sigma (equal in all
three directions) centered on a mean momentum along z. The family adds a
phase, an amplitude prefactor, or a superposition on top of it.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from packet_multipoles.core.tensors import ZERO, Vec3
from packet_multipoles.phase import PhaseExpr, parse

TRANSVERSE_TOLERANCE = 1e-12


@lru_cache(maxsize=256)
def _compile(source: str, params: tuple[tuple[str, float], ...]) -> PhaseExpr:
    return parse(source, dict(params))


class GaussPhase(BaseModel):
    """Gaussian envelope times exp(i phi(p)) for a user-supplied phase."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["gauss_phase"] = "gauss_phase"
    phase: str = "0"
    params: dict[str, float] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _parses(self) -> GaussPhase:
        self.expr  # noqa: B018 - parse errors surface at construction
        return self

    @property
    def expr(self) -> PhaseExpr:
        return _compile(self.phase, tuple(sorted(self.params.items())))


class LGVortex(BaseModel):
    """Laguerre-Gaussian vortex with radial index 0 and winding ``ell``."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["lg_vortex"] = "lg_vortex"
    ell: int


class Airy(BaseModel):
    """Cubic phase (xi_x3 p_x^3 + xi_y3 p_y^3)/3 with xi_x3, xi_y3 lengths cubed."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["airy"] = "airy"
    xi_x3: float = 0.0
    xi_y3: float = 0.0


class Cat(BaseModel):
    """Superposition of two phase-free Gaussians centered at -r0 and +r0."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["cat"] = "cat"
    r0: Vec3
    parity: Literal["even", "odd"] = "even"

    @model_validator(mode="after")
    def _transverse(self) -> Cat:
        if self.r0.z != 0.0:
            raise ValueError("cat separation r0 must lie in the transverse plane (r0.z = 0)")
        return self

    @property
    def sign(self) -> float:
        return 1.0 if self.parity == "even" else -1.0


Family = Annotated[GaussPhase | LGVortex | Airy | Cat, Field(discriminator="kind")]


class PacketSpec(BaseModel):
    """A packet family with its envelope parameters.

    ``shift`` translates the packet in position space, psi(p) -> psi(p) exp(-i shift.p).
    """

    model_config = ConfigDict(frozen=True)

    family: Family
    sigma: float = Field(1.0, gt=0.0, description="momentum width; sigma_perp = 1/sigma")
    mean_p: Vec3 = ZERO
    mass: float = Field(1.0, gt=0.0)
    shift: Vec3 = ZERO

    @model_validator(mode="after")
    def _zero_transverse_momentum(self) -> PacketSpec:
        scale = TRANSVERSE_TOLERANCE * max(self.sigma, abs(self.mean_p.z))
        if abs(self.mean_p.x) > scale or abs(self.mean_p.y) > scale:
            raise ValueError("mean momentum must be along z: mean_p = (0, 0, <p>)")
        return self

    @property
    def sigma_perp(self) -> float:
        return 1.0 / self.sigma

    @property
    def p0(self) -> float:
        return self.mean_p.z

    @property
    def kind(self) -> str:
        return self.family.kind

    def shifted(self, by: Vec3) -> PacketSpec:
        """Copy of this packet translated by ``by`` in position space."""
        return self.model_copy(update={"shift": self.shift + by})

    # Convenience constructors

    @classmethod
    def gauss(cls, phase: str = "0", params: dict[str, float] | None = None, **kw: object) -> PacketSpec:
        return cls.model_validate({"family": {"kind": "gauss_phase", "phase": phase, "params": params or {}}, **kw})

    @classmethod
    def lg(cls, ell: int, **kw: object) -> PacketSpec:
        return cls.model_validate({"family": {"kind": "lg_vortex", "ell": ell}, **kw})

    @classmethod
    def airy(cls, xi_x3: float, xi_y3: float, **kw: object) -> PacketSpec:
        return cls.model_validate({"family": {"kind": "airy", "xi_x3": xi_x3, "xi_y3": xi_y3}, **kw})

    @classmethod
    def cat(cls, r0: Vec3 | tuple[float, float, float], parity: str = "even", **kw: object) -> PacketSpec:
        return cls.model_validate({"family": {"kind": "cat", "r0": r0, "parity": parity}, **kw})


def cat_overlap(spec: PacketSpec) -> float:
    """exp(-sigma^2 r0^2), the overlap of the two cat components."""
    assert isinstance(spec.family, Cat)
    return math.exp(-((spec.sigma * spec.family.r0.norm()) ** 2))
