"""Natural units (hbar = c = e = 1) and the SI-flavored reporting boundary.

Lengths are measured in sigma_perp = 1/sigma. A quadrupole in natural units
therefore converts to e*cm^2 by the factor (sigma_perp in cm)^2.
"""

from __future__ import annotations

import re

from pydantic import BaseModel, ConfigDict, Field

from packet_multipoles.core.tensors import SymTensor3, Vec3
from packet_multipoles.errors import InvalidConfig, MissingScale

METERS_PER_UNIT = {
    "m": 1.0,
    "cm": 1e-2,
    "mm": 1e-3,
    "um": 1e-6,
    "nm": 1e-9,
    "pm": 1e-12,
}

_LENGTH_PATTERN = re.compile(r"^\s*([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*([a-z]+)\s*$")


class UnitContext(BaseModel):
    """Mass of the packet and, optionally, its physical transverse width."""

    model_config = ConfigDict(frozen=True)

    mass: float = Field(1.0, gt=0.0)
    sigma_perp_m: float | None = Field(None, gt=0.0, description="sigma_perp in meters")

    @property
    def sigma_perp_cm(self) -> float:
        if self.sigma_perp_m is None:
            raise MissingScale("SI output needs a physical sigma_perp")
        return self.sigma_perp_m * 100.0


def parse_length(text: str) -> float:
    """Parse ``"0.1 nm"``, ``"10um"`` or ``"1e-6 m"`` into meters."""
    match = _LENGTH_PATTERN.match(text.replace("μ", "u"))
    if not match:
        raise InvalidConfig(f"Cannot parse length '{text}'")
    value, unit = match.groups()
    if unit not in METERS_PER_UNIT:
        raise InvalidConfig(
            f"Unknown length unit '{unit}' (expected one of {', '.join(METERS_PER_UNIT)})"
        )
    meters = float(value) * METERS_PER_UNIT[unit]
    if meters <= 0.0:
        raise InvalidConfig("Length must be positive")
    return meters


def q_to_si(q: SymTensor3, ctx: UnitContext) -> SymTensor3:
    """Quadrupole in natural units (lengths in sigma_perp) -> e*cm^2."""
    return q.scaled(ctx.sigma_perp_cm**2)


def mu_to_bohr(mu: Vec3, ctx: UnitContext) -> Vec3:
    """Magnetic moment in multiples of the particle's own magneton e/(2m)."""
    return mu.scaled(2.0 * ctx.mass)
