"""Result model shared by the analytic, quadrature and grid paths."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from packet_multipoles.core.tensors import ZERO, SymTensor3, Vec3

Provenance = Literal["analytic", "quadrature", "grid"]

COMPONENT_NAMES = (
    "d_x",
    "d_y",
    "d_z",
    "mu_x",
    "mu_y",
    "mu_z",
    "q_xx",
    "q_yy",
    "q_zz",
    "q_xy",
    "q_xz",
    "q_yz",
)


class MomentSet(BaseModel):
    """Intrinsic dipole, magnetic dipole and quadrupole of a packet.

    ``d`` is the intrinsic electric dipole (zero for every built-in family);
    the packet's mean position is reported separately as ``centroid``.
    ``spread`` is <r^2> - <r>^2, ``norm`` the integrated probability.
    """

    model_config = ConfigDict(frozen=True)

    d: Vec3 = ZERO
    mu: Vec3 = ZERO
    q: SymTensor3 = Field(default_factory=lambda: SymTensor3.diag(0.0, 0.0, 0.0))
    provenance: Provenance
    frame: Literal["rest", "lab"] = "rest"
    q_frame: Literal["rest"] = "rest"
    norm: float = 1.0
    centroid: Vec3 = ZERO
    spread: float | None = None
    standard_errors: dict[str, float] = Field(default_factory=dict)
    diagnostics: list[str] = Field(default_factory=list)

    def components(self) -> tuple[float, ...]:
        """(d, mu, q) flattened in ``COMPONENT_NAMES`` order."""
        return (
            self.d.x,
            self.d.y,
            self.d.z,
            self.mu.x,
            self.mu.y,
            self.mu.z,
            *self.q.components(),
        )

    def as_row(self) -> dict[str, float]:
        return dict(zip(COMPONENT_NAMES, self.components(), strict=True))

    def max_delta(self, other: MomentSet) -> float:
        """Largest absolute componentwise difference."""
        return max(abs(a - b) for a, b in zip(self.components(), other.components(), strict=True))

    def with_diagnostic(self, message: str) -> MomentSet:
        return self.model_copy(update={"diagnostics": [*self.diagnostics, message]})
