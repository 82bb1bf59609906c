"""Numeric knobs for the quadrature and grid paths."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from packet_multipoles.config.settings import Settings, get_settings

Scheme = Literal["auto", "tensor_hermite", "polar_lg", "monte_carlo"]


class QuadratureConfig(BaseModel):
    """Momentum-space quadrature settings.

    ``scheme="auto"`` picks ``polar_lg`` for vortex packets and
    ``tensor_hermite`` for everything else.
    """

    model_config = ConfigDict(frozen=True)

    nodes_per_axis: int = Field(48, ge=8)
    scheme: Scheme = "auto"
    samples: int = Field(200_000, ge=1000)
    seed: int = 20190601
    derivative_mode: Literal["analytic_ad", "central_diff"] = "analytic_ad"
    h: float = 1e-5
    tolerance: float = Field(1e-6, gt=0.0)
    norm_tolerance: float = Field(1e-8, gt=0.0)
    check_convergence: bool = True

    @model_validator(mode="after")
    def _step_in_range(self) -> QuadratureConfig:
        if self.derivative_mode == "central_diff" and not 1e-8 <= self.h <= 1e-3:
            raise ValueError("central_diff step h must lie in [1e-8, 1e-3]")
        return self

    @classmethod
    def from_settings(cls, settings: Settings | None = None, **overrides: object) -> QuadratureConfig:
        settings = settings or get_settings()
        values: dict[str, object] = {
            "nodes_per_axis": settings.quad_nodes_per_axis,
            "scheme": settings.quad_scheme,
            "samples": settings.mc_samples,
            "seed": settings.mc_seed,
            "tolerance": settings.quad_tolerance,
            "norm_tolerance": settings.norm_tolerance,
        }
        values.update(overrides)
        return cls.model_validate(values)


class GridConfig(BaseModel):
    """Position-space grid settings.

    ``box_half_width`` is in units of sigma_perp; ``None`` selects the
    family-dependent default (6 plus a pad for the packet's extent).
    """

    model_config = ConfigDict(frozen=True)

    points_per_axis: int = 128
    box_half_width: float | None = Field(None, gt=0.0)
    boundary_tolerance: float = Field(1e-12, gt=0.0)

    @field_validator("points_per_axis")
    @classmethod
    def _power_of_two(cls, n: int) -> int:
        if n < 32 or n & (n - 1):
            raise ValueError("points_per_axis must be a power of two >= 32")
        return n

    @classmethod
    def from_settings(cls, settings: Settings | None = None, **overrides: object) -> GridConfig:
        settings = settings or get_settings()
        values: dict[str, object] = {"points_per_axis": settings.grid_points_per_axis}
        values.update(overrides)
        return cls.model_validate(values)
