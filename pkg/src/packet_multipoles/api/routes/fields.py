"""Far-field endpoints."""

import logging
from typing import Any

from fastapi import APIRouter, Request
from pydantic import BaseModel, Field

from packet_multipoles.api.rate_limit import limiter
from packet_multipoles.cli.commands import cmd_fig1, field_grid, run_fieldmap
from packet_multipoles.config import get_settings
from packet_multipoles.config.packet_file import packet_file_from_mapping

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api/v1", tags=["fields"])
settings = get_settings()


class FieldMapRequest(BaseModel):
    config: dict[str, Any] = Field(..., description="Packet document with the same sections as a packet file")
    grid: dict[str, Any] = Field(default_factory=dict, description="Spherical grid (r_min, n_theta, ...)")


class FieldRows(BaseModel):
    rows: list[dict[str, float]]


@router.post("/fieldmap", response_model=FieldRows)
@limiter.limit(settings.api_rate_limit)
def fieldmap(
    request: Request,  # noqa: ARG001
    body: FieldMapRequest,
) -> FieldRows:
    """Cylindrical E and H components over a spherical grid, theta-major."""
    pf = packet_file_from_mapping(body.config)
    return FieldRows(rows=run_fieldmap(pf, field_grid(**body.grid)))


@router.get("/fig1", response_model=FieldRows)
@limiter.limit(settings.api_rate_limit)
def fig1(
    request: Request,  # noqa: ARG001
    xi3: float = 1.0,
    sigma: float = 1.0,
    r: float = 10.0,
    samples: int = 360,
) -> FieldRows:
    """Equatorial radial field of an Airy packet over a full turn in phi."""
    return FieldRows(rows=cmd_fig1(xi3, sigma, r, samples))
