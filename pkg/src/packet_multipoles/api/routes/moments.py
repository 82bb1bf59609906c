"""Moments and estimate endpoints."""

import logging
from typing import Any

from fastapi import APIRouter, Request
from pydantic import BaseModel, Field

from packet_multipoles.api.rate_limit import limiter
from packet_multipoles.cli.commands import EstimateReport, PathName, cmd_estimate, run_moments
from packet_multipoles.cli.output import report_data
from packet_multipoles.config import get_settings
from packet_multipoles.config.packet_file import packet_file_from_mapping

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api/v1", tags=["moments"])
settings = get_settings()


class MomentsRequest(BaseModel):
    """Request model for the moments endpoint."""

    config: dict[str, Any] = Field(
        ...,
        description="Packet document with the same sections as a packet file",
        examples=[{"packet": {"family": "lg_vortex", "ell": 1}}],
    )
    paths: list[PathName] = Field(
        default_factory=lambda: ["analytic", "quadrature"],
        min_length=1,
        description="Computation paths to run and compare",
    )
    si: bool = Field(False, description="Also report moments in e cm^2 and magnetons")


@router.post("/moments")
@limiter.limit(settings.api_rate_limit)
def compute_moments(
    request: Request,  # noqa: ARG001
    body: MomentsRequest,
) -> dict[str, Any]:
    """Intrinsic moments of a packet along the requested paths.

    The response carries per-path moments, their pairwise deltas and an
    ``ok`` flag that is false when any pair disagrees beyond tolerance.
    """
    pf = packet_file_from_mapping(body.config)
    logger.info(f"Moments request: {pf.packet.kind} packet, paths {','.join(body.paths)}")
    return report_data(run_moments(pf, body.paths, body.si))


@router.get("/estimate", response_model=EstimateReport)
@limiter.limit(settings.api_rate_limit)
def estimate(
    request: Request,  # noqa: ARG001
    sigma_perp: str,
    ell: int | None = None,
    r0: str | None = None,
) -> EstimateReport:
    """Order-of-magnitude moments for a packet of physical width ``sigma_perp``."""
    return cmd_estimate(sigma_perp, ell, r0)
