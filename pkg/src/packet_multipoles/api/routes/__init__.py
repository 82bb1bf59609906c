"""API routes."""

from packet_multipoles.api.routes.fields import router as fields_router
from packet_multipoles.api.routes.moments import router as moments_router

__all__ = ["fields_router", "moments_router"]
