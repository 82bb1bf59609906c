"""FastAPI application for the packet multipole service."""

import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from slowapi.errors import RateLimitExceeded
from starlette.requests import Request

from packet_multipoles import __version__
from packet_multipoles.api.rate_limit import limiter
from packet_multipoles.api.routes import fields_router, moments_router
from packet_multipoles.config import get_settings
from packet_multipoles.errors import MultipoleError

settings = get_settings()

# Configure logging (set LOG_LEVEL=DEBUG for verbose output)
logging.basicConfig(
    level=settings.numeric_log_level,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    force=True,
)
logging.getLogger("packet_multipoles").setLevel(settings.numeric_log_level)

logger = logging.getLogger(__name__)
logger.info(f"Log level set to: {settings.log_level.upper()}")


@asynccontextmanager
async def lifespan(app: FastAPI):  # noqa: ARG001
    """Application lifespan manager for startup and shutdown."""
    logger.info(f"Starting packet multipole API (rate limit {settings.api_rate_limit})")
    yield
    logger.info("Application shutdown complete")


app = FastAPI(
    title="Packet Multipoles API",
    description="Intrinsic multipole moments and far fields of non-Gaussian charged wave packets",
    version=__version__,
    lifespan=lifespan,
)

# Rate limiting
app.state.limiter = limiter


async def rate_limit_handler(request: Request, exc: RateLimitExceeded) -> JSONResponse:
    """Return 429 with a machine-readable detail code."""
    logger.warning(f"Rate limit exceeded: {request.url.path} {exc.detail}")
    return JSONResponse(
        status_code=429,
        content={"detail": "rate_limit"},
    )


async def multipole_error_handler(request: Request, exc: MultipoleError) -> JSONResponse:
    """Map library errors onto 422 with the error's stable code."""
    logger.warning(f"Rejected {request.url.path}: {exc.code}: {exc}")
    return JSONResponse(
        status_code=422,
        content={"detail": exc.code, "message": str(exc)},
    )


app.add_exception_handler(RateLimitExceeded, rate_limit_handler)
app.add_exception_handler(MultipoleError, multipole_error_handler)

app.add_middleware(
    CORSMiddleware,
    allow_origins=[o.strip() for o in settings.cors_origins.split(",")],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(moments_router)
app.include_router(fields_router)


@app.get("/health")
async def health_check() -> dict:
    """Health check endpoint."""
    return {"status": "healthy", "version": __version__}


@app.get("/")
async def root() -> dict:
    """Root endpoint with API information."""
    return {
        "name": "Packet Multipoles API",
        "version": __version__,
        "docs": "/docs",
        "health": "/health",
    }
