"""Application settings using pydantic-settings."""

from functools import lru_cache
from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    log_level: str = "INFO"

    # Momentum-space quadrature
    quad_nodes_per_axis: int = 48
    quad_scheme: Literal["auto", "tensor_hermite", "polar_lg", "monte_carlo"] = "auto"
    quad_tolerance: float = 1e-6
    norm_tolerance: float = 1e-8
    mc_samples: int = 200_000
    mc_seed: int = 20190601

    # Position-space grid oracle
    grid_points_per_axis: int = 128

    # Cross-path agreement thresholds used by the moments report
    quadrature_agreement: float = 1e-6
    grid_agreement: float = 1e-3

    # API settings
    api_host: str = "127.0.0.1"
    api_port: int = 8000
    cors_origins: str = "http://localhost:3000"
    api_rate_limit: str = "30/minute"
    # Take the client address from X-Forwarded-For (only behind a trusted proxy)
    api_trust_proxy: bool = False

    @property
    def numeric_log_level(self) -> int:
        """Map the configured level name onto a logging constant."""
        import logging

        return getattr(logging, self.log_level.upper(), logging.INFO)


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
