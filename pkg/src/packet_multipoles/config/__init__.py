"""Configuration module."""

from packet_multipoles.config.numerics import GridConfig, QuadratureConfig
from packet_multipoles.config.settings import Settings, get_settings

__all__ = ["GridConfig", "QuadratureConfig", "Settings", "get_settings"]
