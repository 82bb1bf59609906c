"""Pytest configuration and fixtures."""

import numpy as np
import pytest

from packet_multipoles.config import GridConfig, QuadratureConfig, Settings, get_settings
from packet_multipoles.packets import PacketSpec


@pytest.fixture(autouse=True)
def _fresh_settings():
    """Drop cached settings so environment patches take effect per test."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def mock_settings():
    """Provide settings with fast numeric defaults."""
    return Settings(quad_nodes_per_axis=24, grid_points_per_axis=64, mc_samples=20_000)


@pytest.fixture
def quad():
    """A small deterministic quadrature; moment integrands are polynomial, so it is exact."""
    return QuadratureConfig(nodes_per_axis=24)


@pytest.fixture
def small_grid():
    """Coarse position grid that still resolves unit-width packets."""
    return GridConfig(points_per_axis=64)


@pytest.fixture
def rng():
    """Seeded generator for randomized property checks."""
    return np.random.default_rng(1234)


@pytest.fixture
def vortex():
    return PacketSpec.lg(1)


@pytest.fixture
def airy():
    return PacketSpec.airy(1.0, 0.5)


@pytest.fixture
def even_cat():
    return PacketSpec.cat((1.0, 0.0, 0.0), "even")


@pytest.fixture
def packet_toml(tmp_path):
    """Write a vortex packet file and return its path."""
    path = tmp_path / "vortex.toml"
    path.write_text(
        "\n".join(
            [
                "[packet]",
                'family = "lg_vortex"',
                "ell = 1",
                "sigma = 1.0",
                "mass = 1.0",
                "",
                "[quadrature]",
                "nodes_per_axis = 24",
                "",
                "[grid]",
                "points_per_axis = 64",
                "",
                "[units]",
                'sigma_perp = "0.1 nm"',
                "",
            ]
        ),
        encoding="utf-8",
    )
    return path
