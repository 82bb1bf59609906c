"""Field maps over spherical sampling grids."""

from __future__ import annotations

import math
from collections.abc import Iterator

from packet_multipoles.core.tensors import Vec3
from packet_multipoles.fields.models import FieldGrid, FieldSample
from packet_multipoles.fields.multipole import total_field
from packet_multipoles.moments.models import MomentSet


def spherical_point(r: float, theta: float, phi: float) -> Vec3:
    st = math.sin(theta)
    return Vec3(x=r * st * math.cos(phi), y=r * st * math.sin(phi), z=r * math.cos(theta))


def field_map(ms: MomentSet, grid: FieldGrid, charge: float = 1.0) -> Iterator[FieldSample]:
    """Samples of ``total_field`` in theta-major order, then phi, then r."""
    radii = grid.radii()
    for theta in grid.thetas():
        for phi in grid.phis():
            for r in radii:
                yield total_field(ms, spherical_point(float(r), float(theta), float(phi)), charge)
