"""Position-space grid oracle."""

from packet_multipoles.oracle.grid import (
    DensityField,
    build_densities,
    default_half_width,
    dump_slice,
    grid_moments,
    integrate_moments,
    lg_mean_radius,
    total_current,
)

__all__ = [
    "DensityField",
    "build_densities",
    "default_half_width",
    "dump_slice",
    "grid_moments",
    "integrate_moments",
    "lg_mean_radius",
    "total_current",
]
