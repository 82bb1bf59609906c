"""Far-zone electromagnetic fields of the intrinsic moments."""

from packet_multipoles.fields.maps import field_map, spherical_point
from packet_multipoles.fields.models import FieldGrid, FieldSample, to_cylindrical
from packet_multipoles.fields.multipole import (
    airy_field_components,
    coulomb_field,
    dipole_coupling_energy,
    dipole_field,
    quadrupole_coupling_energy,
    quadrupole_field,
    total_field,
    vortex_field_components,
)

__all__ = [
    "FieldGrid",
    "FieldSample",
    "airy_field_components",
    "coulomb_field",
    "dipole_coupling_energy",
    "dipole_field",
    "field_map",
    "quadrupole_coupling_energy",
    "quadrupole_field",
    "spherical_point",
    "to_cylindrical",
    "total_field",
    "vortex_field_components",
]
