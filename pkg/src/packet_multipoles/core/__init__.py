"""Core numeric types, unit conversion and quadrature rules."""

from packet_multipoles.core.summation import compensated_sum
from packet_multipoles.core.tensors import (
    ZERO,
    SymTensor3,
    Vec3,
    quadrupole_from_second_moments,
    traceless_part,
)
from packet_multipoles.core.units import UnitContext, mu_to_bohr, parse_length, q_to_si

__all__ = [
    "ZERO",
    "SymTensor3",
    "UnitContext",
    "Vec3",
    "compensated_sum",
    "mu_to_bohr",
    "parse_length",
    "q_to_si",
    "quadrupole_from_second_moments",
    "traceless_part",
]
