"""Packet families and their wave functions."""

from packet_multipoles.packets.normalization import norm_check
from packet_multipoles.packets.sampling import Rule, rule_for
from packet_multipoles.packets.spec import Airy, Cat, GaussPhase, LGVortex, PacketSpec
from packet_multipoles.packets.wavefunctions import (
    psi_p,
    psi_p_and_grad,
    psi_p_values,
    psi_r_closed,
    psi_r_closed_values,
)

__all__ = [
    "Airy",
    "Cat",
    "GaussPhase",
    "LGVortex",
    "PacketSpec",
    "Rule",
    "norm_check",
    "psi_p",
    "psi_p_and_grad",
    "psi_p_values",
    "psi_r_closed",
    "psi_r_closed_values",
    "rule_for",
]
