"""Intrinsic multipole moments of non-Gaussian charged wave packets."""

from packet_multipoles.errors import MultipoleError
from packet_multipoles.moments import MomentSet, analytic_moments, moments_general
from packet_multipoles.packets import PacketSpec

__version__ = "0.1.0"

__all__ = ["MomentSet", "MultipoleError", "PacketSpec", "analytic_moments", "moments_general"]
