"""Intrinsic multipole moments: closed forms and momentum-space quadrature."""

from packet_multipoles.moments.analytic import (
    airy_moments,
    analytic_moments,
    boost_dipoles,
    cat_moments,
    exact_mean_radius,
    mean_radius,
    vortex_moments,
)
from packet_multipoles.moments.models import COMPONENT_NAMES, MomentSet
from packet_multipoles.moments.numeric import (
    ShiftReport,
    moments_general,
    moments_phase_formula,
    phase_diagnostics,
    shift_invariance_check,
)

__all__ = [
    "COMPONENT_NAMES",
    "MomentSet",
    "ShiftReport",
    "airy_moments",
    "analytic_moments",
    "boost_dipoles",
    "cat_moments",
    "exact_mean_radius",
    "mean_radius",
    "moments_general",
    "moments_phase_formula",
    "phase_diagnostics",
    "shift_invariance_check",
    "vortex_moments",
]
