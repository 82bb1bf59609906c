"""Closed-form intrinsic moments of the built-in packet families.

These are the reference values every numeric path is tested against.
Lengths are in natural units (sigma_perp = 1/sigma).
"""

from __future__ import annotations

import logging
import math

import numpy as np
from scipy.special import gammaln

from packet_multipoles.core.tensors import SymTensor3, Vec3
from packet_multipoles.errors import DegenerateCat, InvalidConfig, SuperluminalBoost
from packet_multipoles.moments.models import MomentSet
from packet_multipoles.packets.spec import Airy, Cat, GaussPhase, LGVortex, PacketSpec
from packet_multipoles.packets.wavefunctions import DEGENERATE_CAT
from packet_multipoles.phase.ast import VARIABLES, contains

logger = logging.getLogger(__name__)


def gaussian_spread(sigma: float) -> float:
    """<r^2> - <r>^2 of the phase-free envelope."""
    return 1.5 / sigma**2


def mean_radius(ell: int, sigma: float) -> float:
    """Radius sqrt(|l|) sigma_perp fixed by -Q_zz = <rho>^2."""
    return math.sqrt(abs(ell)) / sigma


def exact_mean_radius(ell: int, sigma: float) -> float:
    """Mean of rho over |psi_l(r)|^2: Gamma(|l| + 3/2)/Gamma(|l| + 1) sigma_perp.

    Tends to ``mean_radius`` as |l| grows; the two differ by 33% at |l| = 1.
    """
    order = abs(ell)
    return math.exp(gammaln(order + 1.5) - gammaln(order + 1)) / sigma


def vortex_moments(ell: int, sigma: float, mass: float) -> MomentSet:
    """mu = (0, 0, l/2m), Q = (|l|/sigma^2) diag(1/2, 1/2, -1)."""
    order = abs(ell)
    rho2 = order / sigma**2
    return MomentSet(
        mu=Vec3(z=ell / (2.0 * mass)),
        q=SymTensor3.diag(0.5 * rho2, 0.5 * rho2, -rho2),
        provenance="analytic",
        spread=(order + 1) / sigma**2 + 0.5 / sigma**2,
    )


def airy_moments(xi_x3: float, xi_y3: float, sigma: float) -> MomentSet:
    """Q = (sigma^4/2) diag(2X - Y, 2Y - X, -X - Y) with X = xi_x3^2, Y = xi_y3^2."""
    x6, y6 = xi_x3**2, xi_y3**2
    scale = 0.5 * sigma**4
    moments = MomentSet(
        q=SymTensor3.diag(scale * (2 * x6 - y6), scale * (2 * y6 - x6), -scale * (x6 + y6)),
        provenance="analytic",
        centroid=Vec3(x=-0.5 * xi_x3 * sigma**2, y=-0.5 * xi_y3 * sigma**2),
        spread=gaussian_spread(sigma) + scale * (x6 + y6),
    )
    widest = max(abs(xi_x3), abs(xi_y3)) * sigma**3
    if widest > 1.0:
        message = (
            f"Airy scale |xi| = {widest ** (1 / 3):.3g} sigma_perp exceeds the packet width; "
            "the quadrupole estimate assumes |xi| <~ sigma_perp"
        )
        logger.warning(message)
        moments = moments.with_diagnostic(message)
    return moments


def cat_moments(r0: Vec3, parity: str, sigma: float) -> MomentSet:
    """Q = (3 r0_a r0_b - r0^2 delta_ab)/(1 +- exp(-sigma^2 r0^2)), + for even parity."""
    if r0.z != 0.0:
        raise InvalidConfig("cat separation r0 must be transverse")
    if parity not in ("even", "odd"):
        raise InvalidConfig(f"cat parity must be 'even' or 'odd', got {parity!r}")
    separation = sigma * r0.norm()
    if parity == "odd" and separation < DEGENERATE_CAT:
        raise DegenerateCat(f"odd cat state degenerates at sigma*|r0| = {separation:.3g}")
    sign = 1.0 if parity == "even" else -1.0
    denominator = 1.0 + sign * math.exp(-(separation**2))
    r = r0.as_array()
    raw = 3.0 * np.outer(r, r) - r0.dot(r0) * np.eye(3)
    return MomentSet(
        q=SymTensor3.from_matrix(raw / denominator),
        provenance="analytic",
        spread=gaussian_spread(sigma) + r0.dot(r0) / denominator,
    )


def boost_dipoles(ms: MomentSet, beta: Vec3, mass: float) -> MomentSet:
    """Transform (d, mu) of a packet at rest into a frame where it moves with velocity ``beta``.

    Components along beta are divided by gamma; transverse components mix as
    d' = d + beta x mu and mu' = mu - beta x d. Q is returned untransformed.
    """
    speed = beta.norm()
    if speed >= 1.0:
        raise SuperluminalBoost(f"|beta| = {speed:.6g} must be below 1")
    if speed == 0.0:
        return ms
    gamma = 1.0 / math.sqrt(1.0 - speed**2)
    unit = beta.scaled(1.0 / speed)

    def transform(v: Vec3, mixing: Vec3) -> Vec3:
        parallel = unit.scaled(v.dot(unit))
        return parallel.scaled(1.0 / gamma) + (v - parallel) + mixing

    d = transform(ms.d, beta.cross(ms.mu))
    mu = transform(ms.mu, beta.cross(ms.d).scaled(-1.0))
    note = f"boosted with gamma = {gamma:.12g} (<eps> = {gamma * mass:.12g}); Q kept in the rest frame"
    return ms.model_copy(update={"d": d, "mu": mu, "frame": "lab", "diagnostics": [*ms.diagnostics, note]})


def _constant_phase(family: GaussPhase) -> bool:
    return not contains(family.expr.root, frozenset(VARIABLES))


def analytic_moments(spec: PacketSpec) -> MomentSet | None:
    """Closed-form moments of ``spec``, or ``None`` for a general phase."""
    family = spec.family
    match family:
        case GaussPhase() if _constant_phase(family):
            ms = MomentSet(provenance="analytic", spread=gaussian_spread(spec.sigma))
        case GaussPhase():
            return None
        case LGVortex():
            ms = vortex_moments(family.ell, spec.sigma, spec.mass)
        case Airy():
            ms = airy_moments(family.xi_x3, family.xi_y3, spec.sigma)
        case Cat():
            ms = cat_moments(family.r0, family.parity, spec.sigma)
        case _:
            raise TypeError(f"unsupported packet family {family!r}")
    return ms.model_copy(update={"centroid": ms.centroid + spec.shift})
