"""Intrinsic moments from momentum-space quadrature.

Position acts on psi(p) as r = i d/dp, so with D = dpsi/dp

    <r_a>      = -Im <psi|D_a>
    <r_a r_b>  =  Re <D_a|D_b>
    <L>        =  Im <psi| p x D>

and the intrinsic moments follow by subtracting the centroid:
mu = (<L> - <r> x <p>)/2m and Q = 3 Cov(r) - tr Cov(r) I.
"""

from __future__ import annotations

import logging
from collections.abc import Callable

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict

from packet_multipoles.config.numerics import QuadratureConfig
from packet_multipoles.core.summation import compensated_sum
from packet_multipoles.core.tensors import ZERO, Vec3, quadrupole_from_second_moments
from packet_multipoles.errors import InvalidConfig, QuadratureNonConvergence, VortexDivergence
from packet_multipoles.moments.analytic import gaussian_spread
from packet_multipoles.moments.models import COMPONENT_NAMES, MomentSet
from packet_multipoles.packets.sampling import Rule, rule_for
from packet_multipoles.packets.spec import Airy, GaussPhase, PacketSpec
from packet_multipoles.packets.wavefunctions import psi_p_and_grad, psi_p_central_grad
from packet_multipoles.phase import central_difference, classify_singularity, evaluate

logger = logging.getLogger(__name__)

MC_BATCHES = 20

Array = NDArray[np.float64]


def _sum(values: Array) -> float:
    return float(compensated_sum(values))


def phase_diagnostics(spec: PacketSpec) -> list[str]:
    """Refuse vortex phases on a plain Gaussian; flag phases we cannot classify."""
    if not isinstance(spec.family, GaussPhase):
        return []
    kind = classify_singularity(spec.family.expr)
    if kind.kind == "vortex" and kind.ell != 0:
        raise VortexDivergence(
            f"phase '{spec.family.phase}' winds {kind.ell} times around the axis on a plain Gaussian "
            "envelope; its second moment diverges logarithmically. Use the lg_vortex family instead."
        )
    if kind.kind == "unknown":
        message = f"phase '{spec.family.phase}' has an unclassified singularity; accuracy is not guaranteed"
        logger.warning(message)
        return [message]
    return []


def _from_sums(
    spec: PacketSpec,
    weights: Array,
    h: NDArray[np.complex128],
    dh: NDArray[np.complex128],
    points: Array,
) -> MomentSet:
    """Moments from psi/b and dpsi/b sampled on a rule's nodes."""
    density = weights * np.abs(h) ** 2
    norm = _sum(density)
    overlap = np.conj(h) * dh
    centroid = np.array([-_sum(weights * overlap[a].imag) for a in range(3)]) / norm
    second = np.empty((3, 3))
    for a in range(3):
        for b in range(a, 3):
            second[a, b] = second[b, a] = _sum(weights * (np.conj(dh[a]) * dh[b]).real) / norm
    torque = np.conj(h) * np.cross(points, dh, axis=0)
    angular = np.array([_sum(weights * torque[a].imag) for a in range(3)]) / norm
    mean_p = np.array([_sum(density * points[a]) for a in range(3)]) / norm
    mu = (angular - np.cross(centroid, mean_p)) / (2.0 * spec.mass)
    q, spread = quadrupole_from_second_moments(second, centroid)
    return MomentSet(
        mu=Vec3.from_array(mu),
        q=q,
        provenance="quadrature",
        norm=norm,
        centroid=Vec3.from_array(centroid),
        spread=spread,
    )


def _evaluate_rule(spec: PacketSpec, rule: Rule, quad: QuadratureConfig) -> MomentSet:
    if quad.derivative_mode == "central_diff":
        psi, grad = psi_p_central_grad(spec, rule.points, quad.h)
    else:
        psi, grad = psi_p_and_grad(spec, rule.points)
    inverse = np.exp(-rule.log_base)
    h, dh = psi * inverse, grad * inverse
    if not rule.is_random:
        return _from_sums(spec, rule.weights, h, dh, rule.points)
    full = _from_sums(spec, rule.weights, h, dh, rule.points)
    return full.model_copy(update={"standard_errors": _batch_errors(spec, rule, h, dh)})


def _batch_errors(
    spec: PacketSpec, rule: Rule, h: NDArray[np.complex128], dh: NDArray[np.complex128]
) -> dict[str, float]:
    """Standard errors of every component from batch means over the sample."""
    rows = []
    for chunk in np.array_split(np.arange(rule.size), MC_BATCHES):
        weights = np.full(chunk.size, 1.0 / chunk.size)
        batch = _from_sums(spec, weights, h[chunk], dh[:, chunk], rule.points[:, chunk])
        rows.append([*batch.components(), batch.centroid.x, batch.centroid.y, batch.centroid.z])
    spread = np.std(np.array(rows), axis=0, ddof=1) / np.sqrt(MC_BATCHES)
    names = [*COMPONENT_NAMES, "centroid_x", "centroid_y", "centroid_z"]
    return dict(zip(names, (float(s) for s in spread), strict=True))


def _refined(
    spec: PacketSpec, quad: QuadratureConfig, evaluate_rule: Callable[[Rule], MomentSet], label: str
) -> MomentSet:
    """Evaluate on the configured rule and, if asked, confirm against the doubled rule.

    Returns the finer result when the check runs.
    """
    coarse = evaluate_rule(rule_for(spec, quad))
    if not quad.check_convergence or quad.scheme == "monte_carlo":
        return coarse
    fine = evaluate_rule(rule_for(spec, quad, refine=2))
    change = max(coarse.max_delta(fine), (coarse.centroid - fine.centroid).norm())
    if change > quad.tolerance:
        raise QuadratureNonConvergence(
            f"doubling the {spec.kind} {label} changed the moments by {change:.3g} "
            f"(tolerance {quad.tolerance:.3g}); raise nodes_per_axis"
        )
    logger.debug(f"{spec.kind} {label} converged: max change {change:.3g}")
    return fine


def moments_general(spec: PacketSpec, quad: QuadratureConfig | None = None) -> MomentSet:
    """Intrinsic moments of any packet from derivatives of the full complex psi(p).

    With ``quad.check_convergence`` the deterministic rules are re-run with
    doubled node counts and the finer result is returned.
    """
    quad = quad or QuadratureConfig.from_settings()
    diagnostics = phase_diagnostics(spec)
    result = _refined(spec, quad, lambda rule: _evaluate_rule(spec, rule, quad), "quadrature")
    return result.model_copy(update={"diagnostics": [*result.diagnostics, *diagnostics]})


def _phase_gradient(spec: PacketSpec, points: Array, quad: QuadratureConfig) -> Array:
    family = spec.family
    if isinstance(family, Airy):
        return np.stack([family.xi_x3 * points[0] ** 2, family.xi_y3 * points[1] ** 2, np.zeros(points.shape[1])])
    assert isinstance(family, GaussPhase)
    if quad.derivative_mode == "central_diff":
        return central_difference(family.expr, points, quad.h * spec.sigma)
    _, grad = evaluate(family.expr, points)
    return grad


def moments_phase_formula(spec: PacketSpec, quad: QuadratureConfig | None = None) -> MomentSet:
    """Intrinsic moments of a pure-phase packet from covariances of the phase gradient.

    With g = grad(phi) - shift: d_int = 0, centroid = -<g>,
    mu = (<u x g> - <u> x <g>)/2 with u = p/m, and Q = 3 Cov(g) - tr Cov(g) I.
    """
    if not isinstance(spec.family, GaussPhase | Airy):
        raise InvalidConfig(f"the phase-covariance formula applies to pure-phase packets, not {spec.kind}")
    quad = quad or QuadratureConfig.from_settings()
    diagnostics = phase_diagnostics(spec)
    result = _refined(spec, quad, lambda rule: _covariance_moments(spec, rule, quad), "phase covariance")
    return result.model_copy(update={"diagnostics": diagnostics})


def _covariance_moments(spec: PacketSpec, rule: Rule, quad: QuadratureConfig) -> MomentSet:
    points, weights = rule.points, rule.weights
    g = _phase_gradient(spec, points, quad) - spec.shift.as_array()[:, None]
    mean_g = np.array([_sum(weights * g[a]) for a in range(3)])
    centered = g - mean_g[:, None]
    cov = np.empty((3, 3))
    for a in range(3):
        for b in range(a, 3):
            cov[a, b] = cov[b, a] = _sum(weights * centered[a] * centered[b])
    u = points / spec.mass
    mean_u = np.array([_sum(weights * u[a]) for a in range(3)])
    cross = np.cross(u, g, axis=0)
    mean_cross = np.array([_sum(weights * cross[a]) for a in range(3)])
    mu = 0.5 * (mean_cross - np.cross(mean_u, mean_g))
    q, covariance = quadrupole_from_second_moments(cov, np.zeros(3))
    return MomentSet(
        d=ZERO,
        mu=Vec3.from_array(mu),
        q=q,
        provenance="quadrature",
        norm=_sum(weights),
        centroid=Vec3.from_array(-mean_g),
        spread=gaussian_spread(spec.sigma) + covariance,
    )


class ShiftReport(BaseModel):
    """Moments before and after translating the packet by ``offset``."""

    model_config = ConfigDict(frozen=True)

    offset: Vec3
    base: MomentSet
    shifted: MomentSet
    mu_delta: float
    q_delta: float
    centroid_delta: float
    tolerance: float

    @property
    def ok(self) -> bool:
        return max(self.mu_delta, self.q_delta, self.centroid_delta) <= self.tolerance


def shift_invariance_check(
    spec: PacketSpec, r0: Vec3, quad: QuadratureConfig | None = None, tolerance: float = 1e-8
) -> ShiftReport:
    """Recompute the moments of ``spec`` translated by ``r0`` and compare.

    Intrinsic mu and Q must not move; the centroid must move by exactly r0.
    """
    base = moments_general(spec, quad)
    shifted = moments_general(spec.shifted(r0), quad)
    expected = base.centroid + r0
    report = ShiftReport(
        offset=r0,
        base=base,
        shifted=shifted,
        mu_delta=(shifted.mu - base.mu).norm(),
        q_delta=(shifted.q - base.q).norm(),
        centroid_delta=(shifted.centroid - expected).norm(),
        tolerance=tolerance,
    )
    if not report.ok:
        logger.warning(
            f"shift by {r0.as_array().tolist()} moved intrinsic moments: mu {report.mu_delta:.3g}, "
            f"Q {report.q_delta:.3g}, centroid {report.centroid_delta:.3g}"
        )
    return report
