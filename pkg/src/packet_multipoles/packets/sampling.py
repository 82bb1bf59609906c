"""Momentum-space node sets matched to each packet family.

A rule's weights integrate against a reference density |b(p)|^2/(2pi)^3 that
is normalized to one: the Gaussian envelope for ``tensor_hermite``, the full
LG density for ``polar_lg``. Expectations then read

    <X> = sum_i w_i  psi(p_i)^* X psi(p_i) / b(p_i)^2

and only the ratio psi/b has to be resolved by the nodes.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.special import gammaln

from packet_multipoles.config.numerics import QuadratureConfig
from packet_multipoles.core import quadrature
from packet_multipoles.errors import InvalidConfig
from packet_multipoles.packets.spec import Cat, LGVortex, PacketSpec
from packet_multipoles.packets.wavefunctions import envelope_log_norm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Rule:
    """Nodes ``points`` (3, N), ``weights`` (N,) summing to 1, and log b at the nodes."""

    points: NDArray[np.float64]
    weights: NDArray[np.float64]
    log_base: NDArray[np.float64]
    scheme: str

    @property
    def size(self) -> int:
        return int(self.weights.size)

    @property
    def is_random(self) -> bool:
        return self.scheme == "monte_carlo"


def resolve_scheme(spec: PacketSpec, quad: QuadratureConfig) -> str:
    """Deterministic scheme used for ``spec``; ``monte_carlo`` is returned as is."""
    vortex = isinstance(spec.family, LGVortex) and spec.family.ell != 0
    if quad.scheme == "auto":
        return "polar_lg" if vortex else "tensor_hermite"
    if quad.scheme == "polar_lg" and not vortex:
        raise InvalidConfig(f"polar_lg quadrature needs an LG packet with l != 0, got {spec.kind}")
    return quad.scheme


def _even(n: int) -> int:
    return n + (n % 2)


def tensor_counts(spec: PacketSpec, nodes: int) -> tuple[int, int, int]:
    """Per-axis Gauss-Hermite counts.

    Transverse counts are even so no node lies on the beam axis. For cat
    states the transverse count grows with (sigma r0_a)^2 so that the
    cos/sin(r0.p) factor is resolved to machine precision.
    """
    counts = [_even(nodes), _even(nodes), nodes]
    if isinstance(spec.family, Cat):
        for a, r0 in enumerate(spec.family.r0.as_array()[:2]):
            k = 2.0 * spec.sigma * abs(r0)
            counts[a] = max(counts[a], _even(math.ceil(math.e * k * k / 4.0) + 8))
    return counts[0], counts[1], counts[2]


def _gauss_log_base(spec: PacketSpec, points: NDArray[np.float64]) -> NDArray[np.float64]:
    q = points - spec.mean_p.as_array()[:, None]
    return envelope_log_norm(spec.sigma) - np.sum(q * q, axis=0) / (2.0 * spec.sigma**2)


def _lg_log_base(spec: PacketSpec, points: NDArray[np.float64]) -> NDArray[np.float64]:
    assert isinstance(spec.family, LGVortex)
    order = abs(spec.family.ell)
    rho = np.hypot(points[0], points[1])
    return (
        _gauss_log_base(spec, points)
        + order * np.log(rho / spec.sigma)
        - 0.5 * gammaln(order + 1)
    )


def rule_for(spec: PacketSpec, quad: QuadratureConfig, refine: int = 1) -> Rule:
    """Node set for ``spec``; ``refine`` multiplies every node count."""
    scheme = resolve_scheme(spec, quad)
    center = spec.mean_p.as_array()
    vortex = isinstance(spec.family, LGVortex) and spec.family.ell != 0
    order = abs(spec.family.ell) if isinstance(spec.family, LGVortex) else 0

    if scheme == "monte_carlo":
        rng = np.random.default_rng(quad.seed)
        n = quad.samples * refine
        if vortex:
            points, weights = quadrature.lg_samples(rng, order, spec.sigma, spec.p0, n)
            log_base = _lg_log_base(spec, points)
        else:
            points, weights = quadrature.gaussian_samples(rng, spec.sigma, center, n)
            log_base = _gauss_log_base(spec, points)
    elif scheme == "polar_lg":
        nodes = quad.nodes_per_axis * refine
        points, weights = quadrature.polar_lg_rule(
            order, spec.sigma, spec.p0, n_radial=max(8, nodes // 2), n_phi=nodes, n_z=nodes
        )
        log_base = _lg_log_base(spec, points)
    else:
        counts = tensor_counts(spec, quad.nodes_per_axis * refine)
        points, weights = quadrature.tensor_gaussian_rule(spec.sigma, center, counts)
        log_base = _gauss_log_base(spec, points)

    logger.debug(f"{scheme} rule for {spec.kind}: {weights.size} nodes (refine={refine})")
    return Rule(points=points, weights=weights, log_base=log_base, scheme=scheme)
