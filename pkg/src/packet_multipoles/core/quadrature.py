"""Quadrature rules whose weight is the packet's own probability density.

Each rule returns ``(points, weights)`` with ``points`` of shape ``(3, N)`` in
momentum space and ``weights`` of shape ``(N,)`` summing to 1, so that
``sum(weights * f(points))`` approximates ``<f>`` over the packet.

* ``tensor_gaussian_rule``: |psi|^2 of the Gaussian envelope is the normal
  density N(center, sigma^2/2) per axis; Gauss-Hermite in (p - center)/sigma.
* ``polar_lg_rule``: the LG density factorizes into a Gamma(|l|+1) law for
  s = p_perp^2/sigma^2, a uniform azimuth, and a normal p_z.
"""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np
from numpy.typing import NDArray
from scipy.special import gammaln, roots_genlaguerre

Rule = tuple[NDArray[np.float64], NDArray[np.float64]]

# Above this |l| the Gamma weights of the Laguerre rule overflow double precision.
LAGUERRE_MAX_ORDER = 100


def gauss_hermite(n: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Nodes for weight exp(-t^2) with weights normalized to sum to 1."""
    knots, weights = np.polynomial.hermite.hermgauss(n)
    return knots, weights / math.sqrt(math.pi)


def tensor_gaussian_rule(sigma: float, center: Sequence[float], counts: Sequence[int]) -> Rule:
    """Tensor Gauss-Hermite rule for the density prod_a N(center_a, sigma^2/2)."""
    axes = []
    axis_weights = []
    for a in range(3):
        t, w = gauss_hermite(int(counts[a]))
        axes.append(center[a] + sigma * t)
        axis_weights.append(w)
    px, py, pz = np.meshgrid(*axes, indexing="ij")
    wx, wy, wz = np.meshgrid(*axis_weights, indexing="ij")
    points = np.stack([px.ravel(), py.ravel(), pz.ravel()])
    return points, (wx * wy * wz).ravel()


def gamma_radial_rule(order: int, n: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Nodes/weights for E[f(s)] with s ~ Gamma(order + 1, 1), order >= 1.

    The Laguerre rule is built for weight s^(order-1) e^-s and the extra factor s
    is moved into the weights, so integrands carrying 1/s (the vortex terms)
    remain polynomial and are integrated exactly.
    """
    if order <= LAGUERRE_MAX_ORDER:
        x, w = roots_genlaguerre(n, order - 1)
        return x, w * x * math.exp(-gammaln(order + 1))
    # Gauss-Legendre over the bulk of the Gamma law, weights in log space.
    mean = order + 1.0
    spread = 14.0 * math.sqrt(mean)
    lo, hi = max(mean - spread, 0.0), mean + spread
    m = max(4 * n, 200)
    t, w = np.polynomial.legendre.leggauss(m)
    s = 0.5 * (hi - lo) * t + 0.5 * (hi + lo)
    logw = order * np.log(s) - s - gammaln(order + 1)
    return s, 0.5 * (hi - lo) * w * np.exp(logw)


def polar_lg_rule(
    order: int, sigma: float, pz_center: float, n_radial: int, n_phi: int, n_z: int
) -> Rule:
    """Rule for the Laguerre-Gaussian momentum density of order |l| >= 1."""
    s, ws = gamma_radial_rule(order, n_radial)
    # Trapezoid in phi_p, offset by half a step so no node sits on an axis.
    phi = (np.arange(n_phi) + 0.5) * (2.0 * math.pi / n_phi)
    wphi = np.full(n_phi, 1.0 / n_phi)
    t, wz = gauss_hermite(n_z)
    pz = pz_center + sigma * t
    S, PHI, PZ = np.meshgrid(s, phi, pz, indexing="ij")
    WS, WPHI, WZ = np.meshgrid(ws, wphi, wz, indexing="ij")
    pperp = sigma * np.sqrt(S)
    points = np.stack([(pperp * np.cos(PHI)).ravel(), (pperp * np.sin(PHI)).ravel(), PZ.ravel()])
    return points, (WS * WPHI * WZ).ravel()


def gaussian_samples(
    rng: np.random.Generator, sigma: float, center: Sequence[float], n: int
) -> Rule:
    """Monte Carlo draws from N(center, sigma^2/2) per axis, equal weights."""
    points = np.asarray(center, dtype=float)[:, None] + (sigma / math.sqrt(2.0)) * rng.standard_normal(
        (3, n)
    )
    return points, np.full(n, 1.0 / n)


def lg_samples(
    rng: np.random.Generator, order: int, sigma: float, pz_center: float, n: int
) -> Rule:
    """Monte Carlo draws from the Laguerre-Gaussian momentum density."""
    s = rng.gamma(order + 1.0, 1.0, n)
    phi = rng.uniform(0.0, 2.0 * math.pi, n)
    pz = pz_center + (sigma / math.sqrt(2.0)) * rng.standard_normal(n)
    pperp = sigma * np.sqrt(s)
    points = np.stack([pperp * np.cos(phi), pperp * np.sin(phi), pz])
    return points, np.full(n, 1.0 / n)
