"""Position-space oracle: densities on a 3-D grid and direct moment integrals.

psi(r) is built as exp(i <p> z) phi(r). The slowly varying envelope phi
comes from the closed form when the family has one and from an inverse FFT
of psi(p) otherwise. Its gradient is spectral (multiplication by ik), so
the current is

    j = (<p> z_hat |phi|^2 + Im(phi^* grad phi)) / m.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from typing import TextIO

import numpy as np
from numpy.typing import NDArray

from packet_multipoles.config.numerics import GridConfig
from packet_multipoles.core.quadrature import tensor_gaussian_rule
from packet_multipoles.core.summation import compensated_sum
from packet_multipoles.core.tensors import Vec3, quadrupole_from_second_moments
from packet_multipoles.errors import BoxTooSmall, InvalidConfig, SingularPoint
from packet_multipoles.moments.models import MomentSet
from packet_multipoles.packets.spec import Airy, Cat, GaussPhase, LGVortex, PacketSpec
from packet_multipoles.packets.wavefunctions import psi_p_values, psi_r_closed_values
from packet_multipoles.phase import evaluate

logger = logging.getLogger(__name__)

Array = NDArray[np.float64]

BASE_HALF_WIDTH = 6.0
# Airy tails sit at x ~ -xi^3 p^2; 28 covers p up to sqrt(28) sigma, where |psi|^2 < 1e-12.
AIRY_PAD = 28.0
NORM_WARNING = 1e-6


@dataclass(frozen=True)
class DensityField:
    """Charge density j0 (N, N, N) and current j (3, N, N, N) on a cubic grid."""

    axes: tuple[Array, Array, Array]
    spacing: float
    rho: Array
    current: Array
    mass: float

    @property
    def cell_volume(self) -> float:
        return self.spacing**3

    @property
    def points_per_axis(self) -> int:
        return int(self.axes[0].size)

    def coordinates(self) -> tuple[Array, Array, Array]:
        """Axis arrays shaped for broadcasting against the grid."""
        x, y, z = self.axes
        return x[:, None, None], y[None, :, None], z[None, None, :]


def _phase_pad(spec: PacketSpec) -> float:
    """Box pad for a general phase: the largest |grad phi| over the bulk of the envelope."""
    assert isinstance(spec.family, GaussPhase)
    points, _ = tensor_gaussian_rule(spec.sigma, spec.mean_p.as_array(), (10, 10, 10))
    try:
        _, grad = evaluate(spec.family.expr, points)
    except SingularPoint:
        return 0.0
    return 1.5 * float(np.max(np.linalg.norm(grad, axis=0))) * spec.sigma


def default_half_width(spec: PacketSpec) -> float:
    """Half width of the box in units of sigma_perp."""
    family = spec.family
    match family:
        case LGVortex():
            return BASE_HALF_WIDTH + math.sqrt(abs(family.ell))
        case Cat():
            return BASE_HALF_WIDTH + spec.sigma * family.r0.norm()
        case Airy():
            return BASE_HALF_WIDTH + AIRY_PAD * max(abs(family.xi_x3), abs(family.xi_y3)) * spec.sigma**3
        case GaussPhase():
            return BASE_HALF_WIDTH + _phase_pad(spec)
    return BASE_HALF_WIDTH


def grid_axes(spec: PacketSpec, g: GridConfig) -> tuple[tuple[Array, Array, Array], float]:
    """Axes of the cubic grid centered on the packet's translation."""
    half = (g.box_half_width or default_half_width(spec)) / spec.sigma
    n = g.points_per_axis
    spacing = 2.0 * half / n
    offsets = (np.arange(n) - n // 2) * spacing
    center = spec.shift.as_array()
    return (center[0] + offsets, center[1] + offsets, center[2] + offsets), spacing


def _wavenumbers(n: int, spacing: float) -> tuple[Array, Array, Array]:
    k = 2.0 * np.pi * np.fft.fftfreq(n, d=spacing)
    return k[:, None, None], k[None, :, None], k[None, None, :]


def _envelope(spec: PacketSpec, axes: tuple[Array, Array, Array], spacing: float) -> NDArray[np.complex128]:
    """phi(r) = psi(r) exp(-i <p> z) on the grid."""
    n = axes[0].size
    x, y, z = np.meshgrid(*axes, indexing="ij")
    closed = psi_r_closed_values(spec, np.stack([x.ravel(), y.ravel(), z.ravel()]))
    if closed is not None:
        return closed.reshape(n, n, n) * np.exp(-1j * spec.p0 * z)
    del x, y, z
    kx, ky, kz = _wavenumbers(n, spacing)
    kx3, ky3, kz3 = np.broadcast_arrays(kx, ky, kz)
    momenta = np.stack([kx3.ravel(), ky3.ravel(), kz3.ravel() + spec.p0])
    samples = psi_p_values(spec, momenta).reshape(n, n, n)
    start = (axes[0][0], axes[1][0], axes[2][0])
    samples = samples * np.exp(1j * (kx * start[0] + ky * start[1] + kz * start[2]))
    return np.fft.ifftn(samples) / spacing**3


def build_densities(spec: PacketSpec, g: GridConfig | None = None) -> DensityField:
    """j0 = |psi|^2 and j = Im(psi^* grad psi)/m on the grid for ``spec``."""
    g = g or GridConfig.from_settings()
    axes, spacing = grid_axes(spec, g)
    n = g.points_per_axis
    phi = _envelope(spec, axes, spacing)
    spectrum = np.fft.fftn(phi)
    k = _wavenumbers(n, spacing)
    rho = np.abs(phi) ** 2
    current = np.empty((3, n, n, n))
    for a in range(3):
        grad = np.fft.ifftn(1j * k[a] * spectrum)
        current[a] = (np.conj(phi) * grad).imag
    current[2] += spec.p0 * rho
    current /= spec.mass
    _check_box(rho, g.boundary_tolerance)
    logger.debug(f"built {n}^3 densities for {spec.kind} with spacing {spacing:.4g}")
    return DensityField(axes=axes, spacing=spacing, rho=rho, current=current, mass=spec.mass)


def _check_box(rho: Array, tolerance: float) -> None:
    peak = float(rho.max())
    faces = max(
        float(np.abs(rho[[0, -1], :, :]).max()),
        float(np.abs(rho[:, [0, -1], :]).max()),
        float(np.abs(rho[:, :, [0, -1]]).max()),
    )
    if faces > tolerance * peak:
        raise BoxTooSmall(
            f"density on the box boundary is {faces / peak:.3g} of the peak (limit {tolerance:.3g}); "
            "increase box_half_width"
        )


def _integral(values: Array, volume: float) -> float:
    return float(compensated_sum(values)) * volume


def total_current(df: DensityField) -> Vec3:
    """Integral of j over the grid; equals <p>/m."""
    return Vec3.from_array([_integral(df.current[a], df.cell_volume) for a in range(3)])


def integrate_moments(df: DensityField, g: GridConfig | None = None) -> MomentSet:
    """Raw moments of the densities followed by the intrinsic subtraction.

    ``g`` is accepted for symmetry with ``build_densities``; the grid geometry
    travels with ``df``.
    """
    dv = df.cell_volume
    r = df.coordinates()
    norm = _integral(df.rho, dv)
    centroid = np.array([_integral(df.rho * r[a], dv) for a in range(3)]) / norm
    second = np.empty((3, 3))
    for a in range(3):
        for b in range(a, 3):
            second[a, b] = second[b, a] = _integral(df.rho * r[a] * r[b], dv) / norm
    j = df.current
    torque = np.array(
        [
            _integral(r[1] * j[2] - r[2] * j[1], dv),
            _integral(r[2] * j[0] - r[0] * j[2], dv),
            _integral(r[0] * j[1] - r[1] * j[0], dv),
        ]
    )
    flow = total_current(df).as_array()
    mu = 0.5 * (torque - np.cross(centroid, flow)) / norm
    q, spread = quadrupole_from_second_moments(second, centroid)
    diagnostics = []
    if abs(norm - 1.0) > NORM_WARNING:
        message = f"grid norm is {norm:.9g}; refine the grid or enlarge the box"
        logger.warning(message)
        diagnostics.append(message)
    return MomentSet(
        mu=Vec3.from_array(mu),
        q=q,
        provenance="grid",
        norm=norm,
        centroid=Vec3.from_array(centroid),
        spread=spread,
        diagnostics=diagnostics,
    )


def grid_moments(spec: PacketSpec, g: GridConfig | None = None) -> MomentSet:
    """``integrate_moments(build_densities(spec, g))``."""
    return integrate_moments(build_densities(spec, g), g)


def lg_mean_radius(spec: PacketSpec, g: GridConfig | None = None) -> float:
    """sqrt(-Q_zz) from the grid, to compare with sqrt(|l|)/sigma."""
    if not isinstance(spec.family, LGVortex) or spec.family.ell == 0:
        raise InvalidConfig("lg_mean_radius needs an lg_vortex packet with l != 0")
    return math.sqrt(-grid_moments(spec, g).q.zz)


def dump_slice(df: DensityField, axis: int, index: int, out: TextIO) -> int:
    """Write the plane ``index`` normal to ``axis`` as CSV; returns the row count."""
    if axis not in (0, 1, 2):
        raise InvalidConfig(f"slice axis must be 0, 1 or 2, got {axis}")
    n = df.points_per_axis
    if not 0 <= index < n:
        raise InvalidConfig(f"slice index must lie in [0, {n}), got {index}")
    names = ("x", "y", "z")
    u_axis, v_axis = (a for a in range(3) if a != axis)
    rho = np.take(df.rho, index, axis=axis)
    current = [np.take(df.current[a], index, axis=axis) for a in range(3)]
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([names[u_axis], names[v_axis], "j0", "jx", "jy", "jz"])
    rows = 0
    for i, u in enumerate(df.axes[u_axis]):
        for k, v in enumerate(df.axes[v_axis]):
            writer.writerow(
                [repr(float(u)), repr(float(v)), repr(float(rho[i, k]))]
                + [repr(float(c[i, k])) for c in current]
            )
            rows += 1
    return rows
