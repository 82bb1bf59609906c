"""Normalized wave functions psi(p) and, where they exist, psi(r).

Normalization is int d^3p/(2pi)^3 |psi(p)|^2 = 1. Every family is the shared
Gaussian envelope

    G(p) = (2 sqrt(pi)/sigma)^(3/2) exp(-|p - <p>|^2 / (2 sigma^2))

times a family factor, times exp(-i shift.p). Arrays of momenta have shape
``(3, N)``; amplitudes come back as complex ``(N,)`` and gradients as
complex ``(3, N)``.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import NDArray
from scipy.special import gammaln

from packet_multipoles.core.tensors import Vec3
from packet_multipoles.errors import DegenerateCat
from packet_multipoles.packets.spec import Airy, Cat, GaussPhase, LGVortex, PacketSpec, cat_overlap
from packet_multipoles.phase import evaluate
from packet_multipoles.phase.ast import VARIABLES, contains

Real = NDArray[np.float64]
Complex = NDArray[np.complex128]

DEGENERATE_CAT = 1e-6


def envelope_log_norm(sigma: float) -> float:
    """log of the Gaussian prefactor (2 sqrt(pi)/sigma)^(3/2)."""
    return 1.5 * math.log(2.0 * math.sqrt(math.pi) / sigma)


def _offsets(spec: PacketSpec, points: Real) -> Real:
    return points - spec.mean_p.as_array()[:, None]


def _shift_phase(spec: PacketSpec, points: Real) -> Real:
    return -(spec.shift.as_array() @ points)


def cat_normalization(spec: PacketSpec) -> float:
    """1/(sqrt(2) sqrt(1 +- exp(-sigma^2 r0^2)))."""
    assert isinstance(spec.family, Cat)
    if spec.family.parity == "odd" and spec.sigma * spec.family.r0.norm() < DEGENERATE_CAT:
        raise DegenerateCat(
            f"odd cat state degenerates at sigma*|r0| = {spec.sigma * spec.family.r0.norm():.3g}"
        )
    return 1.0 / (math.sqrt(2.0) * math.sqrt(1.0 + spec.family.sign * cat_overlap(spec)))


def _lg_parts(spec: PacketSpec, points: Real, log_gauss: Real) -> tuple[Complex, Complex]:
    """LG amplitude written as W * z/sigma with z = p_x + i sgn(l) p_y.

    W carries |z|^(L-1) in log space, so the amplitude and its gradient stay
    finite on the axis and for large |l|.
    """
    assert isinstance(spec.family, LGVortex)
    order = abs(spec.family.ell)
    sign = 1.0 if spec.family.ell > 0 else -1.0
    px, py = points[0], points[1]
    z = px + 1j * sign * py
    log_w = log_gauss - 0.5 * gammaln(order + 1)
    if order > 1:
        with np.errstate(divide="ignore"):
            log_w = log_w + (order - 1) * np.log(np.hypot(px, py) / spec.sigma)
    w = np.exp(log_w) * np.exp(1j * sign * (order - 1) * np.arctan2(py, px))
    psi = w * z / spec.sigma
    dpoly = np.zeros((3, points.shape[1]), dtype=complex)
    dpoly[0] = order * w / spec.sigma
    dpoly[1] = 1j * sign * order * w / spec.sigma
    return psi, dpoly


def psi_p_and_grad(spec: PacketSpec, points: Real, *, derivatives: bool = True) -> tuple[Complex, Complex]:
    """psi(p) and its momentum gradient at ``points``."""
    points = np.asarray(points, dtype=float)
    q = _offsets(spec, points)
    log_gauss = envelope_log_norm(spec.sigma) - np.sum(q * q, axis=0) / (2.0 * spec.sigma**2)
    # d log(G S)/dp: Gaussian envelope plus the translation phase.
    dlog = -q / spec.sigma**2 - 1j * spec.shift.as_array()[:, None]
    shift = np.exp(1j * _shift_phase(spec, points))
    family = spec.family

    match family:
        case GaussPhase():
            phi, dphi = evaluate(family.expr, points, derivatives=derivatives)
            psi = np.exp(log_gauss + 1j * phi) * shift
            grad = psi * (dlog + 1j * dphi) if derivatives else np.zeros((3, psi.size), complex)
            return psi, grad
        case Airy():
            phi = (family.xi_x3 * points[0] ** 3 + family.xi_y3 * points[1] ** 3) / 3.0
            psi = np.exp(log_gauss + 1j * phi) * shift
            dphi = np.stack(
                [family.xi_x3 * points[0] ** 2, family.xi_y3 * points[1] ** 2, np.zeros_like(phi)]
            )
            return psi, psi * (dlog + 1j * dphi)
        case LGVortex(ell=0):
            psi = np.exp(log_gauss) * shift
            return psi, psi * dlog
        case LGVortex():
            core, dpoly = _lg_parts(spec, points, log_gauss)
            psi = core * shift
            return psi, psi * dlog + dpoly * shift
        case Cat():
            norm = cat_normalization(spec)
            r0 = family.r0.as_array()
            arg = r0 @ points
            gauss = np.exp(log_gauss) * shift
            if family.parity == "even":
                factor = 2.0 * norm * np.cos(arg) + 0j
                dfactor = -2.0 * norm * np.sin(arg) * r0[:, None] + 0j
            else:
                factor = -2j * norm * np.sin(arg)
                dfactor = -2j * norm * np.cos(arg) * r0[:, None]
            psi = gauss * factor
            return psi, psi * dlog + gauss * dfactor
    raise TypeError(f"unsupported packet family {family!r}")


def psi_p_values(spec: PacketSpec, points: Real) -> Complex:
    """psi(p) without the gradient."""
    psi, _ = psi_p_and_grad(spec, points, derivatives=False)
    return psi


def psi_p_central_grad(spec: PacketSpec, points: Real, h: float) -> tuple[Complex, Complex]:
    """psi(p) with a central-difference gradient of relative step ``h``."""
    points = np.asarray(points, dtype=float)
    step = h * spec.sigma
    grad = np.empty((3, points.shape[1]), dtype=complex)
    for a in range(3):
        offset = np.zeros((3, 1))
        offset[a] = step
        grad[a] = (psi_p_values(spec, points + offset) - psi_p_values(spec, points - offset)) / (2.0 * step)
    return psi_p_values(spec, points), grad


def psi_p(spec: PacketSpec, p: Vec3) -> complex:
    """Normalized momentum amplitude at a single momentum."""
    return complex(psi_p_values(spec, p.as_array()[:, None])[0])


def _gauss_r(spec: PacketSpec, r: Real) -> Complex:
    """Position form of the phase-free envelope centered at the origin."""
    r2 = np.sum(r * r, axis=0)
    return (
        spec.sigma**1.5
        / math.pi**0.75
        * np.exp(1j * spec.p0 * r[2] - 0.5 * spec.sigma**2 * r2)
    )


def has_closed_position_form(spec: PacketSpec) -> bool:
    family = spec.family
    if isinstance(family, GaussPhase):
        return not contains(family.expr.root, frozenset(VARIABLES))
    return isinstance(family, LGVortex | Cat)


def psi_r_closed_values(spec: PacketSpec, points: Real) -> Complex | None:
    """Closed-form psi(r) at ``points`` (3, N), or ``None`` when no closed form exists."""
    if not has_closed_position_form(spec):
        return None
    r = np.asarray(points, dtype=float) - spec.shift.as_array()[:, None]
    family = spec.family
    match family:
        case GaussPhase():
            constant, _ = evaluate(family.expr, np.zeros(3), derivatives=False)
            return _gauss_r(spec, r) * np.exp(1j * float(constant))
        case LGVortex(ell=0):
            return _gauss_r(spec, r)
        case LGVortex():
            order = abs(family.ell)
            rho = np.hypot(r[0], r[1])
            with np.errstate(divide="ignore"):
                log_radial = order * np.log(spec.sigma * rho) - 0.5 * gammaln(order + 1)
            azimuth = np.exp(1j * family.ell * np.arctan2(r[1], r[0]))
            return (1j ** (order % 4)) * np.exp(log_radial) * azimuth * _gauss_r(spec, r)
        case Cat():
            norm = cat_normalization(spec)
            r0 = family.r0.as_array()[:, None]
            plus, minus = _gauss_r(spec, r - r0), _gauss_r(spec, r + r0)
            return norm * (plus + family.sign * minus)
    return None


def psi_r_closed(spec: PacketSpec, r: Vec3) -> complex | None:
    """Closed-form position amplitude at ``r``; ``None`` for Airy and general phases."""
    values = psi_r_closed_values(spec, r.as_array()[:, None])
    return None if values is None else complex(values[0])
