"""Static far-zone fields of a packet's moments (Gaussian units, natural scales).

E = n/r^2 (unit charge) + E_Q, H = H_mu. Valid far from the packet, where
higher multipoles are negligible.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import NDArray

from packet_multipoles.core.tensors import SymTensor3, Vec3
from packet_multipoles.errors import InvalidConfig, OriginSingularity
from packet_multipoles.fields.models import FieldSample
from packet_multipoles.moments.models import MomentSet


def _radius(r: Vec3 | float) -> float:
    radius = r.norm() if isinstance(r, Vec3) else float(r)
    if radius <= 0.0:
        raise OriginSingularity("multipole fields are undefined at r = 0")
    return radius


def quadrupole_field(q: SymTensor3, r: Vec3) -> Vec3:
    """E_a = (5/2) r_a (r.Q.r)/r^7 - Q_ab r_b/r^5, Cartesian."""
    radius = _radius(r)
    x = r.as_array()
    qr = q.contract(x)
    e = 2.5 * x * float(x @ qr) / radius**7 - qr / radius**5
    return Vec3.from_array(e)


def vortex_field_components(rho2: float, r: float, theta: float) -> tuple[float, float]:
    """(E_rho, E_z) of the vortex quadrupole with <rho>^2 = ``rho2``; E_phi vanishes."""
    scale = 0.75 * rho2 / _radius(r) ** 4
    c, s = math.cos(theta), math.sin(theta)
    return scale * s * (1.0 - 5.0 * c * c), scale * c * (3.0 - 5.0 * c * c)


def airy_field_components(
    sigma: float, xi3: float, eta: float, r: float, theta: float, phi: float
) -> tuple[float, float, float]:
    """(E_rho, E_phi, E_z) of the Airy quadrupole with (xi_x3, xi_y3) = xi3 (cos eta, sin eta).

    On the equator E_rho reduces to (1/4)(sigma^4 xi^6/r^4)(3 - 5cos^2 theta) A(phi);
    off it the -5cos^2(theta) term in the bracket is kept.
    """
    scale = sigma**4 * xi3**2 / _radius(r) ** 4
    ct, st = math.cos(theta), math.sin(theta)
    cp, sp = math.cos(phi), math.sin(phi)
    ce2 = math.cos(eta) ** 2
    azimuthal = 2.0 - 3.0 * ce2 + 3.0 * cp * cp * (2.0 * ce2 - 1.0)
    e_rho = 0.25 * scale * st * ((3.0 - 5.0 * ct * ct) * azimuthal - 5.0 * ct * ct)
    e_phi = 1.5 * scale * st * cp * sp * math.cos(2.0 * eta)
    e_z = (
        0.25
        * scale
        * ct
        * (5.0 * (3.0 * st * st * ce2 * math.cos(2.0 * phi) + st * st * (2.0 - 3.0 * cp * cp) - ct * ct) + 2.0)
    )
    return e_rho, e_phi, e_z


def dipole_field(mu: Vec3, r: Vec3) -> Vec3:
    """H = (3 n (n.mu) - mu)/r^3, Cartesian."""
    radius = _radius(r)
    n = r.as_array() / radius
    m = mu.as_array()
    return Vec3.from_array((3.0 * n * float(n @ m) - m) / radius**3)


def coulomb_field(r: Vec3, charge: float = 1.0) -> Vec3:
    radius = _radius(r)
    return r.scaled(charge / radius**3)


def total_field(ms: MomentSet, r: Vec3, charge: float = 1.0) -> FieldSample:
    """Coulomb plus quadrupole E and magnetic-dipole H, reported in the cylindrical basis."""
    e = coulomb_field(r, charge) + quadrupole_field(ms.q, r)
    return FieldSample.from_cartesian(r, e, dipole_field(ms.mu, r))


def quadrupole_coupling_energy(q: SymTensor3, field_gradient: NDArray[np.float64]) -> float:
    """U = -(1/6) Q_ab dE_a/dx_b for an external field gradient ``field_gradient[a, b]``."""
    gradient = np.asarray(field_gradient, dtype=float)
    if gradient.shape != (3, 3):
        raise InvalidConfig(f"field gradient must be 3x3, got shape {gradient.shape}")
    return -float(np.sum(q.as_matrix() * gradient)) / 6.0


def dipole_coupling_energy(ms: MomentSet, e: Vec3, h: Vec3) -> float:
    """U = -d.E - mu.H in uniform external fields."""
    return -ms.d.dot(e) - ms.mu.dot(h)
