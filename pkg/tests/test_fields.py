"""Tests for far-zone multipole fields."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from packet_multipoles.core import SymTensor3, Vec3
from packet_multipoles.errors import InvalidConfig, OriginSingularity
from packet_multipoles.fields import (
    FieldGrid,
    airy_field_components,
    dipole_coupling_energy,
    dipole_field,
    field_map,
    quadrupole_coupling_energy,
    quadrupole_field,
    to_cylindrical,
    total_field,
    vortex_field_components,
)
from packet_multipoles.moments import MomentSet, airy_moments, vortex_moments


def _random_points(rng, n):
    for _ in range(n):
        r = rng.uniform(1.0, 50.0)
        theta = math.acos(rng.uniform(-1.0, 1.0))
        phi = rng.uniform(0.0, 2.0 * math.pi)
        yield r, theta, phi, Vec3(
            x=r * math.sin(theta) * math.cos(phi),
            y=r * math.sin(theta) * math.sin(phi),
            z=r * math.cos(theta),
        )


class TestQuadrupoleField:
    """Tests for the generic quadrupole field and its specializations."""

    def test_on_axis(self):
        """On the z axis the vortex field is E_z = -(3/2) rho2 / r^4."""
        e = quadrupole_field(SymTensor3.diag(0.5, 0.5, -1.0), Vec3(z=10.0))
        assert e.as_array() == pytest.approx([0.0, 0.0, -1.5e-4], abs=1e-18)

    def test_vortex_components(self, rng):
        """The generic field reproduces the vortex (E_rho, 0, E_z) everywhere."""
        rho2 = 2.5
        q = SymTensor3.diag(0.5 * rho2, 0.5 * rho2, -rho2)
        for r, theta, _, point in _random_points(rng, 200):
            generic = to_cylindrical(quadrupole_field(q, point), point)
            e_rho, e_z = vortex_field_components(rho2, r, theta)
            assert (generic - Vec3(x=e_rho, z=e_z)).norm() <= 1e-10 * generic.norm()

    @pytest.mark.parametrize("eta", [0.0, 0.3, math.pi / 4, 1.2])
    def test_airy_components(self, rng, eta):
        """The generic field reproduces the Airy components everywhere."""
        xi3, sigma = 0.8, 1.2
        q = airy_moments(xi3 * math.cos(eta), xi3 * math.sin(eta), sigma).q
        for r, theta, phi, point in _random_points(rng, 200):
            generic = to_cylindrical(quadrupole_field(q, point), point)
            special = Vec3.from_array(airy_field_components(sigma, xi3, eta, r, theta, phi))
            assert (generic - special).norm() <= 1e-10 * generic.norm()

    def test_airy_equator(self):
        """On the equator E_rho r^4/(sigma^4 xi^6) is 3/2 at phi = 0 and -3/4 at phi = pi/2."""
        e0, _, _ = airy_field_components(1.0, 1.0, 0.0, 1.0, math.pi / 2, 0.0)
        e90, _, _ = airy_field_components(1.0, 1.0, 0.0, 1.0, math.pi / 2, math.pi / 2)
        zero, _, _ = airy_field_components(1.0, 1.0, 0.0, 1.0, math.pi / 2, math.acos(1 / math.sqrt(3)))
        assert e0 == pytest.approx(1.5)
        assert e90 == pytest.approx(-0.75)
        assert zero == pytest.approx(0.0, abs=1e-15)

    def test_airy_azimuthal_component_vanishes_at_45_degrees(self):
        """E_phi is proportional to cos(2 eta)."""
        _, e_phi, _ = airy_field_components(1.0, 1.0, math.pi / 4, 5.0, 1.0, 0.7)
        assert e_phi == pytest.approx(0.0, abs=1e-15)

    def test_falls_off_as_r4(self):
        """Doubling r divides the quadrupole field by 16."""
        q = SymTensor3.diag(1.0, -0.5, -0.5)
        near = quadrupole_field(q, Vec3(x=3.0, y=4.0, z=1.0))
        far = quadrupole_field(q, Vec3(x=6.0, y=8.0, z=2.0))
        assert far.as_array() == pytest.approx(near.as_array() / 16.0)

    def test_divergence_free(self, rng):
        """Away from the origin the quadrupole field has zero divergence."""
        q = SymTensor3.from_matrix(rng.normal(size=(3, 3)))
        q = SymTensor3.traceless(q.as_matrix() - q.trace() / 3.0 * np.eye(3))
        for r, _, _, point in _random_points(rng, 20):
            x = point.as_array()
            h = 1e-4 * r
            divergence = 0.0
            for axis in range(3):
                step = np.zeros(3)
                step[axis] = h
                forward = quadrupole_field(q, Vec3.from_array(x + step)).as_array()[axis]
                backward = quadrupole_field(q, Vec3.from_array(x - step)).as_array()[axis]
                divergence += (forward - backward) / (2.0 * h)
            assert abs(divergence) < 1e-5 * quadrupole_field(q, point).norm() / r

    def test_origin(self):
        """The fields are undefined at r = 0."""
        with pytest.raises(OriginSingularity):
            quadrupole_field(SymTensor3(), Vec3())


class TestTotalField:
    """Tests for the combined Coulomb, quadrupole and dipole fields."""

    def test_coulomb_only(self):
        """Zero moments leave the point-charge field."""
        sample = total_field(MomentSet(provenance="analytic"), Vec3(x=2.0))
        assert sample.e == Vec3(x=0.25)
        assert sample.h == Vec3()

    def test_dipole_on_axis(self):
        """On its axis a magnetic dipole gives H = 2 mu / r^3."""
        h = dipole_field(Vec3(z=0.5), Vec3(z=2.0))
        assert h.z == pytest.approx(0.125)

    def test_vortex_has_no_azimuthal_field(self):
        """E_phi and H_phi vanish for a vortex."""
        grid = FieldGrid(r_min=10.0, n_theta=7, n_phi=8)
        for sample in field_map(vortex_moments(3, 1.0, 1.0), grid):
            assert abs(sample.e.y) < 1e-15
            assert abs(sample.h.y) < 1e-15

    def test_origin_singularity(self):
        """total_field refuses r = 0."""
        with pytest.raises(OriginSingularity):
            total_field(MomentSet(provenance="analytic"), Vec3())


class TestFieldMap:
    """Tests for field-map grids and ordering."""

    def test_theta_major_ordering(self):
        """Rows run over r fastest, then phi, then theta."""
        grid = FieldGrid(r_min=10.0, r_max=20.0, n_r=2, theta_min=0.5, theta_max=1.5, n_theta=3, n_phi=4)
        rows = [s.row() for s in field_map(vortex_moments(1, 1.0, 1.0), grid)]
        assert len(rows) == 24
        assert rows[0]["r"] == pytest.approx(10.0)
        assert rows[1]["r"] == pytest.approx(20.0)
        assert rows[2]["phi"] == pytest.approx(math.pi / 2)
        assert rows[8]["theta"] == pytest.approx(1.0)

    def test_half_open_azimuth(self):
        """A full turn in phi does not repeat its first point."""
        assert FieldGrid(n_phi=4).phis() == pytest.approx(np.array([0.0, 0.5, 1.0, 1.5]) * math.pi)

    @pytest.mark.parametrize(
        "values",
        [{"r_min": 0.0}, {"r_min": 10.0, "r_max": 5.0}, {"n_theta": 0}, {"theta_min": 2.0, "theta_max": 1.0}],
    )
    def test_invalid_grids(self, values):
        """Non-positive radii, inverted ranges and empty axes are rejected."""
        with pytest.raises(ValidationError):
            FieldGrid(**values)


class TestCouplingEnergies:
    """Tests for energies in external fields."""

    def test_quadrupole_coupling(self):
        """U = -(1/6) Q_ab dE_a/dx_b."""
        gradient = np.diag([0.0, 0.0, 3.0])
        assert quadrupole_coupling_energy(SymTensor3.diag(1.0, 1.0, -2.0), gradient) == pytest.approx(1.0)

    def test_quadrupole_coupling_shape(self):
        """The field gradient must be 3x3."""
        with pytest.raises(InvalidConfig):
            quadrupole_coupling_energy(SymTensor3(), np.zeros((2, 2)))

    def test_dipole_coupling(self):
        """U = -mu.H for a vortex in a longitudinal field."""
        assert dipole_coupling_energy(vortex_moments(1, 1.0, 1.0), Vec3(), Vec3(z=2.0)) == pytest.approx(-1.0)
