"""Tests for closed-form moments and the dipole boost."""

import math

import pytest

from packet_multipoles.core import Vec3
from packet_multipoles.errors import DegenerateCat, InvalidConfig, SuperluminalBoost
from packet_multipoles.moments import (
    airy_moments,
    analytic_moments,
    boost_dipoles,
    cat_moments,
    exact_mean_radius,
    mean_radius,
    vortex_moments,
)
from packet_multipoles.packets import PacketSpec


class TestVortexMoments:
    """Tests for the vortex closed form."""

    def test_unit_vortex(self):
        """l = 1: mu_z = 1/2, Q = diag(1/2, 1/2, -1)."""
        ms = vortex_moments(1, 1.0, 1.0)
        assert ms.mu == Vec3(z=0.5)
        assert ms.q.components() == (0.5, 0.5, -1.0, 0.0, 0.0, 0.0)
        assert ms.q.trace() == 0.0

    def test_scaling_with_winding_width_and_mass(self):
        """mu_z = l/2m and Q_zz = -|l|/sigma^2."""
        ms = vortex_moments(-3, 2.0, 2.0)
        assert ms.mu.z == -0.75
        assert ms.q.zz == -0.75
        assert ms.q.xx == 0.375

    def test_mean_radius(self):
        """-Q_zz is the square of sqrt(|l|) sigma_perp."""
        assert mean_radius(4, 0.5) == 4.0
        assert mean_radius(4, 0.5) ** 2 == -vortex_moments(4, 0.5, 1.0).q.zz

    def test_exact_mean_radius_approaches_estimate(self):
        """The exact mean radius is 33% larger at |l| = 1 and converges for large |l|."""
        assert exact_mean_radius(1, 1.0) / mean_radius(1, 1.0) == pytest.approx(1.329, abs=1e-3)
        assert exact_mean_radius(1000, 1.0) / mean_radius(1000, 1.0) == pytest.approx(1.0, abs=1e-3)


class TestAiryMoments:
    """Tests for the Airy closed form."""

    def test_single_axis(self):
        """xi_y = 0: Q = (sigma^4 xi^6/2) diag(2, -1, -1)."""
        ms = airy_moments(1.0, 0.0, 1.0)
        assert ms.q.components() == pytest.approx((1.0, -0.5, -0.5, 0.0, 0.0, 0.0))
        assert ms.centroid == Vec3(x=-0.5)
        assert ms.diagnostics == []

    def test_symmetric_axes(self):
        """Equal scales along x and y leave Q_xx = Q_yy."""
        ms = airy_moments(0.7, 0.7, 1.3)
        assert ms.q.xx == pytest.approx(ms.q.yy)
        assert ms.q.trace() == pytest.approx(0.0, abs=1e-15)

    def test_wide_airy_is_flagged(self, caplog):
        """|xi| beyond sigma_perp is recorded as a diagnostic and logged."""
        ms = airy_moments(8.0, 0.0, 1.0)
        assert len(ms.diagnostics) == 1
        assert "exceeds the packet width" in caplog.text


class TestCatMoments:
    """Tests for the cat closed form."""

    def test_even_cat(self):
        """Q = diag(2, -1, -1) r0^2 / (1 + exp(-sigma^2 r0^2)) for r0 along x."""
        ms = cat_moments(Vec3(x=1.0), "even", 1.0)
        denominator = 1.0 + math.exp(-1.0)
        assert ms.q.components() == pytest.approx((2 / denominator, -1 / denominator, -1 / denominator, 0, 0, 0))

    def test_odd_cat_larger_than_even(self):
        """Odd parity divides by 1 - exp(-sigma^2 r0^2)."""
        even = cat_moments(Vec3(x=0.5), "even", 1.0)
        odd = cat_moments(Vec3(x=0.5), "odd", 1.0)
        assert odd.q.xx > even.q.xx

    def test_off_diagonal(self):
        """A diagonal separation gives Q_xy = 3 r0_x r0_y / denominator."""
        ms = cat_moments(Vec3(x=1.0, y=1.0), "even", 2.0)
        assert ms.q.xy == pytest.approx(3.0 / (1.0 + math.exp(-8.0)))

    def test_far_separated_limit(self):
        """For sigma r0 >> 1 both parities tend to 3 r0 r0 - r0^2 I."""
        r0 = Vec3(y=10.0)
        assert cat_moments(r0, "odd", 1.0).q.yy == pytest.approx(200.0)
        assert cat_moments(r0, "even", 1.0).q.yy == pytest.approx(200.0)

    def test_degenerate_odd_cat(self):
        """Odd parity at zero separation raises DegenerateCat."""
        with pytest.raises(DegenerateCat):
            cat_moments(Vec3(), "odd", 1.0)

    def test_longitudinal_separation(self):
        """Separations along z are rejected."""
        with pytest.raises(InvalidConfig):
            cat_moments(Vec3(z=1.0), "even", 1.0)


class TestBoost:
    """Tests for the dipole boost."""

    def test_longitudinal_boost_scales_mu(self):
        """A z boost gives mu_z = l/(2 <eps>) with <eps> = gamma m."""
        ms = boost_dipoles(vortex_moments(1, 1.0, 1.0), Vec3(z=0.6), 1.0)
        assert ms.mu.z == pytest.approx(0.5 / 1.25)
        assert ms.frame == "lab"

    def test_transverse_boost_induces_dipole(self):
        """A transverse boost gives |d| = beta l/(2m)."""
        ms = boost_dipoles(vortex_moments(1, 1.0, 1.0), Vec3(x=0.6), 1.0)
        assert ms.d.norm() == pytest.approx(0.3)
        assert ms.mu.z == pytest.approx(0.5)

    def test_quadrupole_untouched(self):
        """Q stays in the rest frame."""
        rest = vortex_moments(2, 1.0, 1.0)
        assert boost_dipoles(rest, Vec3(z=0.9), 1.0).q == rest.q

    def test_zero_velocity(self):
        """No boost returns the rest-frame moments."""
        rest = vortex_moments(2, 1.0, 1.0)
        assert boost_dipoles(rest, Vec3(), 1.0) is rest

    def test_superluminal(self):
        """|beta| >= 1 is rejected."""
        with pytest.raises(SuperluminalBoost):
            boost_dipoles(vortex_moments(1, 1.0, 1.0), Vec3(x=1.0), 1.0)


class TestAnalyticDispatch:
    """Tests for per-family dispatch."""

    def test_plain_gaussian_is_zero(self):
        """A phase-free Gaussian has no intrinsic moments."""
        ms = analytic_moments(PacketSpec.gauss())
        assert ms is not None
        assert all(c == 0.0 for c in ms.components())

    def test_general_phase_has_no_closed_form(self):
        """A momentum-dependent phase returns None."""
        assert analytic_moments(PacketSpec.gauss("p_x*p_y")) is None

    def test_shift_moves_only_the_centroid(self):
        """Translations move the centroid and leave intrinsic moments alone."""
        ms = analytic_moments(PacketSpec.lg(1, shift=(1.0, 2.0, 0.0)))
        assert ms.centroid == Vec3(x=1.0, y=2.0)
        assert ms.mu == Vec3(z=0.5)
