"""Built-in invariant suite run by ``packet-multipoles selfcheck``."""

from __future__ import annotations

import logging
import math
from collections.abc import Callable

import numpy as np
from pydantic import BaseModel, ConfigDict

from packet_multipoles.cli.commands import cmd_estimate, cmd_fig1
from packet_multipoles.config.numerics import GridConfig, QuadratureConfig
from packet_multipoles.core.tensors import SymTensor3, Vec3
from packet_multipoles.errors import MultipoleError, VortexDivergence
from packet_multipoles.fields.models import to_cylindrical
from packet_multipoles.fields.multipole import (
    airy_field_components,
    quadrupole_field,
    vortex_field_components,
)
from packet_multipoles.moments.analytic import airy_moments, cat_moments, vortex_moments
from packet_multipoles.moments.numeric import moments_general, moments_phase_formula, shift_invariance_check
from packet_multipoles.oracle.grid import grid_moments
from packet_multipoles.packets.spec import PacketSpec
from packet_multipoles.phase import central_difference, evaluate, parse

logger = logging.getLogger(__name__)

SEED = 20190601


class CheckResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    detail: str


class SelfCheckReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    checks: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)


def _within(name: str, error: float, tolerance: float) -> CheckResult:
    return CheckResult(name=name, passed=error <= tolerance, detail=f"max error {error:.3g} (limit {tolerance:.0e})")


def _vortex_quadrature(quad: QuadratureConfig) -> CheckResult:
    error = 0.0
    for ell, sigma, mass in ((1, 1.0, 1.0), (-2, 0.5, 2.0), (5, 2.0, 1.0)):
        spec = PacketSpec.lg(ell, sigma=sigma, mass=mass)
        error = max(error, moments_general(spec, quad).max_delta(vortex_moments(ell, sigma, mass)))
    return _within("vortex moments, quadrature vs closed form", error, 1e-6)


def _airy_paths(quad: QuadratureConfig) -> CheckResult:
    spec = PacketSpec.airy(1.0, 0.5)
    reference = airy_moments(1.0, 0.5, 1.0)
    error = max(
        moments_phase_formula(spec, quad).max_delta(reference),
        moments_general(spec, quad).max_delta(reference),
    )
    return _within("Airy moments, both quadrature formulas vs closed form", error, 1e-8)


def _cat_quadrature(quad: QuadratureConfig) -> CheckResult:
    error = 0.0
    for parity in ("even", "odd"):
        for separation in (0.3, 1.0, 3.0):
            r0 = Vec3(x=separation)
            spec = PacketSpec.cat(r0, parity)
            error = max(error, moments_general(spec, quad).max_delta(cat_moments(r0, parity, 1.0)))
    return _within("cat moments, quadrature vs closed form", error, 1e-6)


def _shift(quad: QuadratureConfig) -> CheckResult:
    report = shift_invariance_check(PacketSpec.lg(1), Vec3(x=5.0, y=-3.0), quad)
    error = max(report.mu_delta, report.q_delta, report.centroid_delta)
    return _within("intrinsic moments under translation", error, 1e-8)


def _divergence_guard(quad: QuadratureConfig) -> CheckResult:
    try:
        moments_general(PacketSpec.gauss("3*phi_p"), quad)
    except VortexDivergence:
        return CheckResult(name="vortex phase on a plain Gaussian", passed=True, detail="refused")
    return CheckResult(name="vortex phase on a plain Gaussian", passed=False, detail="returned a number")


def _field_identities() -> CheckResult:
    rng = np.random.default_rng(SEED)
    error = 0.0
    rho2 = 1.7
    vortex_q = SymTensor3.diag(0.5 * rho2, 0.5 * rho2, -rho2)
    xi3, eta, sigma = 0.8, 0.3, 1.2
    airy_q = airy_moments(xi3 * math.cos(eta), xi3 * math.sin(eta), sigma).q
    for _ in range(1000):
        r = rng.uniform(1.0, 50.0)
        theta = math.acos(rng.uniform(-1.0, 1.0))
        phi = rng.uniform(0.0, 2.0 * math.pi)
        point = Vec3(x=r * math.sin(theta) * math.cos(phi), y=r * math.sin(theta) * math.sin(phi), z=r * math.cos(theta))
        generic = to_cylindrical(quadrupole_field(vortex_q, point), point)
        e_rho, e_z = vortex_field_components(rho2, r, theta)
        error = max(error, (generic - Vec3(x=e_rho, z=e_z)).norm() / generic.norm())
        generic = to_cylindrical(quadrupole_field(airy_q, point), point)
        special = Vec3.from_array(airy_field_components(sigma, xi3, eta, r, theta, phi))
        error = max(error, (generic - special).norm() / generic.norm())
    return _within("generic quadrupole field vs vortex and Airy components", error, 1e-12)


def _fig1() -> CheckResult:
    rows = cmd_fig1(samples=360)
    error = max(abs(rows[0]["E_rho_normalized"] - 1.5), abs(rows[90]["E_rho_normalized"] + 0.75))
    return _within("Airy equatorial field extrema", error, 1e-12)


def _estimates() -> CheckResult:
    low = cmd_estimate("0.1 nm").q_e_cm2
    high = cmd_estimate("10 um").q_e_cm2
    passed = round(math.log10(low)) == -16 and round(math.log10(high)) == -6
    return CheckResult(name="SI quadrupole scale", passed=passed, detail=f"{low:.3g} .. {high:.3g} e cm^2")


def _autodiff() -> CheckResult:
    rng = np.random.default_rng(SEED)
    expressions = [
        "3*phi_p + p_z",
        "(1/3)*(p_x^3 + 0.5*p_y^3)",
        "sin(p_x*p_y) + cos(p_z)/(2 + p_perp^2)",
        "atan2(p_y, p_x + 3) * sqrt(1 + p_z^2)",
    ]
    points = rng.uniform(-2.0, 2.0, (3, 200))
    points[0] += np.where(points[0] >= 0.0, 0.1, -0.1)
    error = 0.0
    for source in expressions:
        expr = parse(source)
        _, exact = evaluate(expr, points)
        approx = central_difference(expr, points, 1e-5)
        error = max(error, float(np.max(np.abs(exact - approx) / (1.0 + np.abs(exact)))))
    return _within("phase gradients vs central differences", error, 1e-6)


def _grid_oracle() -> CheckResult:
    spec = PacketSpec.lg(1)
    error = grid_moments(spec, GridConfig(points_per_axis=64)).max_delta(vortex_moments(1, 1.0, 1.0))
    return _within("vortex moments, position grid vs closed form", error, 1e-3)


def run_selfcheck(include_grid: bool = False) -> SelfCheckReport:
    """Run every check; a check that raises counts as failed."""
    quad = QuadratureConfig(nodes_per_axis=32)
    checks: list[Callable[[], CheckResult]] = [
        lambda: _vortex_quadrature(quad),
        lambda: _airy_paths(quad),
        lambda: _cat_quadrature(quad),
        lambda: _shift(quad),
        lambda: _divergence_guard(quad),
        _field_identities,
        _fig1,
        _estimates,
        _autodiff,
    ]
    if include_grid:
        checks.append(_grid_oracle)
    results = []
    for check in checks:
        try:
            result = check()
        except MultipoleError as e:
            result = CheckResult(name=getattr(check, "__name__", "check"), passed=False, detail=str(e))
        level = logging.INFO if result.passed else logging.ERROR
        logger.log(level, f"{'PASS' if result.passed else 'FAIL'} {result.name}: {result.detail}")
        results.append(result)
    return SelfCheckReport(checks=results)
