"""Commands behind the CLI and the HTTP API.

Each ``cmd_*`` returns a report model; rendering and exit codes are left to
the caller.
"""

from __future__ import annotations

import itertools
import logging
import math
import time
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from packet_multipoles.config.packet_file import PacketFile, load_packet_file
from packet_multipoles.config.settings import Settings, get_settings
from packet_multipoles.core.units import UnitContext, mu_to_bohr, parse_length, q_to_si
from packet_multipoles.errors import InvalidConfig
from packet_multipoles.fields.maps import field_map
from packet_multipoles.fields.models import FieldGrid
from packet_multipoles.fields.multipole import airy_field_components
from packet_multipoles.moments.analytic import analytic_moments
from packet_multipoles.moments.models import MomentSet
from packet_multipoles.moments.numeric import moments_general, moments_phase_formula, phase_diagnostics
from packet_multipoles.oracle.grid import grid_moments
from packet_multipoles.packets.spec import Airy, GaussPhase

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1"

PathName = Literal["analytic", "quadrature", "phase", "grid"]
PATH_ORDER: tuple[PathName, ...] = ("analytic", "quadrature", "phase", "grid")
DEFAULT_PATHS: tuple[PathName, ...] = ("analytic", "quadrature", "grid")

Overrides = Mapping[str, Mapping[str, Any]]


class RunReport(BaseModel):
    """Moments from each requested path with their pairwise agreement."""

    model_config = ConfigDict(frozen=True)

    schema_version: str = SCHEMA_VERSION
    packet: dict[str, Any]
    paths: dict[str, MomentSet]
    skipped: dict[str, str] = Field(default_factory=dict)
    deltas: dict[str, float] = Field(default_factory=dict)
    tolerances: dict[str, float] = Field(default_factory=dict)
    si: dict[str, dict[str, float]] | None = None
    wall_time_s: float | None = None

    @property
    def failures(self) -> list[str]:
        return [pair for pair, delta in self.deltas.items() if delta > self.tolerances[pair]]

    @property
    def ok(self) -> bool:
        return not self.failures


def _tolerance(pair: tuple[str, str], reference: MomentSet, settings: Settings) -> float:
    base = settings.grid_agreement if "grid" in pair else settings.quadrature_agreement
    scale = max(1.0, *(abs(c) for c in reference.components()))
    return base * scale


def _si_block(ms: MomentSet, sigma: float, units: UnitContext) -> dict[str, float]:
    # Quadrupoles are reported in units of sigma_perp^2 before scaling to cm^2.
    q = q_to_si(ms.q.scaled(sigma**2), units)
    mu = mu_to_bohr(ms.mu, units)
    names = ("q_xx", "q_yy", "q_zz", "q_xy", "q_xz", "q_yz")
    return {
        **{f"{name}_e_cm2": value for name, value in zip(names, q.components(), strict=True)},
        "mu_x_magneton": mu.x,
        "mu_y_magneton": mu.y,
        "mu_z_magneton": mu.z,
    }


def run_moments(
    pf: PacketFile,
    paths: Sequence[str] = DEFAULT_PATHS,
    si: bool = False,
    settings: Settings | None = None,
) -> RunReport:
    """Compute the requested paths for an already loaded packet file."""
    settings = settings or get_settings()
    unknown = set(paths) - set(PATH_ORDER)
    if unknown or not paths:
        raise InvalidConfig(f"paths must be a non-empty subset of {', '.join(PATH_ORDER)}")
    spec = pf.packet
    started = time.perf_counter()
    phase_diagnostics(spec)

    results: dict[str, MomentSet] = {}
    skipped: dict[str, str] = {}
    for path in (p for p in PATH_ORDER if p in paths):
        logger.info(f"Computing {path} moments for {spec.kind} packet")
        if path == "analytic":
            closed = analytic_moments(spec)
            if closed is None:
                skipped[path] = "no closed form for a general phase"
                continue
            results[path] = closed
        elif path == "quadrature":
            results[path] = moments_general(spec, pf.quadrature)
        elif path == "phase":
            if not isinstance(spec.family, GaussPhase | Airy):
                skipped[path] = "phase-covariance formula needs a pure-phase packet"
                continue
            results[path] = moments_phase_formula(spec, pf.quadrature)
        else:
            results[path] = grid_moments(spec, pf.grid)

    deltas: dict[str, float] = {}
    tolerances: dict[str, float] = {}
    for first, second in itertools.combinations(results, 2):
        key = f"{first}-{second}"
        deltas[key] = results[first].max_delta(results[second])
        tolerances[key] = _tolerance((first, second), results[first], settings)

    si_values = None
    if si:
        si_values = {name: _si_block(ms, spec.sigma, pf.units) for name, ms in results.items()}

    report = RunReport(
        packet=pf.echo(),
        paths=results,
        skipped=skipped,
        deltas=deltas,
        tolerances=tolerances,
        si=si_values,
        wall_time_s=time.perf_counter() - started,
    )
    for pair in report.failures:
        logger.warning(f"Paths {pair} disagree: {deltas[pair]:.3g} > {tolerances[pair]:.3g}")
    logger.info(f"Moments done in {report.wall_time_s:.2f} s")
    return report


def cmd_moments(
    config_path: str | Path,
    paths: Sequence[str] = DEFAULT_PATHS,
    si: bool = False,
    overrides: Overrides | None = None,
) -> RunReport:
    """Load ``config_path`` and compute the requested paths."""
    return run_moments(load_packet_file(config_path, overrides), paths, si)


def _field_moments(pf: PacketFile) -> MomentSet:
    return analytic_moments(pf.packet) or moments_general(pf.packet, pf.quadrature)


def field_grid(**values: Any) -> FieldGrid:
    """Validate field-map flags, turning validation errors into ``InvalidConfig``."""
    try:
        return FieldGrid.model_validate({k: v for k, v in values.items() if v is not None})
    except ValidationError as e:
        raise InvalidConfig(f"invalid field grid: {e.errors()[0]['msg']}") from e


def run_fieldmap(pf: PacketFile, grid: FieldGrid) -> list[dict[str, float]]:
    """Field rows for the packet's moments over ``grid`` (theta-major, then phi)."""
    ms = _field_moments(pf)
    rows = [sample.row() for sample in field_map(ms, grid)]
    logger.info(f"Evaluated {len(rows)} field samples")
    return rows


def cmd_fieldmap(
    config_path: str | Path, grid: FieldGrid, overrides: Overrides | None = None
) -> list[dict[str, float]]:
    return run_fieldmap(load_packet_file(config_path, overrides), grid)


def cmd_fig1(xi3: float = 1.0, sigma: float = 1.0, r: float = 10.0, samples: int = 360) -> list[dict[str, float]]:
    """Radial Airy field on the equator at eta = 0 over phi in [0, 2 pi).

    ``E_rho_normalized`` is E_rho r^4/(sigma^4 xi^6): 3/2 at phi = 0, -3/4 at
    phi = pi/2, zero where cos^2(phi) = 1/3.
    """
    if samples < 16:
        raise InvalidConfig("fig1 needs at least 16 samples")
    if r <= 0.0 or sigma <= 0.0:
        raise InvalidConfig("fig1 needs r > 0 and sigma > 0")
    if xi3 == 0.0:
        raise InvalidConfig("fig1 needs a nonzero xi")
    scale = sigma**4 * xi3**2 / r**4
    rows = []
    for i in range(samples):
        phi = 2.0 * math.pi * i / samples
        e_rho, _, _ = airy_field_components(sigma, xi3, 0.0, r, math.pi / 2.0, phi)
        rows.append({"phi": phi, "E_rho": e_rho, "E_rho_normalized": e_rho / scale})
    return rows


class EstimateReport(BaseModel):
    """Order-of-magnitude moments for a packet of physical width sigma_perp."""

    model_config = ConfigDict(frozen=True)

    sigma_perp_m: float
    q_e_cm2: float = Field(description="e sigma_perp^2, times |l| when l is given")
    airy_q_e_cm2: float = Field(description="upper scale of an Airy quadrupole, e sigma_perp^2")
    vortex_q_e_cm2: float | None = None
    mu_magneton: float | None = Field(None, description="vortex magnetic moment in magnetons, equal to l")
    cat_q_e_cm2: float | None = Field(None, description="e r0^2 for a cat state of separation r0")


def cmd_estimate(sigma_perp: str, ell: int | None = None, r0: str | None = None) -> EstimateReport:
    """SI-scale estimates from a width such as ``"0.1 nm"`` or ``"10 um"``."""
    meters = parse_length(sigma_perp)
    base = (meters * 100.0) ** 2
    vortex = abs(ell) * base if ell else None
    cat = None
    if r0 is not None:
        separation = parse_length(r0)
        if separation < meters:
            logger.warning("cat separation below sigma_perp: the two components overlap strongly")
        cat = (separation * 100.0) ** 2
    return EstimateReport(
        sigma_perp_m=meters,
        q_e_cm2=vortex if vortex is not None else base,
        airy_q_e_cm2=base,
        vortex_q_e_cm2=vortex,
        mu_magneton=float(ell) if ell else None,
        cat_q_e_cm2=cat,
    )
