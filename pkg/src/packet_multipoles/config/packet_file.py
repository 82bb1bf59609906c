"""Packet configuration files.

A packet file is TOML (or JSON with the same layout)::

    [packet]
    family = "lg_vortex"     # gauss_phase | lg_vortex | airy | cat
    ell = 3
    sigma = 1.0
    mean_p = [0.0, 0.0, 5.0]
    mass = 1.0

    [quadrature]
    nodes_per_axis = 48

    [grid]
    points_per_axis = 128

    [units]
    sigma_perp = "0.1 nm"

Family parameters live next to the envelope parameters in ``[packet]``:
``phase`` and ``params`` for gauss_phase, ``ell`` for lg_vortex, ``xi_x3``
and ``xi_y3`` for airy, ``r0`` and ``parity`` for cat.
"""

from __future__ import annotations

import json
import logging
import sys
from collections.abc import Mapping
from pathlib import Path
from typing import Any

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from pydantic import BaseModel, ConfigDict, ValidationError

from packet_multipoles.config.numerics import GridConfig, QuadratureConfig
from packet_multipoles.core.units import UnitContext, parse_length
from packet_multipoles.errors import InvalidConfig
from packet_multipoles.packets.spec import PacketSpec

logger = logging.getLogger(__name__)

ENVELOPE_KEYS = ("sigma", "mean_p", "mass", "shift")
SECTIONS = ("packet", "quadrature", "grid", "units")


class PacketFile(BaseModel):
    """A validated packet file."""

    model_config = ConfigDict(frozen=True)

    packet: PacketSpec
    quadrature: QuadratureConfig
    grid: GridConfig
    units: UnitContext

    def echo(self) -> dict[str, Any]:
        """The packet and unit sections as plain JSON-ready data."""
        return {"packet": self.packet.model_dump(mode="json"), "units": self.units.model_dump(mode="json")}


def _packet_spec(section: Mapping[str, Any]) -> PacketSpec:
    data = dict(section)
    kind = data.pop("family", None) or data.pop("kind", None)
    if kind is None:
        raise InvalidConfig("[packet] needs a 'family' key")
    envelope = {key: data.pop(key) for key in ENVELOPE_KEYS if key in data}
    return PacketSpec.model_validate({"family": {"kind": kind, **data}, **envelope})


def _unit_context(section: Mapping[str, Any], mass: float) -> UnitContext:
    sigma_perp = section.get("sigma_perp")
    meters = parse_length(sigma_perp) if isinstance(sigma_perp, str) else sigma_perp
    return UnitContext(mass=mass, sigma_perp_m=meters)


def _merge(base: dict[str, Any], overrides: Mapping[str, Mapping[str, Any]] | None) -> dict[str, Any]:
    merged = {name: dict(base.get(name, {})) for name in SECTIONS}
    for name, values in (overrides or {}).items():
        if name not in SECTIONS:
            raise InvalidConfig(f"unknown config section [{name}]")
        merged[name].update({k: v for k, v in values.items() if v is not None})
    return merged


def packet_file_from_mapping(
    data: Mapping[str, Any], overrides: Mapping[str, Mapping[str, Any]] | None = None
) -> PacketFile:
    """Validate an already-parsed document; ``overrides`` replace scalars section by section."""
    unknown = set(data) - set(SECTIONS)
    if unknown:
        raise InvalidConfig(f"unknown config section(s): {', '.join(sorted(unknown))}")
    merged = _merge(dict(data), overrides)
    try:
        packet = _packet_spec(merged["packet"])
        return PacketFile(
            packet=packet,
            quadrature=QuadratureConfig.from_settings(**merged["quadrature"]),
            grid=GridConfig.from_settings(**merged["grid"]),
            units=_unit_context(merged["units"], packet.mass),
        )
    except ValidationError as e:
        raise InvalidConfig(f"invalid packet config: {e.errors()[0]['msg']} at {e.errors()[0]['loc']}") from e


def load_packet_file(
    path: str | Path, overrides: Mapping[str, Mapping[str, Any]] | None = None
) -> PacketFile:
    """Read and validate a ``.toml`` or ``.json`` packet file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InvalidConfig(f"cannot read packet file {path}: {e.strerror}") from e
    try:
        data = json.loads(text) if path.suffix == ".json" else tomllib.loads(text)
    except (tomllib.TOMLDecodeError, json.JSONDecodeError) as e:
        raise InvalidConfig(f"cannot parse packet file {path}: {e}") from e
    logger.info(f"Loaded packet file {path}")
    return packet_file_from_mapping(data, overrides)
