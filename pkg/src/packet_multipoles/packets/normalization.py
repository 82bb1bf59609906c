"""Normalization check of psi(p) on the packet's quadrature rule."""

from __future__ import annotations

import logging

import numpy as np

from packet_multipoles.config.numerics import QuadratureConfig
from packet_multipoles.core.summation import compensated_sum
from packet_multipoles.errors import NormalizationDrift
from packet_multipoles.packets.sampling import Rule, rule_for
from packet_multipoles.packets.spec import PacketSpec
from packet_multipoles.packets.wavefunctions import psi_p_values

logger = logging.getLogger(__name__)


def rule_norm(spec: PacketSpec, rule: Rule) -> float:
    """int d^3p/(2pi)^3 |psi|^2 evaluated on ``rule``."""
    ratio = psi_p_values(spec, rule.points) * np.exp(-rule.log_base)
    return float(compensated_sum(rule.weights * np.abs(ratio) ** 2))


def norm_check(spec: PacketSpec, quad: QuadratureConfig | None = None) -> float:
    """Integrate |psi(p)|^2/(2pi)^3; raise if it drifts from 1 beyond ``quad.norm_tolerance``.

    Monte Carlo configurations are checked on the deterministic rule for the
    family, since a sampled norm carries statistical noise.
    """
    quad = quad or QuadratureConfig.from_settings()
    if quad.scheme == "monte_carlo":
        quad = quad.model_copy(update={"scheme": "auto"})
    norm = rule_norm(spec, rule_for(spec, quad))
    drift = abs(norm - 1.0)
    if drift > quad.norm_tolerance:
        raise NormalizationDrift(
            f"norm of {spec.kind} packet is {norm:.12g} (|1 - norm| = {drift:.3g} > {quad.norm_tolerance:.3g})"
        )
    logger.debug(f"norm of {spec.kind} packet: {norm:.15g}")
    return norm
