"""Tests for error codes and exit codes."""

import pytest

from packet_multipoles.errors import (
    BoxTooSmall,
    DegenerateCat,
    InvalidConfig,
    MissingScale,
    MultipoleError,
    NormalizationDrift,
    OriginSingularity,
    PathDisagreement,
    PhaseSyntaxError,
    QuadratureNonConvergence,
    UnboundParameter,
    VortexDivergence,
)


@pytest.mark.parametrize(
    ("error", "code", "exit_code"),
    [
        (InvalidConfig("x"), "invalid_config", 2),
        (MissingScale("x"), "missing_scale", 2),
        (PhaseSyntaxError("unexpected end", 5, ("number",)), "phase_syntax", 2),
        (UnboundParameter("a", 3), "unbound_parameter", 2),
        (DegenerateCat("x"), "degenerate_cat", 2),
        (BoxTooSmall("x"), "box_too_small", 2),
        (OriginSingularity("x"), "origin_singularity", 2),
        (VortexDivergence("x"), "vortex_divergence", 3),
        (PathDisagreement("x"), "path_disagreement", 4),
        (NormalizationDrift("x"), "normalization_drift", 1),
        (QuadratureNonConvergence("x"), "quadrature_nonconvergence", 1),
    ],
)
def test_codes(error, code, exit_code):
    """Every error carries a stable code and exit status."""
    assert isinstance(error, MultipoleError)
    assert error.code == code
    assert error.exit_code == exit_code


def test_phase_syntax_message():
    """The message names the offset and what was expected."""
    error = PhaseSyntaxError("unexpected end of input", 5, ("number", "identifier"))
    assert str(error) == "unexpected end of input at offset 5 (expected number, identifier)"
    assert error.offset == 5
    assert isinstance(error, InvalidConfig)


def test_unbound_parameter_message():
    """Unbound parameters are named with their offset."""
    error = UnboundParameter("alpha", 7)
    assert str(error) == "Unbound parameter 'alpha' at offset 7"
    assert error.name == "alpha"
