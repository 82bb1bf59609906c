"""Exception hierarchy with stable error codes.

Every error carries a machine-readable ``code`` (used as the HTTP ``detail``)
and the process ``exit_code`` the CLI returns for it.
"""


class MultipoleError(Exception):
    """Base class for all library errors."""

    code = "error"
    exit_code = 1


class InvalidConfig(MultipoleError):
    """A packet file, flag or request failed validation."""

    code = "invalid_config"
    exit_code = 2


class MissingScale(MultipoleError):
    """SI reporting was requested without a physical sigma_perp."""

    code = "missing_scale"
    exit_code = 2


class PhaseSyntaxError(InvalidConfig):
    """A phase expression could not be parsed."""

    code = "phase_syntax"

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        self.offset = offset
        self.expected = expected
        detail = f"{message} at offset {offset}"
        if expected:
            detail += f" (expected {', '.join(expected)})"
        super().__init__(detail)


class UnboundParameter(InvalidConfig):
    """A phase expression names a parameter that has no value."""

    code = "unbound_parameter"

    def __init__(self, name: str, offset: int = 0):
        self.name = name
        self.offset = offset
        super().__init__(f"Unbound parameter '{name}' at offset {offset}")


class NotTraceless(MultipoleError):
    code = "not_traceless"


class SingularPoint(MultipoleError):
    """Phase evaluation hit a point where the gradient is undefined."""

    code = "singular_point"


class NormalizationDrift(MultipoleError):
    code = "normalization_drift"


class DegenerateCat(MultipoleError):
    """The odd cat state collapses as sigma*|r0| -> 0."""

    code = "degenerate_cat"
    exit_code = 2


class SuperluminalBoost(MultipoleError):
    code = "superluminal_boost"
    exit_code = 2


class VortexDivergence(MultipoleError):
    """A plain Gaussian carrying l*phi_p has a logarithmically divergent second moment."""

    code = "vortex_divergence"
    exit_code = 3


class QuadratureNonConvergence(MultipoleError):
    code = "quadrature_nonconvergence"


class BoxTooSmall(MultipoleError):
    code = "box_too_small"
    exit_code = 2


class OriginSingularity(MultipoleError):
    code = "origin_singularity"
    exit_code = 2


class PathDisagreement(MultipoleError):
    """Two computation paths disagree beyond tolerance."""

    code = "path_disagreement"
    exit_code = 4
