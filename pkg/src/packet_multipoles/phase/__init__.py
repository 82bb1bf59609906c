"""Phase expression language: parser, forward-mode gradients, singularity checks."""

from packet_multipoles.phase.ast import PhaseExpr, to_source
from packet_multipoles.phase.autodiff import PhaseGradient, central_difference, eval_grad, evaluate
from packet_multipoles.phase.parser import parse
from packet_multipoles.phase.singularity import Singularity, classify_singularity

__all__ = [
    "PhaseExpr",
    "PhaseGradient",
    "Singularity",
    "central_difference",
    "classify_singularity",
    "eval_grad",
    "evaluate",
    "parse",
    "to_source",
]
