"""Command-line surface: commands, rendering and the argparse entry point."""

from packet_multipoles.cli.commands import (
    EstimateReport,
    RunReport,
    cmd_estimate,
    cmd_fieldmap,
    cmd_fig1,
    cmd_moments,
    run_fieldmap,
    run_moments,
)
from packet_multipoles.cli.selfcheck import SelfCheckReport, run_selfcheck

__all__ = [
    "EstimateReport",
    "RunReport",
    "SelfCheckReport",
    "cmd_estimate",
    "cmd_fieldmap",
    "cmd_fig1",
    "cmd_moments",
    "run_fieldmap",
    "run_moments",
    "run_selfcheck",
]
