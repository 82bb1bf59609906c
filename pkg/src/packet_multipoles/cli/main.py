"""``packet-multipoles`` command-line entry point."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from typing import Any

from packet_multipoles.cli.commands import (
    DEFAULT_PATHS,
    PATH_ORDER,
    cmd_estimate,
    cmd_fieldmap,
    cmd_fig1,
    cmd_moments,
    field_grid,
)
from packet_multipoles.cli.output import write_estimate, write_json, write_report, write_rows
from packet_multipoles.cli.selfcheck import run_selfcheck
from packet_multipoles.config.settings import get_settings
from packet_multipoles.errors import MultipoleError, PathDisagreement

logger = logging.getLogger(__name__)


def _configure_logging() -> None:
    settings = get_settings()
    logging.basicConfig(
        level=settings.numeric_log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )
    logging.getLogger("packet_multipoles").setLevel(settings.numeric_log_level)


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "-f", "--format",
        choices=("csv", "json"),
        default="csv",
        help="Output format. Default: csv",
    )
    parser.add_argument(
        "-o", "--outfile",
        type=argparse.FileType("w", encoding="utf-8"),
        default=sys.stdout,
        help="Where to write the output to. Default: stdout",
    )


def _add_overrides(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("overrides", "Replace single values of the packet file.")
    group.add_argument("--sigma", type=float, help="Envelope width in momentum space.")
    group.add_argument("--mass", type=float, help="Particle mass.")
    group.add_argument("--ell", type=int, help="Winding number of a vortex packet.")
    group.add_argument("--phase", type=str, help="Phase expression of a gauss_phase packet.")
    group.add_argument("--nodes", type=int, help="Quadrature nodes per axis.")
    group.add_argument(
        "--scheme",
        choices=("auto", "tensor_hermite", "polar_lg", "monte_carlo"),
        help="Quadrature scheme.",
    )
    group.add_argument("--samples", type=int, help="Monte Carlo sample count.")
    group.add_argument("--seed", type=int, help="Monte Carlo seed.")
    group.add_argument("--points", type=int, help="Grid points per axis (power of two).")
    group.add_argument("--box", type=float, help="Grid box half-width in units of sigma_perp.")
    group.add_argument("--sigma-perp", type=str, help="Physical width, e.g. '0.1 nm'.")


def _overrides(args: argparse.Namespace) -> dict[str, dict[str, Any]]:
    return {
        "packet": {"sigma": args.sigma, "mass": args.mass, "ell": args.ell, "phase": args.phase},
        "quadrature": {
            "nodes_per_axis": args.nodes,
            "scheme": args.scheme,
            "samples": args.samples,
            "seed": args.seed,
        },
        "grid": {"points_per_axis": args.points, "box_half_width": args.box},
        "units": {"sigma_perp": args.sigma_perp},
    }


def moments_cli(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("config", type=str, help="Packet file (.toml or .json).")
    parser.add_argument(
        "-p", "--paths",
        nargs="+",
        choices=PATH_ORDER,
        default=list(DEFAULT_PATHS),
        help=f"Computation paths to run and compare. Default: {' '.join(DEFAULT_PATHS)}",
    )
    parser.add_argument("--si", action="store_true", help="Also report moments in e cm^2 and magnetons.")
    parser.add_argument("--timing", action="store_true", help="Include wall time in the report.")
    _add_overrides(parser)
    _add_output(parser)


def moments_runner(args: argparse.Namespace) -> int:
    report = cmd_moments(args.config, args.paths, args.si, _overrides(args))
    write_report(report, args.format, args.outfile, timing=args.timing)
    if not report.ok:
        raise PathDisagreement(f"paths disagree beyond tolerance: {', '.join(report.failures)}")
    return 0


def fieldmap_cli(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("config", type=str, help="Packet file (.toml or .json).")
    parser.add_argument("--r-min", type=float, help="Smallest radius. Default: 10")
    parser.add_argument("--r-max", type=float, help="Largest radius.")
    parser.add_argument("--n-r", type=int, help="Number of radii. Default: 1")
    parser.add_argument("--theta-min", type=float, help="Smallest polar angle. Default: 0")
    parser.add_argument("--theta-max", type=float, help="Largest polar angle. Default: pi")
    parser.add_argument("--n-theta", type=int, help="Number of polar angles. Default: 19")
    parser.add_argument("--phi-min", type=float, help="Start of the azimuth range. Default: 0")
    parser.add_argument("--phi-max", type=float, help="End of the (half-open) azimuth range. Default: 2 pi")
    parser.add_argument("--n-phi", type=int, help="Number of azimuths. Default: 36")
    _add_overrides(parser)
    _add_output(parser)


def fieldmap_runner(args: argparse.Namespace) -> int:
    grid = field_grid(
        r_min=args.r_min,
        r_max=args.r_max,
        n_r=args.n_r,
        theta_min=args.theta_min,
        theta_max=args.theta_max,
        n_theta=args.n_theta,
        phi_min=args.phi_min,
        phi_max=args.phi_max,
        n_phi=args.n_phi,
    )
    write_rows(cmd_fieldmap(args.config, grid, _overrides(args)), args.format, args.outfile)
    return 0


def fig1_cli(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--xi", type=float, default=1.0, help="Airy scale xi^3 along x. Default: 1")
    parser.add_argument("--sigma", type=float, default=1.0, help="Envelope width. Default: 1")
    parser.add_argument("-r", "--radius", type=float, default=10.0, help="Observation radius. Default: 10")
    parser.add_argument("-n", "--samples", type=int, default=360, help="Azimuth samples. Default: 360")
    _add_output(parser)


def fig1_runner(args: argparse.Namespace) -> int:
    write_rows(cmd_fig1(args.xi, args.sigma, args.radius, args.samples), args.format, args.outfile)
    return 0


def estimate_cli(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("sigma_perp", type=str, help="Physical width with unit, e.g. '0.1 nm' or '10 um'.")
    parser.add_argument("-l", "--ell", type=int, help="Vortex winding number.")
    parser.add_argument("--r0", type=str, help="Cat separation with unit.")
    _add_output(parser)


def estimate_runner(args: argparse.Namespace) -> int:
    write_estimate(cmd_estimate(args.sigma_perp, args.ell, args.r0), args.format, args.outfile)
    return 0


def selfcheck_cli(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--grid", action="store_true", help="Also run the (slower) position-grid check.")
    parser.add_argument(
        "-o", "--outfile",
        type=argparse.FileType("w", encoding="utf-8"),
        default=sys.stdout,
        help="Where to write the JSON summary. Default: stdout",
    )


def selfcheck_runner(args: argparse.Namespace) -> int:
    report = run_selfcheck(include_grid=args.grid)
    write_json({**report.model_dump(mode="json"), "ok": report.ok}, args.outfile)
    return 0 if report.ok else 1


def serve_cli(parser: argparse.ArgumentParser) -> None:
    settings = get_settings()
    parser.add_argument("--host", default=settings.api_host, help=f"Default: {settings.api_host}")
    parser.add_argument("--port", type=int, default=settings.api_port, help=f"Default: {settings.api_port}")


def serve_runner(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("packet_multipoles.api.main:app", host=args.host, port=args.port)
    return 0


COMMANDS: dict[str, tuple[str, Callable[[argparse.ArgumentParser], None], Callable[[argparse.Namespace], int]]] = {
    "moments": ("Compute intrinsic moments along several paths.", moments_cli, moments_runner),
    "fieldmap": ("Far-zone fields of a packet over a spherical grid.", fieldmap_cli, fieldmap_runner),
    "fig1": ("Equatorial radial field of an Airy packet.", fig1_cli, fig1_runner),
    "estimate": ("Order-of-magnitude moments in SI units.", estimate_cli, estimate_runner),
    "selfcheck": ("Run the built-in invariant suite.", selfcheck_cli, selfcheck_runner),
    "serve": ("Start the HTTP API.", serve_cli, serve_runner),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="packet-multipoles",
        description="Intrinsic multipole moments and far fields of non-Gaussian charged wave packets.",
    )
    subparsers = parser.add_subparsers(dest="subcommand", required=True)
    for name, (help_text, cli, runner) in COMMANDS.items():
        sub = subparsers.add_parser(name, help=help_text, description=help_text)
        cli(sub)
        sub.set_defaults(runner=runner)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    _configure_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.runner(args)
    except MultipoleError as e:
        logger.error(f"{e.code}: {e}")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
