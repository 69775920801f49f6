"""
Command-line interface.

    pcband scan   --profile sinusoidal --pol te --theta-deg 0 --format csv --out bands.csv
    pcband gaps   --profile square
    pcband verify --profile layers.json --oracle all

Exit codes: 0 success, 1 verification threshold exceeded, 2 invalid input or
configuration, 3 numerical failure.
"""

import argparse
import logging
import os
import sys
from typing import Dict, List, Optional

from pcband import __version__
from pcband.bandscan import scan
from pcband.config import IncidenceConfig, Pathway, Polarization, ScanConfig
from pcband.constants import (
    DEFAULT_STAIRCASE_LAYERS,
    STAIRCASE_N_MAX,
    THREADS_ENV_VAR,
    VERIFY_OMEGA_POINTS,
    VERIFY_TOL_CONTINUOUS,
)
from pcband.exceptions import ConfigurationError
from pcband.oracle.verification import parse_oracle_selection, verify
from pcband.output import OUTPUT_FORMATS, gaps_json, gaps_text, render_band_structure, write_text
from pcband.profile.schema import load_profile

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def threads_from_env(environ: Optional[Dict[str, str]] = None) -> int:
    """
    Thread cap from PCBAND_THREADS, 1 when unset.

    Raises:
        ConfigurationError: If the variable is set but not a positive integer
    """
    env = os.environ if environ is None else environ
    raw = env.get(THREADS_ENV_VAR)
    if raw is None or raw.strip() == "":
        return 1
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        raise ConfigurationError(f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}")
    return value


def _incidence(args: argparse.Namespace) -> IncidenceConfig:
    return IncidenceConfig.from_degrees(args.na, args.theta_deg)


def _add_intake(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--profile",
        required=True,
        help="canonical name (sinusoidal, triangular, square, ramp_jump) or JSON profile file",
    )
    parser.add_argument("--pol", choices=[p.value for p in Polarization], default="te")
    parser.add_argument("--na", type=float, default=1.0, help="ambient refractive index")
    parser.add_argument("--theta-deg", type=float, default=0.0, help="incidence angle in degrees")


def _add_scan_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--omega-min", type=float, default=0.01)
    parser.add_argument("--omega-max", type=float, default=1.5)
    parser.add_argument("--samples", type=int, default=600)
    parser.add_argument("--pathway", choices=[p.value for p in Pathway], default="auto")
    parser.add_argument(
        "--staircase-layers",
        type=int,
        default=DEFAULT_STAIRCASE_LAYERS,
        help="layers used when the stratified pathway approximates a graded profile",
    )
    parser.add_argument("--out", help="output file (default: standard output)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcband", description="Band structures of one-dimensional photonic crystals."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress at INFO level")
    sub = parser.add_subparsers(dest="command", required=True)

    p_scan = sub.add_parser("scan", help="compute a band structure")
    _add_intake(p_scan)
    _add_scan_options(p_scan)
    p_scan.add_argument("--format", choices=OUTPUT_FORMATS, default="csv")

    p_gaps = sub.add_parser("gaps", help="list forbidden gaps")
    _add_intake(p_gaps)
    _add_scan_options(p_gaps)
    p_gaps.add_argument("--format", choices=("text", "json"), default="text")

    p_verify = sub.add_parser("verify", help="compare pathways against independent oracles")
    _add_intake(p_verify)
    p_verify.add_argument("--omega-grid", type=int, default=VERIFY_OMEGA_POINTS)
    p_verify.add_argument(
        "--oracle", choices=("monodromy", "staircase", "two-layer", "all"), default="all"
    )
    p_verify.add_argument(
        "--tol",
        type=float,
        default=VERIFY_TOL_CONTINUOUS,
        help="threshold for graded media (layered media use 1e-8)",
    )
    p_verify.add_argument("--staircase-n-max", type=int, default=STAIRCASE_N_MAX)
    p_verify.add_argument("--out", help="report file (default: standard output)")

    return parser


def _scan_config(args: argparse.Namespace) -> ScanConfig:
    return ScanConfig(
        omega_min=args.omega_min,
        omega_max=args.omega_max,
        samples=args.samples,
        pol=Polarization(args.pol),
        inc=_incidence(args),
        pathway=Pathway(args.pathway),
        staircase_layers=args.staircase_layers,
        threads=threads_from_env(),
    )


def cmd_scan(args: argparse.Namespace) -> int:
    medium = load_profile(args.profile)
    bands = scan(medium, _scan_config(args))
    write_text(render_band_structure(bands, args.format), args.out, sys.stdout)
    return EXIT_OK


def cmd_gaps(args: argparse.Namespace) -> int:
    medium = load_profile(args.profile)
    bands = scan(medium, _scan_config(args))
    text = gaps_json(bands.gaps) if args.format == "json" else gaps_text(bands.gaps)
    write_text(text, args.out, sys.stdout)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.omega_grid < 2:
        raise ConfigurationError(f"--omega-grid must be at least 2, got {args.omega_grid}")
    if not args.tol > 0:
        raise ConfigurationError(f"--tol must be positive, got {args.tol}")
    medium = load_profile(args.profile)
    report = verify(
        medium,
        pol=Polarization(args.pol),
        inc=_incidence(args),
        oracles=parse_oracle_selection(args.oracle),
        omega_points=args.omega_grid,
        tol_continuous=args.tol,
        n_max=args.staircase_n_max,
    )
    write_text(report.to_json() + "\n", args.out, sys.stdout)
    if report.passed:
        return EXIT_OK
    for r in report.failures():
        print(
            f"{r.pathway} vs {r.oracle_kind} at omega = {r.omega_norm:.6f}: "
            f"|{r.dtmm_value:.12f} - {r.oracle_value:.12f}| = {r.abs_error:.3e}",
            file=sys.stderr,
        )
    return EXIT_VERIFY_FAILED


COMMANDS = {"scan": cmd_scan, "gaps": cmd_gaps, "verify": cmd_verify}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.command](args)
    except ValueError as e:
        print(f"pcband: error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except RuntimeError as e:
        print(f"pcband: numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
