"""
Command-line interface.

Usage:
    nmis-sklar verify --input pA.csv
    nmis-sklar demo-nonunique --input pA.csv
    nmis-sklar ipf --input pB.csv --tol 1e-10
    nmis-sklar margin-sensitivity --input pA.csv --row-weights 2,1 --col-weights 1,1

Exit codes: 0 all verifications pass, 1 a verification failed (the report
carries a witness), 2 invalid input or usage.
"""

import argparse
import csv
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from pydantic import BaseModel, ConfigDict, PositiveFloat, ValidationError, field_validator

from .connectors.factory import ConnectorFactory
from .copulas.registry import extensions
from .copulas.subcopula import extract
from .core.bridge import SklarBridge
from .core.config import config
from .core.exception import ConnectorError, SklarError
from .core.numerics import Track
from .models.reports import CommandResult
from .profiles.loader import ProfileLoader

logger = logging.getLogger(__name__)

COMMANDS = (
    "subcopula",
    "extend",
    "compose",
    "verify",
    "roundtrip",
    "measures",
    "margin-sensitivity",
    "ipf",
    "demo-nonunique",
    "demo-unique-continuous",
)

# subcommands that need an input joint
_NEEDS_INPUT = set(COMMANDS) - {"compose", "demo-unique-continuous"}


class RunConfig(BaseModel):
    """Validated options of one CLI run (profile values overridden by flags)."""

    model_config = ConfigDict(frozen=True)

    command: str
    input: Optional[Path] = None
    input_format: Optional[str] = None
    counts: bool = False
    track: Track = config.default_track
    method: str = "checkerboard"
    tol: Optional[PositiveFloat] = None
    max_iter: int = config.ipf_max_iter
    seed: int = config.seed
    n_boxes: int = config.n_boxes
    resolution: int = config.probe_resolution
    output_format: str = "json"
    output: Optional[Path] = None
    oracle: bool = False
    probes: Optional[Path] = None
    margins: Optional[Path] = None
    copula: Optional[str] = None
    weights: Optional[List[Optional[List[str]]]] = None

    @field_validator("command")
    @classmethod
    def _known_command(cls, value: str) -> str:
        if value not in COMMANDS:
            raise ValueError(f"unknown subcommand '{value}'")
        return value

    @field_validator("method")
    @classmethod
    def _known_method(cls, value: str) -> str:
        if value.lower() not in extensions.list():
            raise ValueError(f"unknown method '{value}'; available: {', '.join(extensions.list())}")
        return value.lower()

    @field_validator("input_format")
    @classmethod
    def _known_format(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and value not in ConnectorFactory.list_connectors():
            raise ValueError(f"unknown input format '{value}'")
        return value

    @field_validator("output_format")
    @classmethod
    def _known_output(cls, value: str) -> str:
        if value not in ("json", "csv"):
            raise ValueError(f"unknown output format '{value}'")
        return value

    @field_validator("max_iter", "resolution")
    @classmethod
    def _at_least_one(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be at least 1")
        return value


def _common_parser() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--input", "-i", help="Joint distribution file (CSV, JSON or XLSX)")
    parent.add_argument("--format", dest="input_format", help="Input format: csv2d, csv-long, json, excel")
    parent.add_argument("--counts", action="store_true", default=None, help="Input cells are counts")
    parent.add_argument("--track", choices=["rational", "float"], help="Arithmetic track")
    parent.add_argument("--method", "-m", help="Extension method (default: checkerboard)")
    parent.add_argument("--tol", type=float, help="Tolerance (IPF margin error, scaling check)")
    parent.add_argument("--max-iter", type=int, help="Maximum IPF sweeps")
    parent.add_argument("--seed", type=int, help="Seed for random verification probes")
    parent.add_argument("--n-boxes", type=int, help="Random boxes for the copula volume check")
    parent.add_argument("--resolution", type=int, help="Probe lattice resolution")
    parent.add_argument("--output-format", choices=["json", "csv"], help="Report format (default: json)")
    parent.add_argument("--output", "-o", help="Write the report to this file instead of stdout")
    parent.add_argument("--profile", "-p", help="YAML run profile")
    parent.add_argument("--oracle", action="store_true", default=None, help="Add oracle cross-checks")
    parent.add_argument("--verbose", "-v", action="count", default=0, help="-v info, -vv debug (stderr)")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parent = _common_parser()
    parser = argparse.ArgumentParser(
        prog="nmis-sklar",
        description="Sklar's theorem for discrete and continuous margins: subcopulas, extensions, measures",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    sub.add_parser("subcopula", parents=[parent], help="Extract the subcopula of a joint")
    extend = sub.add_parser("extend", parents=[parent], help="Extend the subcopula to a copula")
    extend.add_argument("--probes", help="CSV of points in [0,1]^d at which to evaluate the copula")
    compose = sub.add_parser("compose", parents=[parent], help="Compose a copula with margins")
    compose.add_argument("--margins", required=True, help="JSON list of margins")
    compose.add_argument(
        "--copula",
        help="independence, comonotone, countermonotone or a copula JSON file "
             "(default: the checkerboard copula of --input)",
    )
    sub.add_parser("verify", parents=[parent], help="Run every check of the representation")
    sub.add_parser("roundtrip", parents=[parent], help="Extract, extend, compose and compare")
    sub.add_parser("measures", parents=[parent], help="Kendall's tau and Spearman's rho")
    sensitivity = sub.add_parser(
        "margin-sensitivity", parents=[parent], help="Measures before and after a diagonal rescaling"
    )
    sensitivity.add_argument("--row-weights", help="Comma-separated weights for axis 0")
    sensitivity.add_argument("--col-weights", help="Comma-separated weights for axis 1")
    sensitivity.add_argument("--weights", help="JSON list of per-axis weight lists")
    sub.add_parser("ipf", parents=[parent], help="Margin-free core by iterative proportional fitting")
    sub.add_parser("demo-nonunique", parents=[parent], help="Two extensions of one subcopula")
    unique = sub.add_parser(
        "demo-unique-continuous", parents=[parent], help="Extensions coincide under continuous margins"
    )
    unique.add_argument("--margins", help="JSON list of margins (default: the shipped continuous margins)")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def _split(text: Optional[str]) -> Optional[List[str]]:
    return None if text is None else [w.strip() for w in text.split(",") if w.strip()]


def _weights(args: argparse.Namespace) -> Optional[List[Optional[List[str]]]]:
    if getattr(args, "weights", None):
        try:
            value = json.loads(args.weights)
        except json.JSONDecodeError as e:
            raise ConnectorError(f"--weights is not valid JSON: {e}")
        return [[str(w) for w in axis] for axis in value]
    rows, cols = _split(getattr(args, "row_weights", None)), _split(getattr(args, "col_weights", None))
    if rows is None and cols is None:
        return None
    return [rows, cols]


def run_config(args: argparse.Namespace) -> RunConfig:
    """
    Merge profile values and flags into a validated RunConfig.

    Raises:
        ProfileError: If the profile is invalid
        ConnectorError: If an option value is malformed
    """
    options: Dict[str, Any] = {}
    if args.profile:
        options.update(ProfileLoader().options(args.profile))
    flags = {
        "input": args.input,
        "input_format": args.input_format,
        "counts": args.counts,
        "track": args.track,
        "method": args.method,
        "tol": args.tol,
        "max_iter": args.max_iter,
        "seed": args.seed,
        "n_boxes": args.n_boxes,
        "resolution": args.resolution,
        "output_format": args.output_format,
        "output": args.output,
        "oracle": args.oracle,
        "probes": getattr(args, "probes", None),
        "margins": getattr(args, "margins", None),
        "copula": getattr(args, "copula", None),
        "weights": _weights(args),
    }
    options.update({k: v for k, v in flags.items() if v is not None})
    try:
        return RunConfig(command=args.command, **options)
    except ValidationError as e:
        problems = "; ".join(f"{'.'.join(map(str, err['loc']))}: {err['msg']}" for err in e.errors())
        raise ConnectorError(f"Invalid options: {problems}")


def _read_probes(path: Path) -> List[List[str]]:
    try:
        with open(path, "r", encoding=config.csv_encoding, newline="") as f:
            rows = [[c.strip() for c in row] for row in csv.reader(f) if row]
    except OSError as e:
        raise ConnectorError(f"Cannot read probes: {e}")
    if rows and any(c.isalpha() for c in rows[0][0]):
        rows = rows[1:]
    return rows


def dispatch(bridge: SklarBridge, cfg: RunConfig) -> CommandResult:
    """Run one subcommand."""
    joint = None
    if cfg.input is not None:
        joint = bridge.load(cfg.input, cfg.input_format, counts=cfg.counts, track=cfg.track)
    elif cfg.command in _NEEDS_INPUT:
        raise ConnectorError(f"'{cfg.command}' needs --input")

    if cfg.command == "subcopula":
        return bridge.subcopula(joint)
    if cfg.command == "extend":
        probes = _read_probes(cfg.probes) if cfg.probes else None
        return bridge.extend(joint, cfg.method, probes)
    if cfg.command == "compose":
        margins = bridge.load_margins(cfg.margins)
        if cfg.copula:
            copula = bridge.load_copula(cfg.copula, len(margins))
        elif joint is not None:
            copula = extensions.apply(cfg.method, extract(joint))
        else:
            raise ConnectorError("'compose' needs --copula or --input")
        return bridge.compose(copula, margins)
    if cfg.command == "verify":
        return bridge.verify(joint, cfg.method, n_boxes=cfg.n_boxes, seed=cfg.seed, oracle=cfg.oracle)
    if cfg.command == "roundtrip":
        return bridge.roundtrip(joint, cfg.method)
    if cfg.command == "measures":
        return bridge.measures(joint, oracle=cfg.oracle)
    if cfg.command == "margin-sensitivity":
        if cfg.weights is None:
            raise ConnectorError("'margin-sensitivity' needs --row-weights/--col-weights or --weights")
        weights = [w if w is not None else ["1"] * len(joint.axes[k]) for k, w in enumerate(cfg.weights)]
        return bridge.margin_sensitivity(joint, weights, tol=cfg.tol, max_iter=cfg.max_iter)
    if cfg.command == "ipf":
        return bridge.ipf(joint, tol=cfg.tol, max_iter=cfg.max_iter)
    if cfg.command == "demo-nonunique":
        methods = ("checkerboard", cfg.method if cfg.method != "checkerboard" else "patchwork-m")
        return bridge.demo_nonunique(joint, cfg.resolution, methods)
    margins_path = cfg.margins or config.library_path / "continuous_margins.json"
    return bridge.demo_unique_continuous(bridge.load_margins(margins_path), joint, cfg.resolution)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        cfg = run_config(args)
        result = dispatch(SklarBridge(), cfg)
        text = SklarBridge.export(result, cfg.output_format, cfg.output)
    except SklarError as e:
        logger.debug("Input error", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return 2
    if cfg.output is None:
        sys.stdout.write(text)
    if not result.passed:
        logger.warning("%s: a verification failed", cfg.command)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
