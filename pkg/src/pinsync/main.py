"""
Command line entry point.

    pinsync simulate --config fig1.cfg --out runs/fig1
    pinsync compare  --config fig2.cfg --out runs/fig2 --seed 7
    pinsync reduce   --config fig1.cfg --out runs/reduction
    pinsync sweep    --config fig1.cfg --out runs/sweep --epsilon 0.01,0.05 --scale 0.1,0.4
    pinsync plotdata --trajectory runs/fig1/trajectory.csv --kind snapshot --time 50 --out x.csv

Everything is configured through flags and config files; environment
variables are never read.
"""

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path

import structlog

from pinsync.cli import ExperimentConfig, parse_config, with_overrides
from pinsync.cli.commands import (
    ExitCode,
    PlotKind,
    cmd_compare,
    cmd_plotdata,
    cmd_reduce,
    cmd_simulate,
    cmd_sweep,
)
from pinsync.errors import ConfigError
from pinsync.settings import Settings, configure_logging

logger = structlog.get_logger(__name__)

EXPERIMENT_COMMANDS = ("simulate", "compare", "reduce", "sweep")


def _float_list(text: str) -> list[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        msg = f"expected comma-separated numbers, got {text!r}"
        raise argparse.ArgumentTypeError(msg) from e


def _node_list(text: str) -> list[int]:
    """`0,3,7` or the half-open range `a:b`."""
    try:
        if ":" in text:
            start, stop = text.split(":", 1)
            return list(range(int(start), int(stop)))
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        msg = f"expected node indices like 0,1,2 or 0:5, got {text!r}"
        raise argparse.ArgumentTypeError(msg) from e


def _seed(text: str) -> int:
    seed = int(text)
    if not 0 <= seed < 2**64:
        msg = f"seed must be an unsigned 64-bit integer, got {text}"
        raise argparse.ArgumentTypeError(msg)
    return seed


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pinsync",
        description="Stuart-Landau networks under additive and parametric pinning.",
    )
    parser.add_argument(
        "--log-level",
        type=str.upper,
        choices=("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"),
        default="INFO",
    )
    parser.add_argument("--log-json", action="store_true")
    subparsers = parser.add_subparsers(dest="command", required=True)

    for name in EXPERIMENT_COMMANDS:
        sub = subparsers.add_parser(name)
        sub.add_argument("--config", type=Path, required=True)
        sub.add_argument("--out", type=Path, help="output directory (default: output.directory)")
        sub.add_argument("--seed", type=_seed, help="overrides the config seed")
        sub.add_argument("--model", choices=("full", "phase"), help="overrides model.kind")
        if name == "sweep":
            sub.add_argument("--epsilon", type=_float_list, required=True)
            sub.add_argument("--scale", type=_float_list, required=True)
            sub.add_argument("--workers", type=int)

    plot = subparsers.add_parser("plotdata")
    plot.add_argument("--trajectory", type=Path, required=True)
    plot.add_argument("--kind", choices=[str(kind) for kind in PlotKind], required=True)
    plot.add_argument("--out", type=Path, required=True)
    plot.add_argument("--time", type=float, help="snapshot time (default: last sample)")
    plot.add_argument("--nodes", type=_node_list, help="time-series nodes (default: all)")
    plot.add_argument("--variable", choices=("x", "y"), default="y")
    return parser


def resolve_config_path(path: Path, settings: Settings) -> Path:
    """A bare name such as `fig1.cfg` falls back to the shipped configs."""
    if path.exists() or path.parent != Path():
        return path
    shipped = settings.config_dir / path
    return shipped if shipped.exists() else path


def load_experiment(args: argparse.Namespace, settings: Settings) -> ExperimentConfig:
    """Parse --config and apply the --seed and --model overrides."""
    config = parse_config(resolve_config_path(args.config, settings))
    overrides: dict[str, object] = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.model is not None:
        overrides["model.kind"] = args.model
    return with_overrides(config, overrides) if overrides else config


def dispatch(args: argparse.Namespace, settings: Settings) -> ExitCode:
    if args.command == "plotdata":
        return cmd_plotdata(
            trajectory_file=args.trajectory,
            kind=PlotKind(args.kind),
            out_file=args.out,
            time=args.time,
            nodes=args.nodes,
            variable=args.variable,
        )
    try:
        config = load_experiment(args, settings)
    except ConfigError as e:
        logger.error("Config is invalid.", key=e.key, error=str(e))  # noqa: TRY400
        return ExitCode.INVALID
    out_dir = args.out if args.out is not None else config.output.directory
    match args.command:
        case "simulate":
            return cmd_simulate(config, out_dir)
        case "compare":
            return cmd_compare(config, out_dir)
        case "reduce":
            return cmd_reduce(config, out_dir)
        case _:
            workers = args.workers if args.workers is not None else settings.sweep_workers
            return cmd_sweep(config, out_dir, args.epsilon, args.scale, workers=workers)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    settings = Settings(log_level=args.log_level, log_json=args.log_json)
    configure_logging(settings.log_level, json=settings.log_json)
    return int(dispatch(args, settings))


def start() -> None:
    """Console script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    start()
