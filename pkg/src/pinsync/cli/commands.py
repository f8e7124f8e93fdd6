"""
Subcommand implementations. Each returns a process exit status:
0 on success, 1 for invalid configuration or input, 2 for a numerical
failure during integration.
"""

from collections.abc import Callable
from enum import IntEnum, StrEnum
from pathlib import Path

import numpy as np
import pandas as pd
import structlog

from pinsync.cli.config import ExperimentConfig
from pinsync.cli.outputs import (
    DIVERGENCE_FILE,
    SUMMARY_FILE,
    SWEEP_FILE,
    TRAJECTORY_FILE,
    RunDirectory,
    write_comparison,
    write_meta,
    write_summary,
    write_trajectory,
)
from pinsync.errors import NonFiniteStateError, PinsyncError, TrajectoryRangeError
from pinsync.sim import (
    Trajectory,
    run_comparison,
    run_full_experiment,
    run_reduction_check,
    run_sweep,
    sweep_frame,
    sweep_grid,
)
from pinsync.utils import read_csv, write_csv

logger = structlog.get_logger(__name__)

# slack when matching a requested time against the recorded grid
TIME_TOLERANCE = 1e-9


class ExitCode(IntEnum):
    OK = 0
    INVALID = 1
    NUMERICAL = 2


class PlotKind(StrEnum):
    SNAPSHOT = "snapshot"
    TIMESERIES = "timeseries"


def run_guarded(action: Callable[[], None], out: RunDirectory | None = None) -> ExitCode:
    """Run a command body, map failures to exit codes and clean up after them."""
    try:
        action()
    except NonFiniteStateError as e:
        logger.error(  # noqa: TRY400
            "Integration has diverged.", error=str(e), time=e.time, node=e.node, stage=e.stage
        )
        code = ExitCode.NUMERICAL
    except (PinsyncError, ValueError, OSError) as e:
        logger.error("Command has failed.", error=str(e))  # noqa: TRY400
        code = ExitCode.INVALID
    else:
        return ExitCode.OK
    if out is not None:
        out.remove_partial()
    return code


def cmd_simulate(config: ExperimentConfig, out_dir: Path) -> ExitCode:
    """Integrate one run and write trajectory.csv and meta.cfg."""
    out = RunDirectory(out_dir)

    def action() -> None:
        trajectory = run_full_experiment(config)
        write_trajectory(trajectory, out.path(TRAJECTORY_FILE))
        write_meta(trajectory.metadata, out)

    return run_guarded(action, out)


def cmd_compare(config: ExperimentConfig, out_dir: Path) -> ExitCode:
    """
    Additive against parametric pinning: the full model derives omega_p from
    the additive run, the phase model uses omega_i + lambda_i.
    """
    out = RunDirectory(out_dir)

    def action() -> None:
        report = run_comparison(config)
        write_comparison(report, out)
        logger.info("Comparison has been written.", out_dir=str(out_dir), **report.summary)

    return run_guarded(action, out)


def cmd_reduce(config: ExperimentConfig, out_dir: Path) -> ExitCode:
    """Unpinned full network against its phase reduction."""
    out = RunDirectory(out_dir)

    def action() -> None:
        report = run_reduction_check(config)
        write_csv(report.to_frame(), out.path(DIVERGENCE_FILE))
        write_summary(report, out.path(SUMMARY_FILE))
        write_meta(report.runs["full"].metadata, out)

    return run_guarded(action, out)


def cmd_sweep(
    config: ExperimentConfig,
    out_dir: Path,
    epsilons: list[float],
    scales: list[float],
    workers: int = 1,
) -> ExitCode:
    """A comparison per (epsilon, scale) point, one directory each, plus sweep.csv."""
    out = RunDirectory(out_dir)

    def action() -> None:
        grid = sweep_grid(config, epsilons, scales)
        reports = run_sweep([point_config for _, point_config in grid], workers=workers)
        for (point, _), report in zip(grid, reports, strict=True):
            write_comparison(report, out.child(point.label))
        write_csv(sweep_frame([point for point, _ in grid], reports), out.path(SWEEP_FILE))

    return run_guarded(action, out)


def _sample_index(trajectory: Trajectory, time: float) -> int:
    times = trajectory.times
    slack = TIME_TOLERANCE * max(1.0, abs(times[-1]))
    if time < times[0] - slack or time > times[-1] + slack:
        msg = f"Time {time} is outside the recorded range [{times[0]}, {times[-1]}]"
        raise TrajectoryRangeError(msg)
    return int(np.argmin(np.abs(times - time)))


def _check_nodes(trajectory: Trajectory, nodes: list[int]) -> None:
    outside = [node for node in nodes if not 0 <= node < trajectory.n]
    if outside:
        msg = f"Nodes {outside} are outside a trajectory of {trajectory.n} nodes"
        raise TrajectoryRangeError(msg)


def snapshot_frame(trajectory: Trajectory, time: float) -> pd.DataFrame:
    """Per-node values at the recorded sample closest to `time`."""
    index = _sample_index(trajectory, time)
    nodes = np.arange(trajectory.n)
    if trajectory.is_phase:
        return pd.DataFrame({"node": nodes, "theta": trajectory.phases()[index]})
    sample = trajectory.samples[index]
    return pd.DataFrame({"node": nodes, "x": sample[:, 0], "y": sample[:, 1]})


def timeseries_frame(
    trajectory: Trajectory, nodes: list[int], variable: str = "y"
) -> pd.DataFrame:
    """time plus one column per selected node: x_i, y_i or theta_i."""
    _check_nodes(trajectory, nodes)
    if trajectory.is_phase:
        variable = "theta"
    match variable:
        case "theta":
            values = trajectory.phases()
        case "x":
            values = trajectory.samples[..., 0]
        case "y":
            values = trajectory.samples[..., 1]
        case _:
            msg = f"Unknown variable {variable!r}, expected x, y or theta"
            raise ValueError(msg)
    columns = {"time": trajectory.times}
    columns.update({f"{variable}_{node}": values[:, node] for node in nodes})
    return pd.DataFrame(columns)


def cmd_plotdata(  # noqa: PLR0913
    trajectory_file: Path,
    kind: PlotKind,
    out_file: Path,
    time: float | None = None,
    nodes: list[int] | None = None,
    variable: str = "y",
) -> ExitCode:
    """
    Emit the data behind a snapshot panel (node against value at one time) or
    a time-series panel (time against value for selected nodes).
    """

    def action() -> None:
        trajectory = Trajectory.from_frame(read_csv(trajectory_file))
        match PlotKind(kind):
            case PlotKind.SNAPSHOT:
                at = trajectory.times[-1] if time is None else time
                frame = snapshot_frame(trajectory, at)
            case PlotKind.TIMESERIES:
                selected = list(range(trajectory.n)) if nodes is None else nodes
                frame = timeseries_frame(trajectory, selected, variable)
        out_file.parent.mkdir(parents=True, exist_ok=True)
        write_csv(frame, out_file)

    return run_guarded(action)
