"""
Run directories and the files written into them.
"""

from pathlib import Path
from typing import Any

import numpy as np
import structlog

from pinsync.sim import ComparisonReport, Trajectory
from pinsync.utils import render_flat, save_txt, write_csv

logger = structlog.get_logger(__name__)

TRAJECTORY_FILE = "trajectory.csv"
DIVERGENCE_FILE = "divergence.csv"
SUMMARY_FILE = "summary.txt"
META_FILE = "meta.cfg"
SWEEP_FILE = "sweep.csv"


class RunDirectory:
    """
    An output directory that remembers what it wrote, so a failed command can
    remove its partial outputs.
    """

    def __init__(self, root: Path) -> None:
        self.root = root
        self.created = not root.exists()
        self.written: list[Path] = []

    def path(self, name: str) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        file_path = self.root / name
        self.written.append(file_path)
        return file_path

    def child(self, name: str) -> "RunDirectory":
        child = RunDirectory(self.root / name)
        child.written = self.written
        return child

    def remove_partial(self) -> None:
        for file_path in reversed(self.written):
            file_path.unlink(missing_ok=True)
            parent = file_path.parent
            if parent != self.root and parent.exists() and not any(parent.iterdir()):
                parent.rmdir()
        if self.created and self.root.exists() and not any(self.root.iterdir()):
            self.root.rmdir()
        logger.info("Partial outputs have been removed.", out_dir=str(self.root))


def write_trajectory(trajectory: Trajectory, file_path: Path) -> None:
    write_csv(trajectory.to_frame(), file_path)


def write_meta(metadata: dict[str, Any], out: RunDirectory) -> None:
    """
    meta.cfg: the resolved config as parseable `key = value` lines, with the
    run identifiers and drawn values as header comments.
    """
    entries = dict(metadata["config"])
    entries["output.directory"] = str(out.root)
    header = "\n".join(
        f"{key}: {value}" for key, value in metadata.items() if key != "config"
    )
    save_txt(render_flat(entries, header=header), out.path(META_FILE))


def write_summary(report: ComparisonReport, file_path: Path) -> None:
    entries: dict[str, Any] = dict(report.summary)
    if report.omega_p is not None and report.pinned is not None:
        for node, omega_p in zip(report.pinned, np.atleast_1d(report.omega_p), strict=True):
            entries[f"omega_p.{int(node)}"] = float(omega_p)
    save_txt(render_flat(entries), file_path)


def write_comparison(report: ComparisonReport, out: RunDirectory) -> None:
    """One trajectory file per compared run, the divergence series and a summary."""
    for label, trajectory in report.runs.items():
        write_trajectory(trajectory, out.path(f"trajectory_{label}.csv"))
    write_csv(report.to_frame(), out.path(DIVERGENCE_FILE))
    write_summary(report, out.path(SUMMARY_FILE))
    first = next(iter(report.runs.values()))
    write_meta(first.metadata, out)
