"""
Synchronization and divergence diagnostics over recorded trajectories.
"""

from dataclasses import dataclass, field
from typing import Any

import numpy as np
import pandas as pd

from pinsync.errors import DimensionError, QuadratureError
from pinsync.phase import TWO_PI, on_cycle_states, wrap_phase
from pinsync.sim.integrator import Trajectory


def order_parameter(phases: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    r e^{i psi} = (1/n) sum_j e^{i theta_j} over the last axis.

    Returns (r, psi) with r in [0, 1] and psi in [0, 2 pi); works for a single
    phase vector or a (m, n) stack of them.
    """
    phases = np.asarray(phases, dtype=float)
    if phases.shape[-1] == 0:
        msg = "Order parameter needs at least one phase"
        raise DimensionError(msg)
    mean_field = np.mean(np.exp(1j * phases), axis=-1)
    return np.minimum(np.abs(mean_field), 1.0), wrap_phase(np.angle(mean_field))


def circular_distance(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """min(|a - b| mod 2 pi, 2 pi - |a - b| mod 2 pi), in [0, pi]."""
    difference = np.mod(np.abs(np.asarray(a) - np.asarray(b)), TWO_PI)
    return np.minimum(difference, TWO_PI - difference)


def amplitude_deviation(trajectory: Trajectory, alphas: np.ndarray) -> float:
    """max over nodes and samples of |r_i(t) - sqrt(alpha_i)|; 0 for phase runs."""
    if trajectory.is_phase:
        return 0.0
    return float(np.max(np.abs(trajectory.radii() - np.sqrt(alphas))))


def measure_period(times: np.ndarray, signal: np.ndarray) -> float:
    """
    Mean spacing of upward zero crossings of a sampled signal, each crossing
    located by linear interpolation between its bracketing samples.
    """
    times = np.asarray(times, dtype=float)
    signal = np.asarray(signal, dtype=float)
    upward = np.flatnonzero((signal[:-1] < 0) & (signal[1:] >= 0))
    if upward.size < 2:  # noqa: PLR2004
        msg = f"Need at least two upward zero crossings, found {upward.size}"
        raise QuadratureError(msg)
    s0 = signal[upward]
    s1 = signal[upward + 1]
    t0 = times[upward]
    t1 = times[upward + 1]
    crossings = t0 - s0 * (t1 - t0) / (s1 - s0)
    return float(np.mean(np.diff(crossings)))


def closed_form_radius(
    t: float | np.ndarray, r0: float, alpha: float
) -> float | np.ndarray:
    """
    Radius of an isolated oscillator started at radius r0:

        r(t)^2 = alpha r0^2 e^{2 alpha t} / (alpha - r0^2 + r0^2 e^{2 alpha t})

    evaluated with e^{-2 alpha t} so that long times do not overflow.
    """
    decay = np.exp(-2.0 * alpha * np.asarray(t, dtype=float))
    r0_sq = r0 * r0
    return np.sqrt(alpha * r0_sq / ((alpha - r0_sq) * decay + r0_sq))


def _embedded_states(trajectory: Trajectory, alphas: np.ndarray) -> np.ndarray:
    if trajectory.is_phase:
        return on_cycle_states(trajectory.samples, alphas)
    return trajectory.samples


@dataclass(frozen=True, eq=False)
class ComparisonReport:
    """
    Divergence between two runs sampled on the same time grid.

    Attributes:
        times: Shared sample times.
        phase_divergence: (1/n) sum_i circular distance of the two phases.
        state_divergence: (1/n) sum_i |X_i^a - X_i^b|; phase runs are placed
            on their limit cycles first.
        amplitude_deviation: max_i,t |r_i - sqrt(alpha_i)| per run label.
        omega_p: Parametric frequencies used by the second run, if any.
        pinned: Pinned node indices aligned with `omega_p`.
        runs: The compared trajectories by label.
    """

    times: np.ndarray
    phase_divergence: np.ndarray
    state_divergence: np.ndarray
    amplitude_deviation: dict[str, float]
    omega_p: np.ndarray | None = None
    pinned: np.ndarray | None = None
    runs: dict[str, Trajectory] = field(default_factory=dict, repr=False)

    @property
    def summary(self) -> dict[str, Any]:
        summary: dict[str, Any] = {
            "phase_divergence_max": float(np.max(self.phase_divergence)),
            "phase_divergence_mean": float(np.mean(self.phase_divergence)),
            "state_divergence_max": float(np.max(self.state_divergence)),
            "state_divergence_mean": float(np.mean(self.state_divergence)),
        }
        for label, deviation in self.amplitude_deviation.items():
            summary[f"amplitude_deviation_{label}"] = deviation
        return summary

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "time": self.times,
                "phase_divergence": self.phase_divergence,
                "state_divergence": self.state_divergence,
            }
        )


def compare_trajectories(
    runs: dict[str, Trajectory],
    alphas: np.ndarray,
    omega_p: np.ndarray | None = None,
    pinned: np.ndarray | None = None,
) -> ComparisonReport:
    """Build a report from exactly two runs, in the order given."""
    if len(runs) != 2:  # noqa: PLR2004
        msg = f"Expected two runs to compare, got {len(runs)}"
        raise DimensionError(msg)
    (_, first), (_, second) = runs.items()
    if first.times.shape != second.times.shape or first.n != second.n:
        msg = "Compared runs must share their time grid and node count"
        raise DimensionError(msg)

    phase_gap = circular_distance(first.phases(), second.phases())
    state_gap = np.linalg.norm(
        _embedded_states(first, alphas) - _embedded_states(second, alphas), axis=-1
    )
    return ComparisonReport(
        times=first.times,
        phase_divergence=phase_gap.mean(axis=1),
        state_divergence=state_gap.mean(axis=1),
        amplitude_deviation={
            label: amplitude_deviation(run, alphas) for label, run in runs.items()
        },
        omega_p=omega_p,
        pinned=pinned,
        runs=runs,
    )
