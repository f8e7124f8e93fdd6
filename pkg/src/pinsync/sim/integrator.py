"""
Fixed-step classical Runge-Kutta integration.

Time stamps are always computed as k * dt rather than accumulated, so two
runs with the same step count see bit-identical times.
"""

from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import pandas as pd
import structlog

from pinsync.dynamics import first_nonfinite_node
from pinsync.errors import NonFiniteStateError, ParameterError
from pinsync.phase import phases_of_states, wrap_phase

logger = structlog.get_logger(__name__)

STEP_TOLERANCE = 1e-9

RightHandSide = Callable[[float, np.ndarray], np.ndarray]
Observer = Callable[[int, float, np.ndarray], None]


@dataclass(frozen=True)
class IntegratorConfig:
    """Step size, total time and recording stride of one run."""

    dt: float = 0.01
    horizon: float = 50.0
    record_every: int = 1

    def __post_init__(self) -> None:
        if not self.dt > 0:
            msg = f"dt must be positive, got {self.dt}"
            raise ParameterError(msg)
        if not self.horizon >= self.dt:
            msg = f"horizon must be at least dt={self.dt}, got {self.horizon}"
            raise ParameterError(msg)
        ratio = self.horizon / self.dt
        if abs(ratio - round(ratio)) > STEP_TOLERANCE * max(1.0, ratio):
            msg = f"horizon={self.horizon} is not an integer number of steps dt={self.dt}"
            raise ParameterError(msg)
        if self.record_every < 1 or self.steps % self.record_every:
            msg = (
                f"record_every={self.record_every} must be a positive divisor of "
                f"the step count {self.steps}"
            )
            raise ParameterError(msg)

    @property
    def steps(self) -> int:
        return round(self.horizon / self.dt)

    @property
    def n_samples(self) -> int:
        return self.steps // self.record_every + 1

    def steps_until(self, t: float) -> int:
        """Index of the last step whose time does not exceed t."""
        return int(np.floor(t / self.dt * (1.0 + STEP_TOLERANCE)))

    def sample_times(self) -> np.ndarray:
        return np.arange(0, self.steps + 1, self.record_every) * self.dt

    @staticmethod
    def load(integrator_config: dict[str, Any]) -> "IntegratorConfig":
        return IntegratorConfig(
            dt=integrator_config["dt"],
            horizon=integrator_config["horizon"],
            record_every=integrator_config.get("record_every", 1),
        )


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    Recorded samples of one run.

    `samples` has shape (m, n, 2) for full states or (m, n) for (unwrapped)
    phases; `times` has length m with uniform spacing.
    """

    times: np.ndarray
    samples: np.ndarray
    metadata: dict[str, Any] = field(default_factory=dict)

    @property
    def is_phase(self) -> bool:
        return self.samples.ndim == 2  # noqa: PLR2004

    @property
    def n(self) -> int:
        return int(self.samples.shape[1])

    @property
    def final(self) -> np.ndarray:
        return self.samples[-1]

    def phases(self) -> np.ndarray:
        """Phases per sample and node, wrapped into [0, 2 pi)."""
        if self.is_phase:
            return wrap_phase(self.samples)
        return phases_of_states(self.samples)

    def radii(self) -> np.ndarray:
        if self.is_phase:
            msg = "A phase trajectory has no amplitudes"
            raise ValueError(msg)
        return np.hypot(self.samples[..., 0], self.samples[..., 1])

    def to_frame(self) -> pd.DataFrame:
        """time, x_0..x_{n-1}, y_0..y_{n-1} (full) or time, theta_0.. (phase)."""
        columns: dict[str, np.ndarray] = {"time": self.times}
        if self.is_phase:
            wrapped = self.phases()
            columns.update({f"theta_{i}": wrapped[:, i] for i in range(self.n)})
        else:
            columns.update({f"x_{i}": self.samples[:, i, 0] for i in range(self.n)})
            columns.update({f"y_{i}": self.samples[:, i, 1] for i in range(self.n)})
        return pd.DataFrame(columns)

    @staticmethod
    def from_frame(frame: pd.DataFrame) -> "Trajectory":
        """Inverse of `to_frame` (phase samples come back wrapped)."""
        if "time" not in frame.columns:
            msg = "Trajectory frame has no 'time' column"
            raise ValueError(msg)
        times = frame["time"].to_numpy(dtype=float)
        thetas = [c for c in frame.columns if c.startswith("theta_")]
        if thetas:
            return Trajectory(times=times, samples=frame[thetas].to_numpy(dtype=float))
        xs = [c for c in frame.columns if c.startswith("x_")]
        ys = [c for c in frame.columns if c.startswith("y_")]
        if not xs or len(xs) != len(ys):
            msg = "Trajectory frame needs matching x_i and y_i columns"
            raise ValueError(msg)
        samples = np.stack(
            [frame[xs].to_numpy(dtype=float), frame[ys].to_numpy(dtype=float)], axis=-1
        )
        return Trajectory(times=times, samples=samples)


def _stage(rhs: RightHandSide, t: float, state: np.ndarray, stage: int) -> np.ndarray:
    try:
        k = np.asarray(rhs(t, state), dtype=float)
    except NonFiniteStateError as e:
        raise NonFiniteStateError(
            time=t if e.time is None else e.time, node=e.node, stage=stage
        ) from e
    node = first_nonfinite_node(np.atleast_1d(k))
    if node is not None:
        raise NonFiniteStateError(time=t, node=node, stage=stage)
    return k


def rk4_step(rhs: RightHandSide, state: np.ndarray, t: float, dt: float) -> np.ndarray:
    """One classical four-stage Runge-Kutta step from t to t + dt."""
    half = 0.5 * dt
    k1 = _stage(rhs, t, state, 1)
    k2 = _stage(rhs, t + half, state + half * k1, 2)
    k3 = _stage(rhs, t + half, state + half * k2, 3)
    k4 = _stage(rhs, t + dt, state + dt * k3, 4)
    return state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate(
    rhs: RightHandSide,
    initial_state: np.ndarray,
    config: IntegratorConfig,
    observer: Observer | None = None,
) -> Trajectory:
    """
    Take config.steps RK4 steps and record every `record_every`-th state,
    including t = 0 and t = horizon.

    `observer(k, t, state)` sees the state at every step k = 0..steps,
    whatever the recording stride.
    """
    state = np.array(initial_state, dtype=float)
    samples = np.empty((config.n_samples, *state.shape))
    samples[0] = state
    for k in range(config.steps):
        t = k * config.dt
        if observer is not None:
            observer(k, t, state)
        state = rk4_step(rhs, state, t, config.dt)
        if (k + 1) % config.record_every == 0:
            samples[(k + 1) // config.record_every] = state
    if observer is not None:
        observer(config.steps, config.steps * config.dt, state)
    logger.debug(
        "Integration has finished.",
        steps=config.steps,
        dt=config.dt,
        samples=config.n_samples,
    )
    return Trajectory(times=config.sample_times(), samples=samples)
