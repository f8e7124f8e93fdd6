"""
Pinning schedules: which nodes are controlled, for how long, and how hard.

A schedule is immutable. Magnitudes are drawn once, at construction time,
from the `magnitudes` stream of the experiment seed.
"""

from dataclasses import dataclass, replace
from enum import StrEnum
from typing import Any

import numpy as np
import structlog

from pinsync.errors import ScheduleError
from pinsync.utils import Stream, make_rng

logger = structlog.get_logger(__name__)


class PinningMode(StrEnum):
    ADDITIVE = "additive"
    PARAMETRIC = "parametric"


class MagnitudeSource(StrEnum):
    """How the per-node magnitudes of a schedule were obtained."""

    DRAWN = "drawn"
    EXPLICIT = "explicit"
    # parametric frequencies derived from a paired additive run
    EQUIVALENT = "equivalent"


class Interval(StrEnum):
    """Support of the uniform magnitude distribution for a scale s."""

    POSITIVE = "positive"  # Uniform(0, s)
    SYMMETRIC = "symmetric"  # Uniform(-s, s)


def default_pinned_set(n_pinned: int, n: int) -> np.ndarray:
    """The first `n_pinned` node indices, 0-based."""
    if n_pinned <= 0:
        msg = f"Number of pinned nodes must be positive, got {n_pinned}"
        raise ScheduleError(msg)
    if n_pinned >= n:
        msg = f"Number of pinned nodes must be smaller than n={n}, got {n_pinned}"
        raise ScheduleError(msg)
    return np.arange(n_pinned)


def draw_magnitudes(
    n_pinned: int,
    scale: float,
    seed: int,
    interval: Interval = Interval.POSITIVE,
) -> np.ndarray:
    """
    Draw `n_pinned` i.i.d. uniform control magnitudes.

    The same (n_pinned, scale, seed, interval) always yields the same values
    bit for bit.
    """
    if not scale > 0:
        msg = f"Magnitude scale must be positive, got {scale}"
        raise ScheduleError(msg)
    low = 0.0 if interval is Interval.POSITIVE else -scale
    return make_rng(seed, Stream.MAGNITUDES).uniform(low, scale, size=n_pinned)


def control_window_active(t: float, t_p: float) -> bool:
    """Theta(t) - Theta(t - t_p) with Theta(0) = 1: the closed window [0, t_p]."""
    return 0.0 <= t <= t_p


def _parse_list(value: Any, cast: type) -> list[Any]:
    if isinstance(value, str):
        return [cast(v) for v in value.split(",") if v.strip()]
    return [cast(v) for v in np.atleast_1d(value)]


@dataclass(frozen=True, eq=False)
class PinningSchedule:
    """
    Attributes:
        pinned: Distinct 0-based node indices I_p, in schedule order.
        t_p: Length of the control window [0, t_p].
        mode: Additive input or parametric frequency replacement.
        magnitudes: lambda_i (additive) or omega_p,i (parametric), one per
            pinned node, aligned with `pinned`.
        seed: Seed the magnitudes were drawn from.
        source: Whether magnitudes were drawn, given, or derived.
    """

    pinned: np.ndarray
    t_p: float
    mode: PinningMode
    magnitudes: np.ndarray
    seed: int
    source: MagnitudeSource = MagnitudeSource.DRAWN

    def __post_init__(self) -> None:
        pinned = np.asarray(self.pinned, dtype=int)
        magnitudes = np.asarray(self.magnitudes, dtype=float)
        if pinned.ndim != 1 or pinned.size == 0:
            msg = "A schedule needs at least one pinned node"
            raise ScheduleError(msg)
        if np.unique(pinned).size != pinned.size:
            msg = f"Pinned node indices must be distinct, got {pinned.tolist()}"
            raise ScheduleError(msg)
        if pinned.min() < 0:
            msg = f"Pinned node indices must be nonnegative, got {pinned.tolist()}"
            raise ScheduleError(msg)
        if magnitudes.shape != pinned.shape:
            msg = (
                f"Expected {pinned.size} magnitudes for {pinned.size} pinned nodes, "
                f"got {magnitudes.size}"
            )
            raise ScheduleError(msg)
        if not np.all(np.isfinite(magnitudes)):
            msg = "Pinning magnitudes must be finite"
            raise ScheduleError(msg)
        if not self.t_p > 0:
            msg = f"Control duration t_p must be positive, got {self.t_p}"
            raise ScheduleError(msg)
        pinned.setflags(write=False)
        magnitudes.setflags(write=False)
        object.__setattr__(self, "pinned", pinned)
        object.__setattr__(self, "magnitudes", magnitudes)
        object.__setattr__(self, "mode", PinningMode(self.mode))
        object.__setattr__(self, "source", MagnitudeSource(self.source))

    @property
    def n_pinned(self) -> int:
        return int(self.pinned.size)

    def validate_for(self, n: int, horizon: float | None = None) -> None:
        """Check the schedule against a network size and simulation horizon."""
        if self.n_pinned >= n:
            msg = f"N_p={self.n_pinned} pinned nodes must be fewer than n={n}"
            raise ScheduleError(msg)
        if self.pinned.max() >= n:
            msg = f"Pinned node {int(self.pinned.max())} outside a network of {n} nodes"
            raise ScheduleError(msg)
        if horizon is not None and self.t_p > horizon:
            msg = f"Control duration t_p={self.t_p} exceeds the horizon {horizon}"
            raise ScheduleError(msg)

    def active(self, t: float) -> bool:
        return control_window_active(t, self.t_p)

    def as_parametric(self, omega_p: np.ndarray) -> "PinningSchedule":
        """The parametric counterpart sharing I_p, t_p and seed."""
        return replace(
            self,
            mode=PinningMode.PARAMETRIC,
            magnitudes=np.asarray(omega_p, dtype=float),
            source=MagnitudeSource.EQUIVALENT,
        )

    @staticmethod
    def drawn(  # noqa: PLR0913
        mode: PinningMode,
        pinned: np.ndarray,
        t_p: float,
        scale: float,
        seed: int,
        interval: Interval = Interval.POSITIVE,
        offset: float | np.ndarray = 0.0,
    ) -> "PinningSchedule":
        """
        Build a schedule with drawn magnitudes.

        Parametric schedules pass the base frequency as `offset`, so that
        omega_p,i = omega + draw. A zero scale gives zero draws (no control).
        """
        pinned = np.asarray(pinned, dtype=int)
        draws = (
            draw_magnitudes(pinned.size, scale, seed, interval)
            if scale != 0
            else np.zeros(pinned.size)
        )
        schedule = PinningSchedule(
            pinned=pinned,
            t_p=t_p,
            mode=mode,
            magnitudes=offset + draws,
            seed=seed,
            source=MagnitudeSource.DRAWN,
        )
        logger.debug(
            "Pinning magnitudes have been drawn.",
            mode=str(mode),
            n_pinned=schedule.n_pinned,
            scale=scale,
            seed=seed,
        )
        return schedule

    def to_flat(self, prefix: str = "schedule.") -> dict[str, Any]:
        """Dotted-key form with native values; `render_flat` keeps 17 significant digits."""
        return {
            f"{prefix}mode": str(self.mode),
            f"{prefix}nodes": [int(i) for i in self.pinned],
            f"{prefix}t_p": float(self.t_p),
            f"{prefix}magnitudes": [float(m) for m in self.magnitudes],
            f"{prefix}seed": int(self.seed),
            f"{prefix}source": str(self.source),
        }

    @staticmethod
    def from_flat(entries: dict[str, Any], prefix: str = "schedule.") -> "PinningSchedule":
        """Inverse of `to_flat`; accepts raw strings or native values."""
        try:
            return PinningSchedule(
                pinned=np.array(_parse_list(entries[f"{prefix}nodes"], int), dtype=int),
                t_p=float(entries[f"{prefix}t_p"]),
                mode=PinningMode(entries[f"{prefix}mode"]),
                magnitudes=np.array(
                    _parse_list(entries[f"{prefix}magnitudes"], float), dtype=float
                ),
                seed=int(entries[f"{prefix}seed"]),
                source=MagnitudeSource(
                    entries.get(f"{prefix}source", MagnitudeSource.EXPLICIT)
                ),
            )
        except KeyError as e:
            msg = f"Missing schedule key {e.args[0]!r}"
            raise ScheduleError(msg) from e
