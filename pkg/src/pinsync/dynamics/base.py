from abc import ABC, abstractmethod

import numpy as np

from pinsync.errors import DimensionError, NonFiniteStateError


def first_nonfinite_node(values: np.ndarray) -> int | None:
    """Index of the first row (node) holding a NaN or Inf, or None."""
    bad = ~np.isfinite(values)
    if bad.ndim > 1:
        bad = bad.reshape(bad.shape[0], -1).any(axis=1)
    rows = np.flatnonzero(bad)
    return int(rows[0]) if rows.size else None


def check_finite(values: np.ndarray, t: float | None = None) -> None:
    node = first_nonfinite_node(values)
    if node is not None:
        raise NonFiniteStateError(time=t, node=node)


def check_shape(state: np.ndarray, expected: tuple[int, ...]) -> None:
    if state.shape != expected:
        msg = f"State has shape {state.shape}, expected {expected}"
        raise DimensionError(msg)


class BaseVectorField(ABC):
    """
    A time-dependent right-hand side for the integrator.

    Implementations are pure: the result depends only on (t, state) and the
    configuration captured at construction, so one instance may be shared by
    concurrent runs.
    """

    @property
    @abstractmethod
    def state_shape(self) -> tuple[int, ...]:
        """Shape of the states this field accepts."""

    @abstractmethod
    def evaluate(self, t: float, state: np.ndarray) -> np.ndarray:
        """Return d(state)/dt at time t."""

    def __call__(self, t: float, state: np.ndarray) -> np.ndarray:
        check_finite(state, t)
        derivative = self.evaluate(t, state)
        check_finite(derivative, t)
        return derivative
