"""
Phase sensitivity of the Stuart-Landau oscillator and phase read-out.

For F as in `pinsync.dynamics.sl_vector_field`, the polar angle obeys
theta' = omega regardless of the radius: the isochrons are radial lines, so
the polar angle of a state is its asymptotic phase, and the phase
sensitivity function has the closed form Z(theta) = (-sin, cos) / sqrt(alpha).
"""

from dataclasses import dataclass

import numpy as np

from pinsync.errors import ParameterError, PhaseUndefinedError

TWO_PI = 2.0 * np.pi


def _require_positive_alpha(alpha: float | np.ndarray) -> None:
    if not np.all(np.asarray(alpha) > 0):
        msg = f"alpha must be positive, got {alpha}"
        raise ParameterError(msg)


def psf_eval(theta: float | np.ndarray, alpha: float | np.ndarray) -> np.ndarray:
    """Z(theta) = (1/sqrt(alpha)) (-sin theta, cos theta), stacked on the last axis."""
    _require_positive_alpha(alpha)
    theta = np.asarray(theta, dtype=float)
    scale = 1.0 / np.sqrt(alpha)
    return np.stack([-np.sin(theta) * scale, np.cos(theta) * scale], axis=-1)


@dataclass(frozen=True)
class PSF:
    """The phase sensitivity function of an SL oscillator with parameter alpha."""

    alpha: float

    def __post_init__(self) -> None:
        _require_positive_alpha(self.alpha)

    def __call__(self, theta: float | np.ndarray) -> np.ndarray:
        return psf_eval(theta, self.alpha)


def psf_projected_pin_term(
    theta: float | np.ndarray,
    lam: float | np.ndarray,
    alpha: float | np.ndarray,
) -> float | np.ndarray:
    """
    Frequency perturbation Z(theta) . (lambda, lambda) of an additive input,
    written as sqrt(2/alpha) lambda cos(theta + pi/4).
    """
    _require_positive_alpha(alpha)
    return np.sqrt(2.0 / alpha) * lam * np.cos(np.asarray(theta) + np.pi / 4.0)


def wrap_phase(theta: float | np.ndarray) -> np.ndarray:
    """Map phases into [0, 2 pi)."""
    wrapped = np.mod(theta, TWO_PI)
    # mod of a tiny negative number rounds up to exactly 2 pi
    return np.where(wrapped >= TWO_PI, 0.0, wrapped)


def unwrap_phases(path: np.ndarray, axis: int = 0) -> np.ndarray:
    """Remove 2 pi jumps along the time axis of a sampled phase path."""
    return np.unwrap(path, axis=axis)


def phases_of_states(states: np.ndarray) -> np.ndarray:
    """Polar angle in [0, 2 pi) of every (x, y) pair in an (..., 2) array."""
    states = np.asarray(states, dtype=float)
    x = states[..., 0]
    y = states[..., 1]
    at_origin = (x == 0) & (y == 0)
    if np.any(at_origin):
        where = np.argwhere(at_origin)[0].tolist()
        msg = f"Phase is undefined at the origin (index {where})"
        raise PhaseUndefinedError(msg)
    return wrap_phase(np.arctan2(y, x))


def phase_of_state(state: np.ndarray | tuple[float, float]) -> float:
    """Polar angle in [0, 2 pi) of a single (x, y) state."""
    return float(phases_of_states(np.asarray(state, dtype=float)))


def on_cycle_states(theta: np.ndarray, alpha: float | np.ndarray) -> np.ndarray:
    """X(theta) = sqrt(alpha) (cos theta, sin theta), stacked on the last axis."""
    _require_positive_alpha(alpha)
    theta = np.asarray(theta, dtype=float)
    radius = np.sqrt(alpha)
    return np.stack([radius * np.cos(theta), radius * np.sin(theta)], axis=-1)
