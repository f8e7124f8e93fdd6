import numpy as np
import structlog

from pinsync.errors import QuadratureError
from pinsync.phase.psf import psf_projected_pin_term

logger = structlog.get_logger(__name__)

SPACING_TOLERANCE = 1e-9


def _check_samples(times: np.ndarray, t_p: float) -> None:
    if times.ndim != 1 or times.size < 2:  # noqa: PLR2004
        msg = f"Need at least two samples to integrate, got {times.size}"
        raise QuadratureError(msg)
    if not t_p > 0:
        msg = f"Control duration t_p must be positive, got {t_p}"
        raise QuadratureError(msg)
    spacing = np.diff(times)
    step = spacing.mean()
    if not step > 0 or np.max(np.abs(spacing - step)) > SPACING_TOLERANCE * step:
        msg = "Samples must be uniformly spaced in time"
        raise QuadratureError(msg)
    if abs(times[0]) > SPACING_TOLERANCE * t_p or abs(times[-1] - t_p) > SPACING_TOLERANCE * t_p:
        msg = f"Samples must cover [0, {t_p}], got [{times[0]}, {times[-1]}]"
        raise QuadratureError(msg)


def equivalent_parametric_frequency(  # noqa: PLR0913
    times: np.ndarray,
    phases: np.ndarray,
    lam: float | np.ndarray,
    alpha: float | np.ndarray,
    omega: float | np.ndarray,
    t_p: float,
) -> float | np.ndarray:
    """
    omega_p = omega + (1/t_p) int_0^t_p sqrt(2/alpha) lambda cos(theta(t) + pi/4) dt

    `phases` holds theta sampled at `times` (uniform, covering [0, t_p]);
    a second axis holds several pinned nodes at once, with `lam`, `alpha` and
    `omega` broadcasting along it. The integral uses the trapezoid rule.
    """
    times = np.asarray(times, dtype=float)
    phases = np.asarray(phases, dtype=float)
    _check_samples(times, t_p)
    if phases.shape[0] != times.size:
        msg = f"Got {phases.shape[0]} phase samples for {times.size} times"
        raise QuadratureError(msg)
    integrand = psf_projected_pin_term(phases, lam, alpha)
    mean_shift = np.trapezoid(integrand, times, axis=0) / t_p
    return omega + mean_shift
