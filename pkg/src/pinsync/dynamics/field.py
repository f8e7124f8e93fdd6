"""
Right-hand sides of the full (non-reduced) Stuart-Landau network.

States are arrays of shape (n, 2) holding (x_i, y_i) per row. The coupling
sums the Laplacian over the neighbour states, D * sum_j L_ij X_j, which is the
diffusive form D * sum_j A_ij (X_j - X_i) since every row of L sums to zero.
"""

from typing import override

import numpy as np

from pinsync.control import PinningMode, PinningSchedule
from pinsync.dynamics.base import BaseVectorField, check_shape
from pinsync.dynamics.config import CouplingMatrix, SLParams
from pinsync.errors import NonFiniteStateError, ScheduleError
from pinsync.network import Network


def sl_vector_field(
    state: np.ndarray, alpha: float | np.ndarray, omega: float | np.ndarray
) -> np.ndarray:
    """
    The isolated oscillator F(X) for one state (2,) or a stack (..., 2):

        dx = alpha x - omega y - (x^2 + y^2) x
        dy = omega x + alpha y - (x^2 + y^2) y

    `alpha` and `omega` broadcast against the leading axes of `state`.
    """
    state = np.asarray(state, dtype=float)
    if not np.all(np.isfinite(state)):
        raise NonFiniteStateError()
    x = state[..., 0]
    y = state[..., 1]
    r2 = x * x + y * y
    dx = alpha * x - omega * y - r2 * x
    dy = omega * x + alpha * y - r2 * y
    return np.stack([dx, dy], axis=-1)


def diffusive_coupling(
    state: np.ndarray, net: Network, coupling: CouplingMatrix
) -> np.ndarray:
    """Per-node D sum_j L_ij X_j, shape (n, 2)."""
    return (net.laplacian @ state) @ coupling.matrix.T


def _require_mode(schedule: PinningSchedule, mode: PinningMode) -> None:
    if schedule.mode is not mode:
        msg = f"Expected a {mode} schedule, got {schedule.mode}"
        raise ScheduleError(msg)


def network_rhs(
    state: np.ndarray,
    net: Network,
    params: SLParams,
    coupling: CouplingMatrix,
) -> np.ndarray:
    """X_i' = F_i(X_i) + D sum_j L_ij X_j for every node."""
    state = np.asarray(state, dtype=float)
    check_shape(state, (net.n, 2))
    local = sl_vector_field(state, params.alphas(net.n), params.omegas(net.n))
    return local + diffusive_coupling(state, net, coupling)


def additive_pinned_rhs(  # noqa: PLR0913
    state: np.ndarray,
    net: Network,
    params: SLParams,
    coupling: CouplingMatrix,
    schedule: PinningSchedule,
    t: float,
) -> np.ndarray:
    """network_rhs plus (lambda_i, lambda_i) on pinned rows while 0 <= t <= t_p."""
    _require_mode(schedule, PinningMode.ADDITIVE)
    derivative = network_rhs(state, net, params, coupling)
    if schedule.active(t):
        derivative[schedule.pinned] += schedule.magnitudes[:, np.newaxis]
    return derivative


def parametric_pinned_rhs(  # noqa: PLR0913
    state: np.ndarray,
    net: Network,
    params: SLParams,
    coupling: CouplingMatrix,
    schedule: PinningSchedule,
    t: float,
) -> np.ndarray:
    """
    network_rhs where pinned nodes run at omega_p,i while 0 <= t <= t_p and
    return to their own omega_i afterwards; alpha is never changed.
    """
    _require_mode(schedule, PinningMode.PARAMETRIC)
    state = np.asarray(state, dtype=float)
    check_shape(state, (net.n, 2))
    omegas = params.omegas(net.n)
    if schedule.active(t):
        omegas[schedule.pinned] = schedule.magnitudes
    local = sl_vector_field(state, params.alphas(net.n), omegas)
    return local + diffusive_coupling(state, net, coupling)


class StuartLandauNetwork(BaseVectorField):
    """The uncontrolled network as an integrator right-hand side."""

    def __init__(
        self, net: Network, params: SLParams, coupling: CouplingMatrix
    ) -> None:
        self.net = net
        self.params = params
        self.coupling = coupling

    @property
    @override
    def state_shape(self) -> tuple[int, ...]:
        return (self.net.n, 2)

    @override
    def evaluate(self, t: float, state: np.ndarray) -> np.ndarray:
        return network_rhs(state, self.net, self.params, self.coupling)


class AdditivePinnedNetwork(StuartLandauNetwork):
    def __init__(
        self,
        net: Network,
        params: SLParams,
        coupling: CouplingMatrix,
        schedule: PinningSchedule,
    ) -> None:
        super().__init__(net, params, coupling)
        _require_mode(schedule, PinningMode.ADDITIVE)
        schedule.validate_for(net.n)
        self.schedule = schedule

    @override
    def evaluate(self, t: float, state: np.ndarray) -> np.ndarray:
        return additive_pinned_rhs(
            state, self.net, self.params, self.coupling, self.schedule, t
        )


class ParametricPinnedNetwork(StuartLandauNetwork):
    def __init__(
        self,
        net: Network,
        params: SLParams,
        coupling: CouplingMatrix,
        schedule: PinningSchedule,
    ) -> None:
        super().__init__(net, params, coupling)
        _require_mode(schedule, PinningMode.PARAMETRIC)
        schedule.validate_for(net.n)
        self.schedule = schedule

    @override
    def evaluate(self, t: float, state: np.ndarray) -> np.ndarray:
        return parametric_pinned_rhs(
            state, self.net, self.params, self.coupling, self.schedule, t
        )
