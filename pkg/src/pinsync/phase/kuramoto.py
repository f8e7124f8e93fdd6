"""
Phase-reduced network dynamics, with and without pinning.

Both pinned variants compute their right-hand side as

    theta_i' = nu_i(t) + coupling_i(theta)

where the per-row frequency nu_i(t) comes from `pinned_frequencies`. An
additive schedule with magnitudes lambda_i and a parametric schedule with
omega_p,i = omega_i + lambda_i therefore produce the same floating-point
result, operation for operation.
"""

from enum import StrEnum
from typing import override

import numpy as np

from pinsync.control import PinningMode, PinningSchedule
from pinsync.dynamics import BaseVectorField, CouplingMatrix, SLParams, check_shape
from pinsync.dynamics.field import diffusive_coupling
from pinsync.errors import ScheduleError
from pinsync.network import Network
from pinsync.phase.psf import on_cycle_states, psf_eval


class Reduction(StrEnum):
    """Which phase-reduced coupling to use."""

    # eps * sum_j A_ij sin(theta_j - theta_i)
    KURAMOTO = "kuramoto"
    # sum_j A_ij Z(theta_i) . D (X_j(theta_j) - X_i(theta_i)), any d_unit
    PSF = "psf"


def kuramoto_coupling(phases: np.ndarray, net: Network, epsilon: float) -> np.ndarray:
    """eps * sum_j A_ij sin(theta_j - theta_i) per node."""
    differences = phases[np.newaxis, :] - phases[:, np.newaxis]
    return epsilon * (net.adjacency * np.sin(differences)).sum(axis=1)


def psf_coupling(
    phases: np.ndarray, net: Network, params: SLParams, coupling: CouplingMatrix
) -> np.ndarray:
    """
    First-order phase reduction of the diffusive coupling.

    Since sum_j A_ij (X_j - X_i) = sum_j L_ij X_j, the projection reduces to
    Z(theta_i) . D (L X(theta))_i with every node placed on its own cycle.
    """
    alphas = params.alphas(net.n)
    on_cycle = on_cycle_states(phases, alphas)
    projected = diffusive_coupling(on_cycle, net, coupling)
    return np.sum(psf_eval(phases, alphas) * projected, axis=-1)


def _as_phases(phases: np.ndarray, net: Network) -> np.ndarray:
    phases = np.asarray(phases, dtype=float)
    check_shape(phases, (net.n,))
    return phases


def kuramoto_rhs(
    phases: np.ndarray,
    net: Network,
    omega: float | np.ndarray,
    epsilon: float,
) -> np.ndarray:
    """theta_i' = omega_i + eps * sum_j A_ij sin(theta_j - theta_i)."""
    phases = _as_phases(phases, net)
    return omega + kuramoto_coupling(phases, net, epsilon)


def pinned_frequencies(
    omegas: np.ndarray, schedule: PinningSchedule, t: float
) -> np.ndarray:
    """
    Per-row frequency nu_i(t) under a schedule: omega_i + lambda_i (additive)
    or omega_p,i (parametric) on pinned rows inside the window, omega_i
    everywhere else.
    """
    frequencies = np.array(omegas, dtype=float)
    if not schedule.active(t):
        return frequencies
    match schedule.mode:
        case PinningMode.ADDITIVE:
            frequencies[schedule.pinned] = (
                frequencies[schedule.pinned] + schedule.magnitudes
            )
        case PinningMode.PARAMETRIC:
            frequencies[schedule.pinned] = schedule.magnitudes
    return frequencies


def equivalent_phase_frequencies(
    omegas: np.ndarray, schedule: PinningSchedule
) -> np.ndarray:
    """omega_p,i = omega_i + lambda_i for the pinned nodes of an additive schedule."""
    if schedule.mode is not PinningMode.ADDITIVE:
        msg = f"Expected an additive schedule, got {schedule.mode}"
        raise ScheduleError(msg)
    return np.asarray(omegas, dtype=float)[schedule.pinned] + schedule.magnitudes


def _pinned_rhs(  # noqa: PLR0913
    phases: np.ndarray,
    net: Network,
    omega: float | np.ndarray,
    epsilon: float,
    schedule: PinningSchedule,
    t: float,
    mode: PinningMode,
) -> np.ndarray:
    if schedule.mode is not mode:
        msg = f"Expected a {mode} schedule, got {schedule.mode}"
        raise ScheduleError(msg)
    phases = _as_phases(phases, net)
    omegas = np.broadcast_to(np.asarray(omega, dtype=float), (net.n,))
    return pinned_frequencies(omegas, schedule, t) + kuramoto_coupling(
        phases, net, epsilon
    )


def kuramoto_additive_pinned_rhs(  # noqa: PLR0913
    phases: np.ndarray,
    net: Network,
    omega: float | np.ndarray,
    epsilon: float,
    schedule: PinningSchedule,
    t: float,
) -> np.ndarray:
    """Kuramoto plus a constant lambda_i on pinned rows during [0, t_p]."""
    return _pinned_rhs(phases, net, omega, epsilon, schedule, t, PinningMode.ADDITIVE)


def kuramoto_parametric_pinned_rhs(  # noqa: PLR0913
    phases: np.ndarray,
    net: Network,
    omega: float | np.ndarray,
    epsilon: float,
    schedule: PinningSchedule,
    t: float,
) -> np.ndarray:
    """Kuramoto with pinned rows running at omega_p,i during [0, t_p]."""
    return _pinned_rhs(
        phases, net, omega, epsilon, schedule, t, PinningMode.PARAMETRIC
    )


def psf_coupling_rhs(
    phases: np.ndarray,
    net: Network,
    params: SLParams,
    coupling: CouplingMatrix,
) -> np.ndarray:
    """theta_i' = omega_i + Z(theta_i) . D sum_j L_ij X_j(theta_j)."""
    phases = _as_phases(phases, net)
    return params.omegas(net.n) + psf_coupling(phases, net, params, coupling)


class PhaseNetwork(BaseVectorField):
    """A phase-reduced network as an integrator right-hand side."""

    def __init__(
        self,
        net: Network,
        params: SLParams,
        coupling: CouplingMatrix,
        reduction: Reduction = Reduction.KURAMOTO,
    ) -> None:
        self.net = net
        self.params = params
        self.coupling = coupling
        self.reduction = Reduction(reduction)
        self.omegas = params.omegas(net.n)

    @property
    @override
    def state_shape(self) -> tuple[int, ...]:
        return (self.net.n,)

    def coupling_term(self, phases: np.ndarray) -> np.ndarray:
        match self.reduction:
            case Reduction.KURAMOTO:
                return kuramoto_coupling(phases, self.net, self.coupling.epsilon)
            case Reduction.PSF:
                return psf_coupling(phases, self.net, self.params, self.coupling)

    def frequencies(self, t: float) -> np.ndarray:  # noqa: ARG002
        return self.omegas

    @override
    def evaluate(self, t: float, state: np.ndarray) -> np.ndarray:
        phases = _as_phases(state, self.net)
        return self.frequencies(t) + self.coupling_term(phases)


class PinnedPhaseNetwork(PhaseNetwork):
    """
    A phase-reduced network under an additive or parametric schedule; the
    schedule's mode selects the protocol.
    """

    def __init__(
        self,
        net: Network,
        params: SLParams,
        coupling: CouplingMatrix,
        schedule: PinningSchedule,
        reduction: Reduction = Reduction.KURAMOTO,
    ) -> None:
        super().__init__(net, params, coupling, reduction)
        schedule.validate_for(net.n)
        self.schedule = schedule

    @override
    def frequencies(self, t: float) -> np.ndarray:
        return pinned_frequencies(self.omegas, self.schedule, t)
