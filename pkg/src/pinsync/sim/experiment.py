"""
Experiment orchestration: build every component from an ExperimentConfig,
run it, and compare paired runs.

Paired runs always share initial conditions and the schedule seed; the only
difference between them is the right-hand side.
"""

import hashlib
from dataclasses import dataclass, replace
from typing import Any

import numpy as np
import structlog

import pinsync
from pinsync.cli.config import ExperimentConfig
from pinsync.control import MagnitudeSource, PinningMode, PinningSchedule, default_pinned_set
from pinsync.dynamics import (
    AdditivePinnedNetwork,
    BaseVectorField,
    CouplingMatrix,
    ParametricPinnedNetwork,
    SLParams,
    StuartLandauNetwork,
)
from pinsync.errors import ScheduleError
from pinsync.network import Network, load_edge_list, ring_lattice
from pinsync.phase import (
    TWO_PI,
    PhaseNetwork,
    PinnedPhaseNetwork,
    equivalent_parametric_frequency,
    equivalent_phase_frequencies,
    on_cycle_states,
    phases_of_states,
    unwrap_phases,
)
from pinsync.sim.diagnostics import ComparisonReport, compare_trajectories
from pinsync.sim.integrator import IntegratorConfig, Trajectory, integrate
from pinsync.utils import RNG_ALGORITHM, Stream, format_value, make_rng, render_flat

logger = structlog.get_logger(__name__)

# schedule keys of meta.cfg that carry drawn values
RESOLVED_SCHEDULE_KEYS = ("schedule.nodes", "schedule.magnitudes")


@dataclass(frozen=True, eq=False)
class Experiment:
    """The components an ExperimentConfig resolves to."""

    config: ExperimentConfig
    net: Network
    params: SLParams
    coupling: CouplingMatrix
    schedule: PinningSchedule | None
    integrator: IntegratorConfig

    @property
    def n(self) -> int:
        return self.net.n

    @property
    def alphas(self) -> np.ndarray:
        return self.params.alphas(self.n)

    @property
    def omegas(self) -> np.ndarray:
        return self.params.omegas(self.n)

    def require_schedule(self, mode: PinningMode) -> PinningSchedule:
        if self.schedule is None or self.schedule.mode is not mode:
            got = "none" if self.schedule is None else str(self.schedule.mode)
            msg = f"This run needs an {mode} schedule, the config has {got}"
            raise ScheduleError(msg)
        return self.schedule

    def resolved(self) -> dict[str, Any]:
        """
        The config with drawn values made explicit: parsing it again gives the
        same run bit for bit.
        """
        entries = self.config.to_flat()
        if self.schedule is not None:
            flat = self.schedule.to_flat()
            entries["schedule.n_pinned"] = self.schedule.n_pinned
            entries.update({key: flat[key] for key in RESOLVED_SCHEDULE_KEYS})
        return entries

    def run_id(self) -> str:
        """Short content hash of the resolved config."""
        return hashlib.sha256(render_flat(self.resolved()).encode()).hexdigest()[:12]

    def metadata(self) -> dict[str, Any]:
        metadata: dict[str, Any] = {
            "run_id": self.run_id(),
            "version": pinsync.__version__,
            "rng": RNG_ALGORITHM,
            "seed": self.config.seed,
            "model": self.config.model.kind,
            "config": self.resolved(),
        }
        if self.params.delta_alpha is not None:
            metadata["drawn.delta_alpha"] = format_value(self.params.delta_alpha)
        if self.params.delta_omega is not None:
            metadata["drawn.delta_omega"] = format_value(self.params.delta_omega)
        return metadata


def build_network(config: ExperimentConfig) -> Network:
    network = config.network
    if network.kind == "ring":
        if network.n is None:
            msg = "A ring lattice needs network.n"
            raise ValueError(msg)
        return ring_lattice(network.n, network.k)
    if network.path is None:
        msg = "An edge_list network needs network.path"
        raise ValueError(msg)
    return load_edge_list(network.path, n=network.n)


def build_schedule(
    config: ExperimentConfig, net: Network, params: SLParams
) -> PinningSchedule | None:
    """
    Additive magnitudes are lambda_i = draw; parametric ones are
    omega_p,i = omega_i + draw. Explicit magnitudes are taken as given.
    """
    section = config.schedule
    mode = section.pinning_mode
    if mode is None:
        return None
    pinned = (
        np.array(section.nodes, dtype=int)
        if section.nodes is not None
        else default_pinned_set(config.n_pinned, net.n)
    )
    if section.magnitudes is not None:
        schedule = PinningSchedule(
            pinned=pinned,
            t_p=section.t_p,
            mode=mode,
            magnitudes=np.array(section.magnitudes, dtype=float),
            seed=config.seed,
            source=MagnitudeSource.EXPLICIT,
        )
    else:
        offset = params.omegas(net.n)[pinned] if mode is PinningMode.PARAMETRIC else 0.0
        schedule = PinningSchedule.drawn(
            mode=mode,
            pinned=pinned,
            t_p=section.t_p,
            scale=section.scale,
            seed=config.seed,
            interval=section.interval,
            offset=offset,
        )
    schedule.validate_for(net.n, horizon=config.integrator.horizon)
    return schedule


def build_experiment(config: ExperimentConfig) -> Experiment:
    net = build_network(config)
    oscillator = config.oscillator
    params = SLParams.draw(
        alpha=oscillator.alpha,
        omega=oscillator.omega,
        n=net.n,
        alpha_spread=oscillator.delta_alpha,
        omega_spread=oscillator.delta_omega,
        seed=config.seed,
        threshold=oscillator.threshold,
    )
    d_unit = config.coupling.d_unit
    coupling = (
        CouplingMatrix(config.coupling.epsilon, np.reshape(d_unit, (2, 2)))
        if d_unit is not None
        else CouplingMatrix(config.coupling.epsilon)
    )
    integrator = IntegratorConfig(
        dt=config.integrator.dt,
        horizon=config.integrator.horizon,
        record_every=config.integrator.record_every,
    )
    return Experiment(
        config=config,
        net=net,
        params=params,
        coupling=coupling,
        schedule=build_schedule(config, net, params),
        integrator=integrator,
    )


def initial_phases(n: int, seed: int) -> np.ndarray:
    """Phases drawn i.i.d. from Uniform[0, 2 pi) on the initial-phase stream."""
    return make_rng(seed, Stream.INITIAL_PHASES).uniform(0.0, TWO_PI, size=n)


def initial_state(n: int, params: SLParams, seed: int) -> np.ndarray:
    """Every node on its own limit cycle, r_i(0) = sqrt(alpha_i)."""
    return on_cycle_states(initial_phases(n, seed), params.alphas(n))


def _full_field(
    experiment: Experiment, schedule: PinningSchedule | None
) -> BaseVectorField:
    args = (experiment.net, experiment.params, experiment.coupling)
    if schedule is None:
        return StuartLandauNetwork(*args)
    if schedule.mode is PinningMode.ADDITIVE:
        return AdditivePinnedNetwork(*args, schedule)
    return ParametricPinnedNetwork(*args, schedule)


def _phase_field(
    experiment: Experiment, schedule: PinningSchedule | None
) -> BaseVectorField:
    args = (experiment.net, experiment.params, experiment.coupling)
    reduction = experiment.config.model.reduction
    if schedule is None:
        return PhaseNetwork(*args, reduction=reduction)
    return PinnedPhaseNetwork(*args, schedule, reduction=reduction)


def run_full_experiment(config: ExperimentConfig) -> Trajectory:
    """
    Integrate the configured right-hand side (plain, additive or parametric)
    of the full or the phase-reduced model.
    """
    experiment = build_experiment(config)
    metadata = experiment.metadata()
    log = logger.bind(run_id=metadata["run_id"])
    if config.model.kind == "phase":
        rhs = _phase_field(experiment, experiment.schedule)
        start = initial_phases(experiment.n, config.seed)
    else:
        rhs = _full_field(experiment, experiment.schedule)
        start = initial_state(experiment.n, experiment.params, config.seed)
    log.info(
        "Run has started.",
        model=config.model.kind,
        n=experiment.n,
        mode=config.schedule.mode,
        steps=experiment.integrator.steps,
        seed=config.seed,
    )
    trajectory = integrate(rhs, start, experiment.integrator)
    log.info("Run has finished.", samples=trajectory.times.size)
    return replace(trajectory, metadata=metadata)


def run_paired_comparison(config: ExperimentConfig) -> ComparisonReport:
    """
    Full-model additive run, then omega_p,i from the time average of the
    PSF-projected input along each pinned node's phase over [0, t_p], then a
    parametric run from the same initial state.
    """
    experiment = build_experiment(config)
    schedule = experiment.require_schedule(PinningMode.ADDITIVE)
    metadata = experiment.metadata()
    log = logger.bind(run_id=metadata["run_id"])
    start = initial_state(experiment.n, experiment.params, config.seed)

    window = experiment.integrator.steps_until(schedule.t_p)
    pinned_phases: list[np.ndarray] = []

    def collect(step: int, t: float, state: np.ndarray) -> None:  # noqa: ARG001
        if step <= window:
            pinned_phases.append(phases_of_states(state[schedule.pinned]))

    log.info(
        "Paired comparison has started.",
        n=experiment.n,
        epsilon=config.coupling.epsilon,
        scale=config.schedule.scale,
        n_pinned=schedule.n_pinned,
        seed=config.seed,
    )
    additive = integrate(
        _full_field(experiment, schedule), start, experiment.integrator, observer=collect
    )
    omega_p = np.asarray(
        equivalent_parametric_frequency(
            times=np.arange(window + 1) * experiment.integrator.dt,
            phases=unwrap_phases(np.array(pinned_phases)),
            lam=schedule.magnitudes,
            alpha=experiment.alphas[schedule.pinned],
            omega=experiment.omegas[schedule.pinned],
            t_p=schedule.t_p,
        )
    )
    parametric_schedule = schedule.as_parametric(omega_p)
    parametric = integrate(
        _full_field(experiment, parametric_schedule), start, experiment.integrator
    )
    report = compare_trajectories(
        {
            "additive": replace(additive, metadata=metadata),
            "parametric": replace(parametric, metadata=metadata),
        },
        experiment.alphas,
        omega_p=omega_p,
        pinned=schedule.pinned,
    )
    log.info("Paired comparison has finished.", **report.summary)
    return report


def run_phase_model_comparison(config: ExperimentConfig) -> ComparisonReport:
    """
    Additive and parametric phase-model runs with omega_p,i = omega_i + lambda_i,
    from identical initial phases.
    """
    experiment = build_experiment(config)
    schedule = experiment.require_schedule(PinningMode.ADDITIVE)
    metadata = experiment.metadata()
    log = logger.bind(run_id=metadata["run_id"])
    start = initial_phases(experiment.n, config.seed)
    omega_p = equivalent_phase_frequencies(experiment.omegas, schedule)

    log.info(
        "Phase-model comparison has started.",
        n=experiment.n,
        reduction=config.model.reduction,
        n_pinned=schedule.n_pinned,
        seed=config.seed,
    )
    additive = integrate(_phase_field(experiment, schedule), start, experiment.integrator)
    parametric = integrate(
        _phase_field(experiment, schedule.as_parametric(omega_p)),
        start,
        experiment.integrator,
    )
    report = compare_trajectories(
        {
            "additive": replace(additive, metadata=metadata),
            "parametric": replace(parametric, metadata=metadata),
        },
        experiment.alphas,
        omega_p=omega_p,
        pinned=schedule.pinned,
    )
    log.info("Phase-model comparison has finished.", **report.summary)
    return report


def run_comparison(config: ExperimentConfig) -> ComparisonReport:
    """The paired comparison matching `model.kind`."""
    if config.model.kind == "phase":
        return run_phase_model_comparison(config)
    return run_paired_comparison(config)


def run_reduction_check(config: ExperimentConfig) -> ComparisonReport:
    """
    The unpinned full network against its phase reduction, both started from
    the same initial phases.
    """
    experiment = build_experiment(config)
    metadata = experiment.metadata()
    log = logger.bind(run_id=metadata["run_id"])
    phases = initial_phases(experiment.n, config.seed)

    log.info(
        "Reduction check has started.",
        n=experiment.n,
        epsilon=config.coupling.epsilon,
        reduction=config.model.reduction,
    )
    full = integrate(
        _full_field(experiment, None),
        on_cycle_states(phases, experiment.alphas),
        experiment.integrator,
    )
    reduced = integrate(_phase_field(experiment, None), phases, experiment.integrator)
    report = compare_trajectories(
        {
            "full": replace(full, metadata=metadata),
            "phase": replace(reduced, metadata=metadata),
        },
        experiment.alphas,
    )
    log.info("Reduction check has finished.", **report.summary)
    return report
