from .diagnostics import (
    ComparisonReport,
    amplitude_deviation,
    circular_distance,
    closed_form_radius,
    compare_trajectories,
    measure_period,
    order_parameter,
)
from .experiment import (
    Experiment,
    build_experiment,
    build_network,
    build_schedule,
    initial_phases,
    initial_state,
    run_comparison,
    run_full_experiment,
    run_paired_comparison,
    run_phase_model_comparison,
    run_reduction_check,
)
from .integrator import IntegratorConfig, Trajectory, integrate, rk4_step
from .sweep import SweepPoint, run_sweep, sweep_frame, sweep_grid

__all__ = [
    "ComparisonReport",
    "Experiment",
    "IntegratorConfig",
    "SweepPoint",
    "Trajectory",
    "amplitude_deviation",
    "build_experiment",
    "build_network",
    "build_schedule",
    "circular_distance",
    "closed_form_radius",
    "compare_trajectories",
    "initial_phases",
    "initial_state",
    "integrate",
    "measure_period",
    "order_parameter",
    "rk4_step",
    "run_comparison",
    "run_full_experiment",
    "run_paired_comparison",
    "run_phase_model_comparison",
    "run_reduction_check",
    "run_sweep",
    "sweep_frame",
    "sweep_grid",
]
