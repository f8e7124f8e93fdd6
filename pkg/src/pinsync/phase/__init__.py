from .equivalence import equivalent_parametric_frequency
from .kuramoto import (
    PhaseNetwork,
    PinnedPhaseNetwork,
    Reduction,
    equivalent_phase_frequencies,
    kuramoto_additive_pinned_rhs,
    kuramoto_coupling,
    kuramoto_parametric_pinned_rhs,
    kuramoto_rhs,
    pinned_frequencies,
    psf_coupling,
    psf_coupling_rhs,
)
from .psf import (
    PSF,
    TWO_PI,
    on_cycle_states,
    phase_of_state,
    phases_of_states,
    psf_eval,
    psf_projected_pin_term,
    unwrap_phases,
    wrap_phase,
)

__all__ = [
    "PSF",
    "TWO_PI",
    "PhaseNetwork",
    "PinnedPhaseNetwork",
    "Reduction",
    "equivalent_parametric_frequency",
    "equivalent_phase_frequencies",
    "kuramoto_additive_pinned_rhs",
    "kuramoto_coupling",
    "kuramoto_parametric_pinned_rhs",
    "kuramoto_rhs",
    "on_cycle_states",
    "phase_of_state",
    "phases_of_states",
    "pinned_frequencies",
    "psf_coupling",
    "psf_coupling_rhs",
    "psf_eval",
    "psf_projected_pin_term",
    "unwrap_phases",
    "wrap_phase",
]
