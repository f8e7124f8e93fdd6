import numpy as np
import pytest

from pinsync.control import PinningMode, PinningSchedule
from pinsync.dynamics import CouplingMatrix, SLParams, sl_vector_field
from pinsync.errors import ParameterError, PhaseUndefinedError, QuadratureError, ScheduleError
from pinsync.network import Network, ring_lattice
from pinsync.phase import (
    PSF,
    TWO_PI,
    PhaseNetwork,
    PinnedPhaseNetwork,
    Reduction,
    equivalent_parametric_frequency,
    equivalent_phase_frequencies,
    kuramoto_additive_pinned_rhs,
    kuramoto_parametric_pinned_rhs,
    kuramoto_rhs,
    on_cycle_states,
    phase_of_state,
    phases_of_states,
    psf_coupling_rhs,
    psf_eval,
    psf_projected_pin_term,
    unwrap_phases,
    wrap_phase,
)

THETA_GRID = np.linspace(0.0, TWO_PI, 1000, endpoint=False)


def _additive(pinned: list[int], magnitudes: list[float], t_p: float = 2.0) -> PinningSchedule:
    return PinningSchedule(
        pinned=np.array(pinned),
        t_p=t_p,
        mode=PinningMode.ADDITIVE,
        magnitudes=np.array(magnitudes),
        seed=3,
    )


def test_psf_at_reference_phases() -> None:
    np.testing.assert_allclose(psf_eval(0.0, 1.0), [0.0, 1.0], atol=1e-15)
    np.testing.assert_allclose(psf_eval(np.pi / 2, 1.0), [-1.0, 0.0], atol=1e-15)
    np.testing.assert_allclose(PSF(alpha=4.0)(0.0), [0.0, 0.5], atol=1e-15)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("omega", [0.5, 1.0])
def test_psf_normalization_on_the_cycle(alpha: float, omega: float) -> None:
    on_cycle = on_cycle_states(THETA_GRID, alpha)
    flow = sl_vector_field(on_cycle, alpha, omega)

    projected = np.sum(psf_eval(THETA_GRID, alpha) * flow, axis=-1)

    assert np.max(np.abs(projected - omega)) <= 1e-12


def test_psf_normalization_at_one_point() -> None:
    theta, alpha, omega = 1.3, 2.0, 0.8
    state = np.sqrt(alpha) * np.array([np.cos(theta), np.sin(theta)])
    assert psf_eval(theta, alpha) @ sl_vector_field(state, alpha, omega) == pytest.approx(
        omega, abs=1e-12
    )


def test_psf_rejects_nonpositive_alpha() -> None:
    with pytest.raises(ParameterError):
        psf_eval(0.0, 0.0)
    with pytest.raises(ParameterError):
        psf_projected_pin_term(0.0, 0.1, -1.0)
    with pytest.raises(ParameterError):
        PSF(alpha=-2.0)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
def test_projected_pin_term_is_psf_dot_input(alpha: float) -> None:
    lam = 0.37
    dot = np.sum(psf_eval(THETA_GRID, alpha) * np.array([lam, lam]), axis=-1)
    assert np.max(np.abs(dot - psf_projected_pin_term(THETA_GRID, lam, alpha))) <= 1e-12


def test_projected_pin_term_reference_values() -> None:
    assert psf_projected_pin_term(np.pi / 4, 0.8, 1.5) == pytest.approx(0.0, abs=1e-15)
    assert psf_projected_pin_term(1.1, 0.0, 1.0) == 0.0
    assert psf_projected_pin_term(0.0, 0.1, 1.0) == pytest.approx(0.1, abs=1e-15)
    assert float(psf_eval(0.0, 1.0) @ np.array([0.1, 0.1])) == pytest.approx(0.1, abs=1e-15)


def test_phase_of_state_reference_values() -> None:
    assert phase_of_state((1.0, 0.0)) == 0.0
    assert phase_of_state((0.0, 2.0)) == pytest.approx(np.pi / 2, abs=1e-15)
    assert phase_of_state((-1.0, -1.0)) == pytest.approx(5 * np.pi / 4, abs=1e-15)


def test_phase_is_undefined_at_the_origin() -> None:
    with pytest.raises(PhaseUndefinedError):
        phase_of_state((0.0, 0.0))


def test_phases_of_states_are_wrapped() -> None:
    states = on_cycle_states(np.array([[-0.1, 7.0], [3.0, -4.0]]), 1.0)
    phases = phases_of_states(states)
    assert phases.shape == (2, 2)
    assert np.all((phases >= 0.0) & (phases < TWO_PI))


def test_wrapped_and_unwrapped_phases_agree() -> None:
    times = np.linspace(0.0, 30.0, 3001)
    continuous = 1.3 * times + 0.2
    wrapped = wrap_phase(continuous)
    assert np.all((wrapped >= 0.0) & (wrapped < TWO_PI))

    recovered = unwrap_phases(wrapped)
    np.testing.assert_allclose(recovered - recovered[0], continuous - continuous[0], atol=1e-12)
    np.testing.assert_allclose(
        np.mod(recovered - continuous + np.pi, TWO_PI) - np.pi, 0.0, atol=1e-12
    )


def test_wrap_phase_never_returns_two_pi() -> None:
    assert wrap_phase(-1e-18) == 0.0
    assert wrap_phase(TWO_PI) == 0.0


def test_kuramoto_synchronized_manifold() -> None:
    net = ring_lattice(10, 4)
    np.testing.assert_array_equal(kuramoto_rhs(np.full(10, 2.3), net, 1.1, 0.4), np.full(10, 1.1))


def test_kuramoto_two_nodes() -> None:
    net = Network.from_adjacency(np.array([[0.0, 1.0], [1.0, 0.0]]))
    np.testing.assert_allclose(
        kuramoto_rhs(np.array([0.0, np.pi / 2]), net, 0.0, 1.0), [1.0, -1.0], atol=1e-15
    )


def test_kuramoto_matches_double_loop() -> None:
    rng = np.random.default_rng(12)
    upper = np.triu(rng.uniform(0.0, 1.0, size=(5, 5)), k=1)
    net = Network.from_adjacency(upper + upper.T)
    phases = rng.uniform(0.0, TWO_PI, size=5)

    expected = np.array(
        [
            0.9 + 0.3 * sum(net.adjacency[i, j] * np.sin(phases[j] - phases[i]) for j in range(5))
            for i in range(5)
        ]
    )
    np.testing.assert_allclose(kuramoto_rhs(phases, net, 0.9, 0.3), expected, atol=1e-14)


def test_kuramoto_is_rotation_equivariant() -> None:
    net = ring_lattice(20, 4)
    phases = np.random.default_rng(13).uniform(0.0, TWO_PI, size=20)
    np.testing.assert_allclose(
        kuramoto_rhs(phases + 1.234, net, 1.0, 0.2),
        kuramoto_rhs(phases, net, 1.0, 0.2),
        atol=1e-12,
    )


def test_additive_phase_pinning() -> None:
    net = ring_lattice(6, 2)
    schedule = _additive([0, 2], [0.3, 0.5])
    phases = np.random.default_rng(14).uniform(0.0, TWO_PI, size=6)
    plain = kuramoto_rhs(phases, net, 1.0, 0.1)

    pinned = kuramoto_additive_pinned_rhs(phases, net, 1.0, 0.1, schedule, 1.0)
    np.testing.assert_array_equal(pinned[[1, 3, 4, 5]], plain[[1, 3, 4, 5]])
    np.testing.assert_allclose(pinned[[0, 2]] - plain[[0, 2]], [0.3, 0.5], atol=1e-15)

    np.testing.assert_array_equal(
        kuramoto_additive_pinned_rhs(phases, net, 1.0, 0.1, schedule, 2.5), plain
    )
    isolated = kuramoto_additive_pinned_rhs(phases, net, 1.0, 0.0, schedule, 0.5)
    assert isolated[0] == 1.0 + 0.3


def test_parametric_phase_pinning_cases() -> None:
    net = ring_lattice(6, 2)
    phases = np.random.default_rng(15).uniform(0.0, TWO_PI, size=6)
    plain = kuramoto_rhs(phases, net, 1.0, 0.1)
    no_op = _additive([1, 4], [1.0, 1.0]).as_parametric(np.array([1.0, 1.0]))

    for t in (0.0, 1.0, 5.0):
        np.testing.assert_array_equal(
            kuramoto_parametric_pinned_rhs(phases, net, 1.0, 0.1, no_op, t), plain
        )

    faster = no_op.as_parametric(np.array([1.5, 0.5]))
    inside = kuramoto_parametric_pinned_rhs(phases, net, 1.0, 0.1, faster, 1.0)
    after = kuramoto_parametric_pinned_rhs(phases, net, 1.0, 0.1, faster, 2.01)
    np.testing.assert_allclose(inside[[1, 4]] - plain[[1, 4]], [0.5, -0.5], atol=1e-15)
    np.testing.assert_array_equal(after, plain)


def test_additive_and_equivalent_parametric_rhs_are_bit_identical() -> None:
    net = ring_lattice(30, 4)
    rng = np.random.default_rng(16)
    omegas = 1.0 + rng.uniform(-0.05, 0.05, size=30)
    schedule = _additive(list(range(10)), list(rng.uniform(0.0, 0.1, size=10)))
    parametric = schedule.as_parametric(equivalent_phase_frequencies(omegas, schedule))

    for t in (0.0, 0.5, 2.0, 3.0):
        phases = rng.uniform(0.0, TWO_PI, size=30)
        np.testing.assert_array_equal(
            kuramoto_additive_pinned_rhs(phases, net, omegas, 0.01, schedule, t),
            kuramoto_parametric_pinned_rhs(phases, net, omegas, 0.01, parametric, t),
        )


def test_equivalent_phase_frequencies_need_additive_schedule() -> None:
    schedule = _additive([0], [0.2]).as_parametric(np.array([1.2]))
    with pytest.raises(ScheduleError):
        equivalent_phase_frequencies(np.ones(4), schedule)


def test_pinned_phase_network_objects_agree() -> None:
    net = ring_lattice(12, 4)
    params = SLParams(alpha=1.0, omega=1.0)
    coupling = CouplingMatrix(0.02)
    schedule = _additive([0, 1, 2], [0.05, 0.02, 0.07])
    parametric = schedule.as_parametric(equivalent_phase_frequencies(params.omegas(12), schedule))
    additive_field = PinnedPhaseNetwork(net, params, coupling, schedule)
    parametric_field = PinnedPhaseNetwork(net, params, coupling, parametric)
    phases = np.random.default_rng(17).uniform(0.0, TWO_PI, size=12)

    assert additive_field.state_shape == (12,)
    for t in (0.0, 1.9, 2.0, 4.0):
        np.testing.assert_array_equal(additive_field(t, phases), parametric_field(t, phases))
    np.testing.assert_array_equal(
        PhaseNetwork(net, params, coupling)(0.0, phases), kuramoto_rhs(phases, net, 1.0, 0.02)
    )


def test_psf_reduction_of_default_coupling() -> None:
    net = ring_lattice(10, 4)
    eps = 0.03
    params = SLParams(alpha=1.7, omega=0.9)
    phases = np.random.default_rng(18).uniform(0.0, TWO_PI, size=10)
    differences = phases[np.newaxis, :] - phases[:, np.newaxis]

    expected = 0.9 + eps * np.sum(
        net.adjacency * (np.sin(differences) + np.cos(differences) - 1.0), axis=1
    )

    np.testing.assert_allclose(
        psf_coupling_rhs(phases, net, params, CouplingMatrix(eps)), expected, atol=1e-12
    )
    field = PhaseNetwork(net, params, CouplingMatrix(eps), reduction=Reduction.PSF)
    np.testing.assert_allclose(field(0.0, phases), expected, atol=1e-12)


def test_psf_reduction_of_identity_coupling_is_kuramoto() -> None:
    # an identity d_unit projects onto sin(theta_j - theta_i)
    net = ring_lattice(8, 2)
    params = SLParams(alpha=1.0, omega=1.0)
    coupling = CouplingMatrix(0.05, np.eye(2))
    phases = np.random.default_rng(19).uniform(0.0, TWO_PI, size=8)

    np.testing.assert_allclose(
        psf_coupling_rhs(phases, net, params, coupling),
        kuramoto_rhs(phases, net, 1.0, 0.05),
        atol=1e-12,
    )


def test_equivalent_frequency_without_control_is_omega() -> None:
    times = np.arange(1001) * 0.01
    phases = 0.7 * times
    assert equivalent_parametric_frequency(times, phases, 0.0, 1.0, 0.7, 10.0) == 0.7


def test_equivalent_frequency_of_constant_path() -> None:
    times = np.arange(1001) * 0.01
    theta0, lam, alpha, omega = 0.4, 0.1, 1.3, 1.0
    result = equivalent_parametric_frequency(
        times, np.full(times.size, theta0), lam, alpha, omega, 10.0
    )
    expected = omega + np.sqrt(2.0 / alpha) * lam * np.cos(theta0 + np.pi / 4)
    assert result == pytest.approx(expected, rel=1e-12)


def test_equivalent_frequency_averages_out_over_whole_periods() -> None:
    omega = 1.0
    t_p = 2 * TWO_PI / omega
    times = np.linspace(0.0, t_p, round(t_p / 0.01) + 1)

    result = equivalent_parametric_frequency(times, omega * times, 0.1, 1.0, omega, t_p)

    assert abs(result - omega) <= 1e-6


def test_equivalent_frequency_for_several_nodes() -> None:
    times = np.arange(501) * 0.01
    theta0 = np.array([0.0, 1.0, 2.0])
    phases = np.tile(theta0, (times.size, 1))
    lam = np.array([0.1, 0.2, 0.3])

    result = equivalent_parametric_frequency(times, phases, lam, 1.0, 1.0, 5.0)

    np.testing.assert_allclose(
        result, 1.0 + np.sqrt(2.0) * lam * np.cos(theta0 + np.pi / 4), rtol=1e-12
    )


@pytest.mark.parametrize(
    ("times", "t_p", "match"),
    [
        (np.array([0.0]), 1.0, "two samples"),
        (np.array([0.0, 0.4, 1.0]), 1.0, "uniformly"),
        (np.arange(11) * 0.1, 2.0, "cover"),
        (np.arange(11) * 0.1, 0.0, "positive"),
    ],
)
def test_equivalent_frequency_rejects_bad_samples(
    times: np.ndarray, t_p: float, match: str
) -> None:
    with pytest.raises(QuadratureError, match=match):
        equivalent_parametric_frequency(times, np.zeros(times.size), 0.1, 1.0, 1.0, t_p)
