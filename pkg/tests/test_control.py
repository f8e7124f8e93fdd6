import numpy as np
import pytest

from pinsync.control import (
    Interval,
    MagnitudeSource,
    PinningMode,
    PinningSchedule,
    control_window_active,
    default_pinned_set,
    draw_magnitudes,
)
from pinsync.errors import ScheduleError
from pinsync.utils import parse_flat, render_flat


def test_window_is_closed_at_both_ends() -> None:
    assert control_window_active(0.0, 10.0)
    assert control_window_active(10.0, 10.0)
    assert not control_window_active(10.0 + 1e-12, 10.0)
    assert not control_window_active(-1e-12, 10.0)


def test_default_pinned_set_is_the_first_nodes() -> None:
    np.testing.assert_array_equal(default_pinned_set(20, 60), np.arange(20))


@pytest.mark.parametrize(("n_pinned", "n"), [(0, 60), (60, 60), (61, 60)])
def test_default_pinned_set_rejects_bad_sizes(n_pinned: int, n: int) -> None:
    with pytest.raises(ScheduleError):
        default_pinned_set(n_pinned, n)


def test_draws_are_deterministic_per_seed() -> None:
    first = draw_magnitudes(20, 0.1, seed=20240601)
    second = draw_magnitudes(20, 0.1, seed=20240601)
    other = draw_magnitudes(20, 0.1, seed=20240602)

    np.testing.assert_array_equal(first, second)
    assert not np.array_equal(first, other)
    assert np.all((first >= 0.0) & (first < 0.1))


def test_symmetric_interval_allows_negative_draws() -> None:
    draws = draw_magnitudes(1000, 0.4, seed=5, interval=Interval.SYMMETRIC)
    assert np.all((draws >= -0.4) & (draws < 0.4))
    assert draws.min() < 0.0 < draws.max()


def test_draws_reject_nonpositive_scale() -> None:
    with pytest.raises(ScheduleError):
        draw_magnitudes(5, 0.0, seed=1)


def test_zero_scale_schedule_has_no_control() -> None:
    schedule = PinningSchedule.drawn(PinningMode.ADDITIVE, np.arange(3), 1.0, 0.0, seed=1)
    np.testing.assert_array_equal(schedule.magnitudes, np.zeros(3))


def test_parametric_draws_are_offset_by_base_frequency() -> None:
    offset = np.array([1.0, 0.98, 1.02])
    additive = PinningSchedule.drawn(PinningMode.ADDITIVE, np.arange(3), 1.0, 0.1, seed=8)
    parametric = PinningSchedule.drawn(
        PinningMode.PARAMETRIC, np.arange(3), 1.0, 0.1, seed=8, offset=offset
    )
    np.testing.assert_array_equal(parametric.magnitudes, offset + additive.magnitudes)
    assert parametric.source is MagnitudeSource.DRAWN


@pytest.mark.parametrize(
    ("pinned", "magnitudes", "t_p", "match"),
    [
        ([], [], 1.0, "at least one"),
        ([0, 0], [0.1, 0.2], 1.0, "distinct"),
        ([-1], [0.1], 1.0, "nonnegative"),
        ([0, 1], [0.1], 1.0, "magnitudes"),
        ([0], [np.nan], 1.0, "finite"),
        ([0], [0.1], 0.0, "positive"),
    ],
)
def test_schedule_validation(
    pinned: list[int], magnitudes: list[float], t_p: float, match: str
) -> None:
    with pytest.raises(ScheduleError, match=match):
        PinningSchedule(
            pinned=np.array(pinned, dtype=int),
            t_p=t_p,
            mode=PinningMode.ADDITIVE,
            magnitudes=np.array(magnitudes, dtype=float),
            seed=0,
        )


def test_schedule_is_checked_against_network_and_horizon() -> None:
    schedule = PinningSchedule.drawn(PinningMode.ADDITIVE, np.array([0, 4]), 10.0, 0.1, seed=1)
    schedule.validate_for(60, horizon=10.0)
    with pytest.raises(ScheduleError, match="fewer"):
        schedule.validate_for(2)
    with pytest.raises(ScheduleError, match="outside"):
        schedule.validate_for(4)
    with pytest.raises(ScheduleError, match="horizon"):
        schedule.validate_for(60, horizon=5.0)


def test_schedule_arrays_are_frozen() -> None:
    schedule = PinningSchedule.drawn(PinningMode.ADDITIVE, np.arange(2), 1.0, 0.1, seed=1)
    with pytest.raises(ValueError, match="read-only"):
        schedule.magnitudes[0] = 5.0


def test_as_parametric_keeps_nodes_window_and_seed() -> None:
    additive = PinningSchedule.drawn(PinningMode.ADDITIVE, np.array([2, 5]), 3.0, 0.1, seed=4)
    parametric = additive.as_parametric(np.array([1.05, 1.01]))

    assert parametric.mode is PinningMode.PARAMETRIC
    assert parametric.source is MagnitudeSource.EQUIVALENT
    np.testing.assert_array_equal(parametric.pinned, additive.pinned)
    assert parametric.t_p == additive.t_p
    assert parametric.seed == additive.seed
    assert additive.mode is PinningMode.ADDITIVE


def test_flat_form_restores_the_schedule_exactly() -> None:
    schedule = PinningSchedule.drawn(
        PinningMode.ADDITIVE, np.array([0, 3, 7]), 10.0, 0.1, seed=20240601
    )

    restored = PinningSchedule.from_flat(parse_flat(render_flat(schedule.to_flat())))

    np.testing.assert_array_equal(restored.magnitudes, schedule.magnitudes)
    np.testing.assert_array_equal(restored.pinned, schedule.pinned)
    assert restored.mode is schedule.mode
    assert restored.source is MagnitudeSource.DRAWN


def test_flat_form_requires_every_key() -> None:
    with pytest.raises(ScheduleError, match="schedule.t_p"):
        PinningSchedule.from_flat({"schedule.mode": "additive", "schedule.nodes": "0"})
