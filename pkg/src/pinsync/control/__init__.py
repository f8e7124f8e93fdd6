from .schedule import (
    Interval,
    MagnitudeSource,
    PinningMode,
    PinningSchedule,
    control_window_active,
    default_pinned_set,
    draw_magnitudes,
)

__all__ = [
    "Interval",
    "MagnitudeSource",
    "PinningMode",
    "PinningSchedule",
    "control_window_active",
    "default_pinned_set",
    "draw_magnitudes",
]
