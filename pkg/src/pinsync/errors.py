"""
Exception hierarchy for pinsync.

Every error raised on purpose by the package derives from PinsyncError. The
validation errors also derive from ValueError so callers that only care about
bad input can catch that; numerical failures derive from FloatingPointError.
"""


class PinsyncError(Exception):
    """Base class for all pinsync errors."""


class ConfigError(PinsyncError, ValueError):
    """
    Raised when an experiment config is missing a key, has a wrongly typed
    value, violates a constraint, or contains an unknown key.
    """

    def __init__(self, key: str, message: str) -> None:
        self.key = key
        super().__init__(f"{key}: {message}")


class NetworkError(PinsyncError, ValueError):
    """Raised when an adjacency matrix or graph description is invalid."""


class ScheduleError(PinsyncError, ValueError):
    """Raised when a pinning schedule violates its invariants."""


class DimensionError(PinsyncError, ValueError):
    """Raised when a state does not match the size of its network."""


class QuadratureError(PinsyncError, ValueError):
    """Raised when a sampled path cannot be integrated."""


class TrajectoryRangeError(PinsyncError, ValueError):
    """Raised when a query falls outside a recorded trajectory."""


class NonFiniteStateError(PinsyncError, FloatingPointError):
    """
    Raised when a state or derivative contains NaN or Inf.

    Attributes:
        time: Simulation time at which the value was detected.
        node: Index of the first offending node, if known.
        stage: Runge-Kutta stage index (1-4), if raised by the integrator.
    """

    def __init__(
        self,
        time: float | None = None,
        node: int | None = None,
        stage: int | None = None,
    ) -> None:
        self.time = time
        self.node = node
        self.stage = stage
        where = "t=?" if time is None else f"t={time:.6g}"
        if node is not None:
            where += f", node={node}"
        if stage is not None:
            where += f", stage={stage}"
        super().__init__(f"Non-finite value encountered ({where})")


class ParameterError(PinsyncError, ValueError):
    """Raised when oscillator or coupling parameters are out of range."""


class PhaseUndefinedError(PinsyncError, ValueError):
    """Raised when a phase is requested at the origin of the (x, y) plane."""
