from dataclasses import dataclass, field
from typing import Any

import numpy as np

from pinsync.errors import DimensionError, ParameterError
from pinsync.utils import Stream, make_rng

DEFAULT_HETEROGENEITY_THRESHOLD = 0.1
DEFAULT_D_UNIT = ((1.0, -1.0), (1.0, 1.0))


@dataclass(frozen=True, eq=False)
class SLParams:
    """
    Stuart-Landau parameters: base values plus optional per-node deviations,
    alpha_i = alpha + delta_alpha_i and omega_i = omega + delta_omega_i.

    Deviations must stay within `threshold` times the magnitude of their base.
    """

    alpha: float = 1.0
    omega: float = 1.0
    delta_alpha: np.ndarray | None = None
    delta_omega: np.ndarray | None = None
    threshold: float = DEFAULT_HETEROGENEITY_THRESHOLD

    def __post_init__(self) -> None:
        if not self.alpha > 0:
            msg = f"alpha must be positive for a stable limit cycle, got {self.alpha}"
            raise ParameterError(msg)
        if not np.isfinite(self.omega):
            msg = f"omega must be finite, got {self.omega}"
            raise ParameterError(msg)
        sizes: set[int] = set()
        for name, base in (("delta_alpha", self.alpha), ("delta_omega", self.omega)):
            delta = getattr(self, name)
            if delta is None:
                continue
            delta = np.array(delta, dtype=float)
            delta.setflags(write=False)
            object.__setattr__(self, name, delta)
            sizes.add(delta.size)
            limit = self.threshold * abs(base)
            if not np.all(np.isfinite(delta)) or np.any(np.abs(delta) > limit):
                msg = f"|{name}| must not exceed {self.threshold} * |base| = {limit}"
                raise ParameterError(msg)
        if len(sizes) > 1:
            msg = "delta_alpha and delta_omega must have the same length"
            raise DimensionError(msg)

    @property
    def is_heterogeneous(self) -> bool:
        return self.delta_alpha is not None or self.delta_omega is not None

    def _per_node(self, base: float, delta: np.ndarray | None, n: int) -> np.ndarray:
        if delta is None:
            return np.full(n, base)
        if delta.size != n:
            msg = f"Parameters describe {delta.size} nodes, network has {n}"
            raise DimensionError(msg)
        return base + delta

    def alphas(self, n: int) -> np.ndarray:
        return self._per_node(self.alpha, self.delta_alpha, n)

    def omegas(self, n: int) -> np.ndarray:
        return self._per_node(self.omega, self.delta_omega, n)

    @staticmethod
    def draw(  # noqa: PLR0913
        alpha: float,
        omega: float,
        n: int,
        alpha_spread: float,
        omega_spread: float,
        seed: int,
        threshold: float = DEFAULT_HETEROGENEITY_THRESHOLD,
    ) -> "SLParams":
        """
        Draw deviations i.i.d. from Uniform(-spread, spread) using the
        heterogeneity stream of `seed`. Zero spreads give homogeneous params.
        """
        if alpha_spread == 0 and omega_spread == 0:
            return SLParams(alpha=alpha, omega=omega, threshold=threshold)
        rng = make_rng(seed, Stream.HETEROGENEITY)
        delta_alpha = rng.uniform(-alpha_spread, alpha_spread, size=n)
        delta_omega = rng.uniform(-omega_spread, omega_spread, size=n)
        return SLParams(
            alpha=alpha,
            omega=omega,
            delta_alpha=delta_alpha if alpha_spread else None,
            delta_omega=delta_omega if omega_spread else None,
            threshold=threshold,
        )

    @staticmethod
    def load(params_config: dict[str, Any]) -> "SLParams":
        return SLParams(
            alpha=params_config["alpha"],
            omega=params_config["omega"],
            delta_alpha=params_config.get("delta_alpha"),
            delta_omega=params_config.get("delta_omega"),
            threshold=params_config.get("threshold", DEFAULT_HETEROGENEITY_THRESHOLD),
        )


@dataclass(frozen=True, eq=False)
class CouplingMatrix:
    """D = epsilon * d_unit; the default d_unit is [[1, -1], [1, 1]]."""

    epsilon: float
    d_unit: np.ndarray = field(default_factory=lambda: np.array(DEFAULT_D_UNIT))

    def __post_init__(self) -> None:
        if not self.epsilon >= 0:
            msg = f"Coupling strength epsilon must be nonnegative, got {self.epsilon}"
            raise ParameterError(msg)
        d_unit = np.array(self.d_unit, dtype=float)
        if d_unit.shape != (2, 2) or not np.all(np.isfinite(d_unit)):
            msg = f"d_unit must be a finite 2x2 matrix, got shape {d_unit.shape}"
            raise ParameterError(msg)
        d_unit.setflags(write=False)
        object.__setattr__(self, "d_unit", d_unit)

    @property
    def matrix(self) -> np.ndarray:
        return self.epsilon * self.d_unit

    @staticmethod
    def load(coupling_config: dict[str, Any]) -> "CouplingMatrix":
        d_unit = coupling_config.get("d_unit")
        return CouplingMatrix(
            epsilon=coupling_config["epsilon"],
            d_unit=np.reshape(d_unit, (2, 2)) if d_unit is not None else np.array(DEFAULT_D_UNIT),
        )
