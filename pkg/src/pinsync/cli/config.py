"""
Experiment configuration: the flat `section.key = value` file format and its
validated model.

Parsing is fail-closed. Unknown keys, wrongly typed values and violated
constraints all raise ConfigError naming the offending key before anything
is simulated.
"""

import difflib
from pathlib import Path
from typing import Annotated, Any, Literal

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    NonNegativeFloat,
    NonNegativeInt,
    PositiveFloat,
    PositiveInt,
    ValidationError,
)

from pinsync.control import Interval, PinningMode
from pinsync.errors import ConfigError
from pinsync.phase import Reduction
from pinsync.utils import flatten, load_txt, nest, parse_flat

MAX_SEED = 2**64 - 1
# relative slack when checking that a duration is a whole number of steps
STEP_TOLERANCE = 1e-9


def _split_list(value: Any) -> Any:
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


FloatList = Annotated[list[float], BeforeValidator(_split_list)]
IndexList = Annotated[list[NonNegativeInt], BeforeValidator(_split_list)]


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class NetworkSection(_Section):
    kind: Literal["ring", "edge_list"] = "ring"
    n: PositiveInt | None = None
    k: PositiveInt = 4
    path: Path | None = None


class OscillatorSection(_Section):
    alpha: PositiveFloat = 1.0
    omega: float = Field(default=1.0, allow_inf_nan=False)
    # spreads of the per-node deviations, drawn from Uniform(-spread, spread)
    delta_alpha: NonNegativeFloat = 0.0
    delta_omega: NonNegativeFloat = 0.0
    threshold: PositiveFloat = 0.1


class CouplingSection(_Section):
    epsilon: NonNegativeFloat = 0.01
    # row-major 2x2, scaled by epsilon
    d_unit: FloatList | None = None


class ScheduleSection(_Section):
    mode: Literal["none", "additive", "parametric"] = "additive"
    n_pinned: PositiveInt | None = None
    nodes: IndexList | None = None
    t_p: PositiveFloat = 10.0
    scale: NonNegativeFloat = 0.1
    interval: Interval = Interval.POSITIVE
    # explicit lambda_i (additive) or omega_p,i (parametric); overrides draws
    magnitudes: FloatList | None = None

    @property
    def pinning_mode(self) -> PinningMode | None:
        return None if self.mode == "none" else PinningMode(self.mode)


class IntegratorSection(_Section):
    dt: PositiveFloat = 0.01
    horizon: PositiveFloat = 50.0
    record_every: PositiveInt = 1


class ModelSection(_Section):
    kind: Literal["full", "phase"] = "full"
    reduction: Reduction = Reduction.KURAMOTO


class OutputSection(_Section):
    directory: Path = Path("runs")


class ExperimentConfig(_Section):
    """A complete, seedable description of one run or comparison."""

    network: NetworkSection = NetworkSection()
    oscillator: OscillatorSection = OscillatorSection()
    coupling: CouplingSection = CouplingSection()
    schedule: ScheduleSection = ScheduleSection()
    integrator: IntegratorSection = IntegratorSection()
    model: ModelSection = ModelSection()
    output: OutputSection = OutputSection()
    seed: int = Field(default=0, ge=0, le=MAX_SEED)

    @property
    def n_pinned(self) -> int:
        if self.schedule.nodes is not None:
            return len(self.schedule.nodes)
        return self.schedule.n_pinned or 0

    def to_flat(self) -> dict[str, Any]:
        """Dotted keys with native values; unset optional keys are left out."""
        return flatten(self.model_dump(mode="json", exclude_none=True))


def known_keys() -> list[str]:
    keys: list[str] = []
    for name, info in ExperimentConfig.model_fields.items():
        section = info.annotation
        if isinstance(section, type) and issubclass(section, BaseModel):
            keys.extend(f"{name}.{field}" for field in section.model_fields)
        else:
            keys.append(name)
    return keys


def _unknown_key_error(key: str, keys: list[str]) -> ConfigError:
    leaves = {known.rsplit(".", 1)[-1]: known for known in keys}
    close = difflib.get_close_matches(key, keys, n=1) or [
        leaves[leaf]
        for leaf in difflib.get_close_matches(key.rsplit(".", 1)[-1], leaves, n=1)
    ]
    hint = f"; did you mean {close[0]!r}?" if close else ""
    return ConfigError(key, f"unknown key{hint}")


def _is_whole_multiple(duration: float, step: float) -> bool:
    ratio = duration / step
    return abs(ratio - round(ratio)) <= STEP_TOLERANCE * max(1.0, ratio)


def _check_network(config: ExperimentConfig) -> None:
    network = config.network
    if network.kind == "ring":
        if network.n is None:
            raise ConfigError("network.n", "required for a ring lattice")
        if network.n < 3:  # noqa: PLR2004
            raise ConfigError("network.n", f"a ring lattice needs n >= 3, got {network.n}")
        if network.k % 2:
            msg = f"ring lattice requires an even coordination number k, got {network.k}"
            raise ConfigError("network.k", msg)
        if network.k >= network.n:
            msg = f"ring lattice requires k < n, got k={network.k}, n={network.n}"
            raise ConfigError("network.k", msg)
    elif network.path is None:
        raise ConfigError("network.path", "required for an edge_list network")


def _check_oscillator(config: ExperimentConfig) -> None:
    oscillator = config.oscillator
    for key, spread, base in (
        ("delta_alpha", oscillator.delta_alpha, oscillator.alpha),
        ("delta_omega", oscillator.delta_omega, oscillator.omega),
    ):
        limit = oscillator.threshold * abs(base)
        if spread > limit:
            msg = f"spread {spread} exceeds threshold * |base| = {limit}"
            raise ConfigError(f"oscillator.{key}", msg)


def _check_integrator(config: ExperimentConfig) -> None:
    integrator = config.integrator
    if integrator.horizon < integrator.dt:
        msg = f"must be at least dt={integrator.dt}, got {integrator.horizon}"
        raise ConfigError("integrator.horizon", msg)
    if not _is_whole_multiple(integrator.horizon, integrator.dt):
        msg = f"{integrator.horizon} is not a whole number of steps dt={integrator.dt}"
        raise ConfigError("integrator.horizon", msg)
    steps = round(integrator.horizon / integrator.dt)
    if steps % integrator.record_every:
        msg = f"must divide the step count {steps}, got {integrator.record_every}"
        raise ConfigError("integrator.record_every", msg)


def _check_schedule(config: ExperimentConfig) -> None:
    schedule = config.schedule
    if schedule.pinning_mode is None:
        return
    if schedule.nodes is not None:
        if len(set(schedule.nodes)) != len(schedule.nodes):
            raise ConfigError("schedule.nodes", "pinned node indices must be distinct")
        if schedule.n_pinned is not None and schedule.n_pinned != len(schedule.nodes):
            msg = f"{schedule.n_pinned} does not match the {len(schedule.nodes)} listed nodes"
            raise ConfigError("schedule.n_pinned", msg)
    elif schedule.n_pinned is None:
        raise ConfigError("schedule.n_pinned", "required unless schedule.nodes is given")

    n = config.network.n
    if n is not None:
        if config.n_pinned >= n:
            msg = f"N_p={config.n_pinned} must be smaller than n={n}"
            raise ConfigError("schedule.n_pinned", msg)
        if schedule.nodes is not None and max(schedule.nodes) >= n:
            msg = f"node {max(schedule.nodes)} is outside a network of {n} nodes"
            raise ConfigError("schedule.nodes", msg)
    if schedule.magnitudes is not None and len(schedule.magnitudes) != config.n_pinned:
        msg = f"expected {config.n_pinned} values, got {len(schedule.magnitudes)}"
        raise ConfigError("schedule.magnitudes", msg)
    if schedule.t_p > config.integrator.horizon:
        msg = f"{schedule.t_p} exceeds the horizon {config.integrator.horizon}"
        raise ConfigError("schedule.t_p", msg)
    if not _is_whole_multiple(schedule.t_p, config.integrator.dt):
        msg = f"{schedule.t_p} is not a whole number of steps dt={config.integrator.dt}"
        raise ConfigError("schedule.t_p", msg)


def check_consistency(config: ExperimentConfig) -> None:
    """Cross-field constraints that single-field validation cannot express."""
    _check_network(config)
    _check_oscillator(config)
    if config.coupling.d_unit is not None and len(config.coupling.d_unit) != 4:  # noqa: PLR2004
        msg = f"expected 4 row-major entries, got {len(config.coupling.d_unit)}"
        raise ConfigError("coupling.d_unit", msg)
    _check_integrator(config)
    _check_schedule(config)


def config_from_flat(entries: dict[str, Any]) -> ExperimentConfig:
    """Validate a flat dotted-key mapping; empty values count as unset."""
    keys = known_keys()
    for key in entries:
        if key not in keys:
            raise _unknown_key_error(key, keys)
    try:
        config = ExperimentConfig.model_validate(
            nest({key: value for key, value in entries.items() if value != ""})
        )
    except ValidationError as e:
        error = e.errors()[0]
        key = ".".join(str(part) for part in error["loc"] if not isinstance(part, int))
        raise ConfigError(key or "<config>", error["msg"]) from e
    check_consistency(config)
    return config


def load_config(text: str) -> ExperimentConfig:
    try:
        entries = parse_flat(text)
    except ValueError as e:
        raise ConfigError("<config>", str(e)) from e
    return config_from_flat(entries)


def parse_config(file_path: Path) -> ExperimentConfig:
    """Read and validate an experiment config file."""
    try:
        text = load_txt(file_path)
    except OSError as e:
        raise ConfigError(str(file_path), f"cannot read config ({e.strerror})") from e
    return load_config(text)


def with_overrides(config: ExperimentConfig, overrides: dict[str, Any]) -> ExperimentConfig:
    """Re-validate `config` with some dotted keys replaced."""
    entries = config.to_flat()
    entries.update(overrides)
    return config_from_flat(entries)
