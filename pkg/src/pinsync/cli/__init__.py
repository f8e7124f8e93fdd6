from .config import (
    ExperimentConfig,
    check_consistency,
    config_from_flat,
    known_keys,
    load_config,
    parse_config,
    with_overrides,
)

__all__ = [
    "ExperimentConfig",
    "check_consistency",
    "config_from_flat",
    "known_keys",
    "load_config",
    "parse_config",
    "with_overrides",
]
