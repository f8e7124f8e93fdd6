import pytest

from pinsync.cli import ExperimentConfig, parse_config, with_overrides
from pinsync.settings import shipped_config_path


@pytest.fixture
def fig1_config() -> ExperimentConfig:
    return parse_config(shipped_config_path() / "fig1.cfg")


@pytest.fixture
def fig2_config() -> ExperimentConfig:
    return parse_config(shipped_config_path() / "fig2.cfg")


@pytest.fixture
def phase_config() -> ExperimentConfig:
    return parse_config(shipped_config_path() / "phase_equiv.cfg")


@pytest.fixture
def small_config(fig1_config: ExperimentConfig) -> ExperimentConfig:
    """Ten nodes, three pinned, two time units."""
    return with_overrides(
        fig1_config,
        {
            "network.n": 10,
            "schedule.n_pinned": 3,
            "schedule.t_p": 1.0,
            "integrator.horizon": 2.0,
        },
    )
