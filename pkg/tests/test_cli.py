from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from pinsync.cli import ExperimentConfig, load_config, parse_config, with_overrides
from pinsync.cli.commands import ExitCode, PlotKind, cmd_plotdata, cmd_simulate
from pinsync.control import Interval
from pinsync.errors import ConfigError
from pinsync.main import main
from pinsync.phase import Reduction
from pinsync.settings import shipped_config_path
from pinsync.sim import run_full_experiment
from pinsync.utils import parse_flat, render_flat, save_txt

FIG1 = shipped_config_path() / "fig1.cfg"


def _write_config(config: ExperimentConfig, file_path: Path) -> Path:
    save_txt(render_flat(config.to_flat()), file_path)
    return file_path


def _with_line(replacement: str) -> str:
    """fig1.cfg with the line for one key replaced."""
    key = replacement.split("=", 1)[0].strip()
    lines = [
        replacement if line.split("=", 1)[0].strip() == key else line
        for line in FIG1.read_text().splitlines()
    ]
    return "\n".join(lines)


@pytest.fixture(scope="module")
def fig1_run(tmp_path_factory: pytest.TempPathFactory) -> Path:
    out = tmp_path_factory.mktemp("fig1")
    # a bare file name falls back to the shipped configs
    assert main(["simulate", "--config", "fig1.cfg", "--out", str(out)]) == ExitCode.OK
    return out


def test_fig1_config_parses_to_its_values() -> None:
    config = parse_config(FIG1)

    assert config.network.kind == "ring"
    assert config.network.n == 60
    assert config.network.k == 4
    assert config.oscillator.alpha == 1.0
    assert config.oscillator.omega == 1.0
    assert config.coupling.epsilon == 0.01
    assert config.coupling.d_unit is None
    assert config.schedule.mode == "additive"
    assert config.n_pinned == 20
    assert config.schedule.t_p == 10.0
    assert config.schedule.scale == 0.1
    assert config.schedule.interval is Interval.POSITIVE
    assert config.integrator.dt == 0.01
    assert config.integrator.horizon == 50.0
    assert config.model.kind == "full"
    assert config.model.reduction is Reduction.KURAMOTO
    assert config.output.directory == Path("runs/fig1")
    assert config.seed == 20240601


def test_odd_ring_degree_is_rejected() -> None:
    with pytest.raises(ConfigError, match="even coordination number") as info:
        load_config(_with_line("network.k = 3"))
    assert info.value.key == "network.k"


def test_unknown_key_suggests_the_closest() -> None:
    with pytest.raises(ConfigError, match="did you mean 'coupling.epsilon'") as info:
        load_config(_with_line("coupling.epsilon = 0.01") + "\ncoupling.epsilonn = 0.02\n")
    assert info.value.key == "coupling.epsilonn"

    with pytest.raises(ConfigError, match="did you mean 'coupling.epsilon'"):
        load_config("epsilonn = 0.02\n")


@pytest.mark.parametrize(
    ("line", "key"),
    [
        ("coupling.epsilon = strong", "coupling.epsilon"),
        ("coupling.epsilon = -0.1", "coupling.epsilon"),
        ("network.n = 3", "network.k"),
        ("schedule.n_pinned = 60", "schedule.n_pinned"),
        ("schedule.n_pinned = 0", "schedule.n_pinned"),
        ("schedule.t_p = 10.005", "schedule.t_p"),
        ("schedule.t_p = 60", "schedule.t_p"),
        ("integrator.horizon = 50.005", "integrator.horizon"),
        ("integrator.record_every = 3", "integrator.record_every"),
        ("model.kind = hybrid", "model.kind"),
        ("seed = -1", "seed"),
    ],
)
def test_invalid_values_name_their_key(line: str, key: str) -> None:
    with pytest.raises(ConfigError) as info:
        load_config(_with_line(line))
    assert info.value.key == key


def test_spreads_are_limited_by_the_threshold() -> None:
    text = _with_line("oscillator.omega = 1.0") + "\noscillator.delta_omega = 0.2\n"
    with pytest.raises(ConfigError) as info:
        load_config(text)
    assert info.value.key == "oscillator.delta_omega"


def test_explicit_nodes_and_magnitudes() -> None:
    text = (
        _with_line("schedule.n_pinned = 3")
        + "\nschedule.nodes = 4, 9, 2\nschedule.magnitudes = 0.1, 0.2, 0.3\n"
    )
    config = load_config(text)
    assert config.schedule.nodes == [4, 9, 2]
    assert config.schedule.magnitudes == [0.1, 0.2, 0.3]

    with pytest.raises(ConfigError) as info:
        load_config(text.replace("0.1, 0.2, 0.3", "0.1, 0.2"))
    assert info.value.key == "schedule.magnitudes"


def test_duplicate_keys_are_rejected() -> None:
    with pytest.raises(ConfigError, match="duplicate"):
        load_config(FIG1.read_text() + "\nseed = 3\n")


def test_missing_config_file(tmp_path: Path) -> None:
    with pytest.raises(ConfigError, match="cannot read"):
        parse_config(tmp_path / "absent.cfg")


def test_overrides_are_revalidated(fig1_config: ExperimentConfig) -> None:
    assert with_overrides(fig1_config, {"coupling.epsilon": 0.05}).coupling.epsilon == 0.05
    with pytest.raises(ConfigError):
        with_overrides(fig1_config, {"network.k": 5})


def test_simulate_writes_trajectory_and_meta(fig1_run: Path) -> None:
    frame = pd.read_csv(fig1_run / "trajectory.csv")

    assert frame.shape == (5001, 121)
    assert list(frame.columns[:3]) == ["time", "x_0", "x_1"]
    assert frame.columns[-1] == "y_59"
    assert frame["time"].iloc[-1] == pytest.approx(50.0, abs=1e-12)

    meta = (fig1_run / "meta.cfg").read_text()
    assert "# run_id: " in meta
    assert "# rng: numpy.PCG64/SeedSequence" in meta
    resolved = parse_config(fig1_run / "meta.cfg")
    assert resolved.schedule.nodes == list(range(20))
    assert resolved.schedule.magnitudes is not None
    assert len(resolved.schedule.magnitudes) == 20
    assert resolved.output.directory == fig1_run


def test_meta_reproduces_the_run(small_config: ExperimentConfig, tmp_path: Path) -> None:
    assert cmd_simulate(small_config, tmp_path) == ExitCode.OK

    replay = run_full_experiment(parse_config(tmp_path / "meta.cfg"))
    original = pd.read_csv(tmp_path / "trajectory.csv", float_precision="round_trip")

    np.testing.assert_array_equal(replay.to_frame().to_numpy(), original.to_numpy())


def test_phase_model_writes_one_column_per_node(tmp_path: Path) -> None:
    code = main(
        ["simulate", "--config", str(FIG1), "--out", str(tmp_path), "--model", "phase"]
    )

    assert code == ExitCode.OK
    frame = pd.read_csv(tmp_path / "trajectory.csv")
    assert frame.shape == (5001, 61)
    assert frame.columns[1] == "theta_0"
    thetas = frame.drop(columns="time").to_numpy()
    assert np.all((thetas >= 0.0) & (thetas < 2 * np.pi))


def test_invalid_config_writes_nothing(tmp_path: Path) -> None:
    config_file = tmp_path / "odd.cfg"
    save_txt(_with_line("network.k = 3"), config_file)
    out = tmp_path / "out"

    assert main(["simulate", "--config", str(config_file), "--out", str(out)]) == 1
    assert not out.exists()


def test_divergence_exits_with_numerical_status(
    small_config: ExperimentConfig, tmp_path: Path
) -> None:
    config_file = _write_config(
        with_overrides(small_config, {"coupling.epsilon": 1000.0}), tmp_path / "unstable.cfg"
    )
    out = tmp_path / "out"

    assert main(["simulate", "--config", str(config_file), "--out", str(out)]) == 2
    assert not (out / "trajectory.csv").exists()


def test_compare_writes_paired_outputs(small_config: ExperimentConfig, tmp_path: Path) -> None:
    config_file = _write_config(small_config, tmp_path / "small.cfg")
    out = tmp_path / "compare"

    assert main(["compare", "--config", str(config_file), "--out", str(out)]) == 0

    for name in (
        "trajectory_additive.csv",
        "trajectory_parametric.csv",
        "divergence.csv",
        "summary.txt",
        "meta.cfg",
    ):
        assert (out / name).exists()
    summary = parse_flat((out / "summary.txt").read_text())
    assert {"omega_p.0", "omega_p.1", "omega_p.2", "phase_divergence_max"} <= set(summary)
    divergence = pd.read_csv(out / "divergence.csv")
    assert list(divergence.columns) == ["time", "phase_divergence", "state_divergence"]
    assert len(divergence) == 201


def test_compare_phase_model_has_no_divergence(
    small_config: ExperimentConfig, tmp_path: Path
) -> None:
    config_file = _write_config(small_config, tmp_path / "small.cfg")
    out = tmp_path / "compare"

    code = main(["compare", "--config", str(config_file), "--out", str(out), "--model", "phase"])

    assert code == 0
    summary = parse_flat((out / "summary.txt").read_text())
    assert float(summary["phase_divergence_max"]) == 0.0


def test_compare_requires_an_additive_schedule(
    small_config: ExperimentConfig, tmp_path: Path
) -> None:
    config_file = _write_config(
        with_overrides(small_config, {"schedule.mode": "parametric"}), tmp_path / "p.cfg"
    )
    out = tmp_path / "compare"

    assert main(["compare", "--config", str(config_file), "--out", str(out)]) == 1
    assert not out.exists()


def test_reduce_and_sweep_commands(small_config: ExperimentConfig, tmp_path: Path) -> None:
    config_file = _write_config(small_config, tmp_path / "small.cfg")

    assert main(["reduce", "--config", str(config_file), "--out", str(tmp_path / "r")]) == 0
    assert (tmp_path / "r" / "divergence.csv").exists()
    assert "amplitude_deviation_full" in parse_flat((tmp_path / "r" / "summary.txt").read_text())

    code = main(
        [
            "sweep",
            "--config",
            str(config_file),
            "--out",
            str(tmp_path / "s"),
            "--epsilon",
            "0.01,0.02",
            "--scale",
            "0.1",
        ]
    )
    assert code == 0
    assert len(pd.read_csv(tmp_path / "s" / "sweep.csv")) == 2
    assert (tmp_path / "s" / "eps_0.02_scale_0.1" / "summary.txt").exists()


def test_plotdata_snapshot(fig1_run: Path, tmp_path: Path) -> None:
    out_file = tmp_path / "snapshot.csv"
    code = cmd_plotdata(fig1_run / "trajectory.csv", PlotKind.SNAPSHOT, out_file, time=50.0)

    assert code == ExitCode.OK
    frame = pd.read_csv(out_file)
    assert frame.shape == (60, 3)
    assert list(frame.columns) == ["node", "x", "y"]


def test_plotdata_timeseries(fig1_run: Path, tmp_path: Path) -> None:
    out_file = tmp_path / "series.csv"
    code = main(
        [
            "plotdata",
            "--trajectory",
            str(fig1_run / "trajectory.csv"),
            "--kind",
            "timeseries",
            "--nodes",
            "0:5",
            "--out",
            str(out_file),
        ]
    )

    assert code == 0
    frame = pd.read_csv(out_file)
    assert frame.shape == (5001, 6)
    assert list(frame.columns) == ["time", "y_0", "y_1", "y_2", "y_3", "y_4"]


def test_plotdata_rejects_times_outside_the_run(fig1_run: Path, tmp_path: Path) -> None:
    out_file = tmp_path / "late.csv"
    code = cmd_plotdata(fig1_run / "trajectory.csv", PlotKind.SNAPSHOT, out_file, time=99.0)

    assert code == ExitCode.INVALID
    assert not out_file.exists()
