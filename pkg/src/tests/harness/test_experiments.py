"""Tests for single runs, sweeps and the restart experiment on small grids."""

import json
from pathlib import Path

import numpy as np
import polars as pl
import pytest

from src.diagnostics.regime import condition_global
from src.harness.config import RunConfig, load_run_config, load_sweep_spec
from src.harness.experiments import restart, run_experiment, sweep
from src.harness.persistence import SWEEP_SCHEMA, read_sweep
from src.spectral.snapshot import read_snapshot

RUN_TEXT = """\
n1 = 16
n2 = 16
alpha = 0.6
beta = 0.6
mu = 1
nu = 1
t_end = 0.2
dt = 0.01
"""

POWER_LAW_TEXT = "initial_data = power_law\ninitial_s = 1.5\nseed = 3\n"

SWEEP_TEXT = """\
n1 = 16
n2 = 16
mu = 1
nu = 1
t_end = 0.2
dt = 0.01
diag_stride = 2
alpha_grid = 0.2, 0.8
beta_grid = 0.3, 0.9
"""


@pytest.fixture
def config() -> RunConfig:
    """Benchmark run on a 16x16 grid with 21 samples."""
    return load_run_config(Path("run.cfg"), RUN_TEXT)


def test_run_experiment_writes_artifacts(config: RunConfig, tmp_path: Path) -> None:
    """Test the record and the three artifacts of a run."""
    record = run_experiment(config, tmp_path, name="bench")
    assert record.condition_11
    assert record.rho is not None
    assert record.classical_qg
    assert not record.aborted
    assert record.verdict is not None
    assert record.report_path == tmp_path / "bench_report.csv"
    assert record.h1_constant is not None
    assert record.hs_constant is not None
    assert record.hs_constant >= 0.0

    payload = json.loads((tmp_path / "bench_record.json").read_text(encoding="utf-8"))
    assert payload["config"]["solver"]["params"]["alpha"] == 0.6
    assert payload["condition_11"] is True
    assert read_snapshot(tmp_path / "bench_final.aqgf").grid.shape == (16, 16)
    assert "condition_11=True" in record.summary()


def test_run_outside_regime_has_no_rho(config: RunConfig) -> None:
    """Test a point below the regularity frontier."""
    record = run_experiment(config.with_orders(0.2, 0.3))
    assert not record.condition_11
    assert record.rho is None
    assert record.h1_constant is None
    assert record.report_path is None


def test_short_run_is_not_certified(config: RunConfig) -> None:
    """Test that fewer than 16 samples give no verdict."""
    short = config.model_copy(update={"solver": config.solver.model_copy(update={"diag_stride": 5})})
    record = run_experiment(short)
    assert record.verdict is None
    assert "not certified" in record.summary()


def test_sweep_rows_follow_grid(tmp_path: Path) -> None:
    """Test row order, schema and the regime column of a sweep."""
    spec = load_sweep_spec(Path("sweep.cfg"), SWEEP_TEXT)
    frame = sweep(spec, tmp_path)
    assert frame.schema == pl.Schema(SWEEP_SCHEMA)
    assert list(zip(frame["alpha"], frame["beta"], strict=True)) == [(0.2, 0.3), (0.2, 0.9), (0.8, 0.3), (0.8, 0.9)]
    assert frame["condition_11"].to_list() == [condition_global(a, b) for a, b in spec.points()]
    assert not frame["aborted"].any()
    persisted = read_sweep(tmp_path / "sweep.csv")
    assert persisted.select("alpha", "beta", "condition_11", "aborted").equals(
        frame.select("alpha", "beta", "condition_11", "aborted")
    )
    np.testing.assert_allclose(persisted["sup_hs"].to_numpy(), frame["sup_hs"].to_numpy(), rtol=1e-11)


@pytest.mark.slow
def test_sweep_is_independent_of_parallelism(tmp_path: Path) -> None:
    """Test byte-identical sweep tables for one and four workers."""
    spec = load_sweep_spec(Path("sweep.cfg"), SWEEP_TEXT)
    sweep(spec, tmp_path / "serial")
    sweep(spec.model_copy(update={"parallelism": 4}), tmp_path / "parallel")
    assert (tmp_path / "serial" / "sweep.csv").read_bytes() == (tmp_path / "parallel" / "sweep.csv").read_bytes()


def test_restart_reproduces_overlap(tmp_path: Path) -> None:
    """Test that a restart from a sampled state matches the original run."""
    config = load_run_config(Path("restart.cfg"), RUN_TEXT + POWER_LAW_TEXT + "diag_stride = 5\nt0 = 0.1\n")
    original, restarted, comparison = restart(config, tmp_path)
    assert comparison.columns == ["t", "t_shifted", "discrepancy_l2"]
    np.testing.assert_allclose(comparison["t"].to_numpy(), [0.1, 0.15, 0.2])
    np.testing.assert_allclose(comparison["t_shifted"].to_numpy(), [0.0, 0.05, 0.1])
    assert comparison["discrepancy_l2"].max() <= 1e-12
    assert restarted.config.solver.t_end == pytest.approx(0.1)
    assert original.config.solver.t_end == 0.2
    for name in ("original_report.csv", "restarted_report.csv", "restart_state.aqgf", "restart_records.json"):
        assert (tmp_path / name).exists()


def test_restart_snaps_t0_to_sample(caplog: pytest.LogCaptureFixture) -> None:
    """Test that an off-grid t0 moves to the nearest sample with a warning."""
    config = load_run_config(Path("restart.cfg"), RUN_TEXT + POWER_LAW_TEXT + "diag_stride = 5\nt0 = 0.12\n")
    _, _, comparison = restart(config)
    assert comparison["t"][0] == pytest.approx(0.1)
    assert "snapped to t0=0.1" in caplog.text


def test_restart_requires_fixed_step(config: RunConfig) -> None:
    """Test the restart preconditions."""
    cfl = load_run_config(Path("cfl.cfg"), RUN_TEXT.replace("dt = 0.01", "dt_policy = cfl\nc_cfl = 0.5\ndt_max = 0.01"))
    with pytest.raises(ValueError, match="fixed dt"):
        restart(cfl)
    zero = config.model_copy(update={"solver": config.solver.model_copy(update={"t_end": 0.0})})
    with pytest.raises(ValueError, match="t_end > 0"):
        restart(zero)


@pytest.mark.parametrize(
    ("extra", "message"),
    [
        ("", "power_law initial data"),
        (POWER_LAW_TEXT.replace("1.5", "0.5"), r"outside the regularizing window \(0.8, 2\)"),
        (POWER_LAW_TEXT.replace("1.5", "2.5"), "outside the regularizing window"),
    ],
)
def test_restart_requires_low_regularity_data(extra: str, message: str) -> None:
    """Test that restarts need power-law data inside the regularizing window."""
    config = load_run_config(Path("restart.cfg"), RUN_TEXT + extra + "t0 = 0.1\n")
    with pytest.raises(ValueError, match=message):
        restart(config)


def test_restart_requires_orders_above_one_half() -> None:
    """Test that the regularizing window is undefined for α ≤ 1/2."""
    config = load_run_config(Path("restart.cfg"), RUN_TEXT + POWER_LAW_TEXT + "t0 = 0.1\n")
    with pytest.raises(ValueError, match="1/2"):
        restart(config.with_orders(0.4, 0.9))
