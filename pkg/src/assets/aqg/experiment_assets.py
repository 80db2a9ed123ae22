"""Dagster assets for the AQG experiment catalogue."""

import math

import dagster as dg
import numpy as np
import polars as pl
from pydantic import Field

from src.diagnostics.report import DiagnosticsConfig
from src.harness.config import RunConfig, SweepSpec
from src.harness.experiments import restart, sweep
from src.oracle.report import reports_to_frame
from src.oracle.suites import SUITES, run_suite
from src.solver.config import FixedDt, SolverConfig
from src.solver.initial_data import InitialDataConfig, build_initial_data
from src.solver.integrator import run
from src.spectral.fields import to_physical
from src.spectral.params import AnisotropyParams
from src.utils.config_loaders import get_default
from src.validation.schemas.norm_report_schema import NormReportDagsterType
from src.validation.schemas.oracle_schema import OracleReportDagsterType
from src.validation.schemas.restart_schema import RestartComparisonDagsterType
from src.validation.schemas.sweep_schema import SweepDagsterType


class DecayRunConfig(dg.Config):
    """Single-mode decay run with a known closed form ``e^{-μ t} cos x1``."""

    n: int = Field(default=32, ge=8, description="Modes per direction")
    mu: float = Field(default=1.0, gt=0.0, description="Horizontal viscosity")
    t_end: float = Field(default=1.0, gt=0.0, description="Final time")
    dt: float = Field(default=1e-3, gt=0.0, description="Time step")
    diag_stride: int = Field(default=10, ge=1, description="Steps between diagnostic samples")


class PhaseDiagramConfig(dg.Config):
    """An (α, β) grid with shared initial data and horizon."""

    alpha_grid: list[float] = Field(default_factory=lambda: list(get_default("sweep", "grid")))
    beta_grid: list[float] = Field(default_factory=lambda: list(get_default("sweep", "grid")))
    n: int = Field(default_factory=lambda: int(get_default("sweep", "n")), ge=8)
    mu: float = Field(default=1.0, gt=0.0)
    nu: float = Field(default=1.0, gt=0.0)
    t_end: float = Field(default_factory=lambda: float(get_default("sweep", "t_end")), gt=0.0)
    dt: float = Field(default=1e-3, gt=0.0)
    diag_stride: int = Field(default=100, ge=1)
    seed: int = 0
    parallelism: int = Field(default_factory=lambda: int(get_default("sweep", "parallelism")), ge=1)


class OracleConfig(dg.Config):
    """Suites to run and an optional seed override."""

    suites: list[str] = Field(default_factory=lambda: list(SUITES), description="Suite names")
    seed: int | None = None


class RestartConfig(dg.Config):
    """Restart of a low-regularity run from an intermediate sample."""

    n: int = Field(default=64, ge=8)
    alpha: float = Field(default=0.6, gt=0.0, lt=1.0)
    beta: float = Field(default=0.6, gt=0.0, lt=1.0)
    mu: float = Field(default=1.0, gt=0.0)
    nu: float = Field(default=1.0, gt=0.0)
    initial_s: float = Field(default=1.5, gt=0.0, description="Regularity of the power-law initial data")
    t_end: float = Field(default=1.0, gt=0.0)
    t0: float = Field(default=0.5, ge=0.0)
    dt: float = Field(default=1e-3, gt=0.0)
    diag_stride: int = Field(default=50, ge=1)
    seed: int = 0


def _run_config(n: int, params: AnisotropyParams, t_end: float, dt: float, diag_stride: int, seed: int) -> RunConfig:
    solver = SolverConfig(params=params, t_end=t_end, dt_policy=FixedDt(dt=dt), diag_stride=diag_stride, seed=seed)
    return RunConfig(n1=n, n2=n, solver=solver, diagnostics=DiagnosticsConfig())


@dg.asset(
    name="closed_form_decay_report",
    key_prefix=["aqg"],
    io_manager_key="io_manager_csv",
    dagster_type=NormReportDagsterType,
    description="NormReport of the linear single-mode run, whose final state is known in closed form.",
    group_name="aqg_solver",
    kinds={"polars", "numpy"},
    tags={"domain": "solver"},
)
def closed_form_decay_report(context: dg.AssetExecutionContext, config: DecayRunConfig) -> pl.DataFrame:
    """
    Integrate ``θ⁰ = cos x1`` with ``α = β = 1/2``.

    The advection term vanishes for this mode, so the scheme must reproduce ``e^{-μ t} cos x1``; the
    sup-norm error is attached as metadata.

    Returns
    -------
    pl.DataFrame
        The persisted form of the run's NormReport.
    """
    run_config = _run_config(
        config.n, AnisotropyParams(alpha=0.5, beta=0.5, mu=config.mu, nu=1.0), config.t_end, config.dt,
        config.diag_stride, seed=0,
    )
    theta0 = build_initial_data(run_config.grid, InitialDataConfig(kind="single_mode"))
    trajectory = run(theta0, run_config.solver, diagnostics=run_config.diagnostics)

    expected = math.exp(-config.mu * config.t_end) * np.cos(run_config.grid.points[0])
    error = float(np.max(np.abs(to_physical(trajectory.final).values - expected)))
    context.log.info(f"Single-mode decay error at t={config.t_end:g}: {error:.3e}")
    context.add_output_metadata({"final_state_error": error, "samples": len(trajectory.report)})
    return trajectory.report.to_csv_frame()


@dg.asset(
    name="phase_diagram",
    key_prefix=["aqg"],
    io_manager_key="io_manager_csv",
    dagster_type=SweepDagsterType,
    description="Boundedness verdicts over an (α, β) grid next to the regularity condition.",
    group_name="aqg_sweep",
    kinds={"polars"},
    tags={"domain": "sweep"},
)
def phase_diagram(context: dg.AssetExecutionContext, config: PhaseDiagramConfig) -> pl.DataFrame:
    """
    Sweep the configured grid.

    Returns
    -------
    pl.DataFrame
        One row per grid point in row-major order.
    """
    first = AnisotropyParams(alpha=config.alpha_grid[0], beta=config.beta_grid[0], mu=config.mu, nu=config.nu)
    base = _run_config(config.n, first, config.t_end, config.dt, config.diag_stride, config.seed)
    base = base.model_copy(update={"initial": InitialDataConfig(kind="benchmark")})
    spec = SweepSpec(
        alpha_grid=tuple(config.alpha_grid), beta_grid=tuple(config.beta_grid), base=base,
        parallelism=config.parallelism,
    )
    frame = sweep(spec)

    disagreements = frame.filter(pl.col("condition_11") != pl.col("bounded")).height
    context.log.info(f"Swept {frame.height} points; {disagreements} disagree with the regularity condition")
    context.add_output_metadata({
        "points": frame.height,
        "bounded": int(frame["bounded"].sum()),
        "aborted": int(frame["aborted"].sum()),
        "condition_disagreements": disagreements,
    })
    return frame


@dg.asset(
    name="lemma_oracle_reports",
    key_prefix=["aqg"],
    io_manager_key="io_manager_csv",
    dagster_type=OracleReportDagsterType,
    description="Stacked verification suite reports.",
    group_name="aqg_oracle",
    kinds={"polars"},
    tags={"domain": "verification"},
)
def lemma_oracle_reports(context: dg.AssetExecutionContext, config: OracleConfig) -> pl.DataFrame:
    """
    Run each configured suite in order.

    Returns
    -------
    pl.DataFrame
        One row per OracleReport.
    """
    reports = [report for suite in config.suites for report in run_suite(suite, config.seed)]
    frame = reports_to_frame(reports)
    failed = [report for report in reports if not report.passed]
    for report in failed:
        context.log.warning(f"{report.lemma} [{report.params}] failed with worst seed {report.worst_case_seed}")
    context.add_output_metadata({"reports": frame.height, "failed": len(failed)})
    return frame


@dg.asset(
    name="restart_comparison",
    key_prefix=["aqg"],
    io_manager_key="io_manager_csv",
    dagster_type=RestartComparisonDagsterType,
    description="Overlap of a low-regularity run with its restart from an intermediate state.",
    group_name="aqg_restart",
    kinds={"polars", "numpy"},
    tags={"domain": "solver"},
)
def restart_comparison(context: dg.AssetExecutionContext, config: RestartConfig) -> pl.DataFrame:
    """
    Run the restart experiment on power-law initial data.

    Returns
    -------
    pl.DataFrame
        Columns ``t, t_shifted, discrepancy_l2``.
    """
    params = AnisotropyParams(alpha=config.alpha, beta=config.beta, mu=config.mu, nu=config.nu)
    run_config = _run_config(config.n, params, config.t_end, config.dt, config.diag_stride, config.seed)
    run_config = run_config.model_copy(
        update={"initial": InitialDataConfig(kind="power_law", s=config.initial_s), "t0": config.t0}
    )
    original, restarted, comparison = restart(run_config)

    max_discrepancy = float(comparison["discrepancy_l2"].max()) if comparison.height else 0.0
    context.log.info(f"Restart overlap of {comparison.height} samples, max discrepancy {max_discrepancy:.3e}")
    context.add_output_metadata({
        "overlap_samples": comparison.height,
        "max_discrepancy_l2": max_discrepancy,
        "original_bounded": bool(original.verdict.bounded) if original.verdict else False,
        "restarted_bounded": bool(restarted.verdict.bounded) if restarted.verdict else False,
    })
    return comparison
