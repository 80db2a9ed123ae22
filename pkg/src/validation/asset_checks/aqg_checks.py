"""Data quality checks for the AQG experiment assets."""

import dagster as dg
import pandera.polars as pa
import polars as pl

from src.assets.aqg.experiment_assets import (
    closed_form_decay_report,
    lemma_oracle_reports,
    phase_diagram,
    restart_comparison,
)
from src.diagnostics.regime import condition_global
from src.validation.schemas.norm_report_schema import NormReportSchema
from src.validation.schemas.oracle_schema import OracleReportSchema
from src.validation.schemas.restart_schema import RestartComparisonSchema
from src.validation.schemas.sweep_schema import SweepSchema


def _schema_check(frame: pl.DataFrame, schema: type[pa.DataFrameModel]) -> dg.AssetCheckResult:
    """
    Validate ``frame`` against ``schema``, collecting every failure case.

    Returns
    -------
    dg.AssetCheckResult
        The result of the check.
    """
    if frame.is_empty():
        return dg.AssetCheckResult(passed=True, metadata={"num_rows": 0, "status": "empty_input"})

    try:
        schema.validate(frame, lazy=True)
        return dg.AssetCheckResult(
            passed=True, metadata={"num_rows": len(frame), "schema": schema.__name__, "status": "passed"}
        )
    except pa.errors.SchemaErrors as e:
        return dg.AssetCheckResult(
            passed=False,
            metadata={
                "num_rows": len(frame),
                "schema": schema.__name__,
                "status": "failed",
                "errors": str(e.failure_cases),
            },
        )


@dg.asset_check(asset=closed_form_decay_report)
def check_decay_report_schema(closed_form_decay_report: pl.DataFrame) -> dg.AssetCheckResult:
    """Validate the decay run's NormReport."""
    return _schema_check(closed_form_decay_report, NormReportSchema)


@dg.asset_check(asset=phase_diagram)
def check_phase_diagram_schema(phase_diagram: pl.DataFrame) -> dg.AssetCheckResult:
    """Validate the sweep table."""
    return _schema_check(phase_diagram, SweepSchema)


@dg.asset_check(asset=phase_diagram)
def check_phase_diagram_condition(phase_diagram: pl.DataFrame) -> dg.AssetCheckResult:
    """
    Re-evaluate the regularity condition for every row.

    Returns
    -------
    dg.AssetCheckResult
        Fails when a stored ``condition_11`` disagrees with a fresh evaluation.
    """
    mismatched = [
        (row["alpha"], row["beta"])
        for row in phase_diagram.iter_rows(named=True)
        if condition_global(row["alpha"], row["beta"]) != row["condition_11"]
    ]
    return dg.AssetCheckResult(
        passed=not mismatched,
        metadata={"num_rows": len(phase_diagram), "mismatched": str(mismatched)},
    )


@dg.asset_check(asset=lemma_oracle_reports)
def check_oracle_reports_schema(lemma_oracle_reports: pl.DataFrame) -> dg.AssetCheckResult:
    """Validate the stacked suite reports."""
    return _schema_check(lemma_oracle_reports, OracleReportSchema)


@dg.asset_check(asset=lemma_oracle_reports)
def check_oracle_reports_no_violations(lemma_oracle_reports: pl.DataFrame) -> dg.AssetCheckResult:
    """Pass iff no suite configuration recorded a violation."""
    failing = lemma_oracle_reports.filter(pl.col("violations") > 0)
    return dg.AssetCheckResult(
        passed=failing.is_empty(),
        metadata={
            "num_rows": len(lemma_oracle_reports),
            "total_violations": int(lemma_oracle_reports["violations"].sum()),
            "failing": str(failing.select("lemma", "params", "worst_case_seed").rows()),
        },
    )


@dg.asset_check(asset=restart_comparison)
def check_restart_comparison_schema(restart_comparison: pl.DataFrame) -> dg.AssetCheckResult:
    """Validate the restart comparison table."""
    return _schema_check(restart_comparison, RestartComparisonSchema)
