"""Writing and reading experiment artifacts."""

import json
from pathlib import Path
from typing import Any

import pandera.polars as pa
import polars as pl
from loguru import logger

from src.diagnostics.report import CSV_COLUMNS, DiagnosticsConfig, NormReport
from src.spectral.params import AnisotropyParams
from src.utils.config_loaders import get_default
from src.utils.encoder import ArtifactJSONEncoder
from src.validation.schemas.norm_report_schema import NormReportSchema
from src.validation.schemas.oracle_schema import OracleReportSchema
from src.validation.schemas.restart_schema import RestartComparisonSchema
from src.validation.schemas.sweep_schema import SweepSchema

SWEEP_SCHEMA = {
    "alpha": pl.Float64,
    "beta": pl.Float64,
    "condition_11": pl.Boolean,
    "rho": pl.Float64,
    "bounded": pl.Boolean,
    "sup_hs": pl.Float64,
    "tail_slope": pl.Float64,
    "aborted": pl.Boolean,
}
NORM_REPORT_SCHEMA = {name: pl.Float64 for name in CSV_COLUMNS} | {"flag": pl.String}


def write_table(frame: pl.DataFrame, path: str | Path, schema: type[pa.DataFrameModel] | None = None) -> Path:
    """
    Validate ``frame`` against ``schema`` and write it as CSV.

    Floats are written in scientific notation with a fixed number of digits, so identical data always
    produce identical bytes.

    Raises
    ------
    pandera.errors.SchemaError
        If the frame does not satisfy the schema; nothing is written in that case.
    """
    if schema is not None:
        schema.validate(frame)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.write_csv(path, float_precision=get_default("outputs", "float_precision"), float_scientific=True)
    logger.debug(f"Wrote {len(frame)} rows to {path}")
    return path


def write_norm_report(report: NormReport, path: str | Path) -> Path:
    return write_table(report.to_csv_frame(), path, NormReportSchema)


def read_norm_report(path: str | Path, params: AnisotropyParams, config: DiagnosticsConfig | None = None) -> NormReport:
    """Load a persisted report; the auxiliary velocity and gradient columns come back as NaN."""
    frame = pl.read_csv(path, schema_overrides=NORM_REPORT_SCHEMA)
    return NormReport.from_frame(frame, params=params, config=config)


def write_sweep(frame: pl.DataFrame, path: str | Path) -> Path:
    return write_table(frame, path, SweepSchema)


def read_sweep(path: str | Path) -> pl.DataFrame:
    return pl.read_csv(path, schema_overrides=SWEEP_SCHEMA)


def write_oracle_reports(frame: pl.DataFrame, path: str | Path) -> Path:
    return write_table(frame, path, OracleReportSchema)


def write_restart_comparison(frame: pl.DataFrame, path: str | Path) -> Path:
    return write_table(frame, path, RestartComparisonSchema)


def write_json(payload: Any, path: str | Path) -> Path:
    """Write ``payload`` with the artifact encoder, keys sorted."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, cls=ArtifactJSONEncoder, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    logger.debug(f"Wrote {path}")
    return path
