"""Schema definitions for verification suite reports."""

import pandera.polars as pa
from dagster_pandera import pandera_schema_to_dagster_type

SUITE_NAMES = ["lemma1", "lemma2", "lemma3", "lemma6", "equivalence", "solver"]


class OracleReportSchema(pa.DataFrameModel):
    """Schema for OracleReport rows, one per suite configuration."""

    lemma: str = pa.Field(isin=SUITE_NAMES, description="Suite identifier.")
    params: str = pa.Field(description="Configuration as key=value pairs.")
    samples: int = pa.Field(ge=1, description="Number of checks performed.")
    max_ratio: float = pa.Field(description="Largest observed ratio, gap or constant.")
    violations: int = pa.Field(ge=0, description="Failed checks.")
    worst_case_seed: int = pa.Field(ge=-1, description="Seed reproducing the worst sample; -1 if deterministic.")

    class Config:
        """Pandera configuration."""

        description = "Schema for verification suite reports."
        strict = True
        ordered = True


OracleReportDagsterType = pandera_schema_to_dagster_type(OracleReportSchema)
