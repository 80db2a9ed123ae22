"""Schema definitions for restart comparison tables."""

import pandera.polars as pa
from dagster_pandera import pandera_schema_to_dagster_type


class RestartComparisonSchema(pa.DataFrameModel):
    """Schema for the overlap of a run and its restart from an intermediate state."""

    t: float = pa.Field(ge=0.0, description="Time on the original run.")
    t_shifted: float = pa.Field(ge=0.0, description="Time on the restarted run, t - t0.")
    discrepancy_l2: float = pa.Field(ge=0.0, description="L² distance between the two states.")

    class Config:
        """Pandera configuration."""

        description = "Schema for restart comparisons."
        strict = True
        ordered = True


RestartComparisonDagsterType = pandera_schema_to_dagster_type(RestartComparisonSchema)
