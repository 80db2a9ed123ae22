"""Schema definitions for (α, β) sweep tables."""

import pandera.polars as pa
from dagster_pandera import pandera_schema_to_dagster_type


class SweepSchema(pa.DataFrameModel):
    """Schema for the sweep phase diagram, one row per grid point in row-major order."""

    alpha: float = pa.Field(gt=0.0, lt=1.0, description="Horizontal dissipation order.")
    beta: float = pa.Field(gt=0.0, lt=1.0, description="Vertical diffusion order.")
    condition_11: bool = pa.Field(description="Whether (α, β) lies strictly inside the regular regime.")
    rho: float = pa.Field(nullable=True, description="Velocity exponent of the Ḣ¹ estimate; blank outside the regime.")
    bounded: bool = pa.Field(description="Boundedness verdict of the run.")
    sup_hs: float = pa.Field(nullable=True, description="Largest sampled H^s norm.")
    tail_slope: float = pa.Field(nullable=True, description="Log-slope of the H^s norm over the second half.")
    aborted: bool = pa.Field(description="Whether the run stopped on blow-up or failed.")

    class Config:
        """Pandera configuration."""

        description = "Schema for the (α, β) sweep."
        strict = True
        ordered = True


SweepDagsterType = pandera_schema_to_dagster_type(SweepSchema)
