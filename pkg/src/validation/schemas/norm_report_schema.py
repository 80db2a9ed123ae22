"""
Schema definitions for NormReport tables.

One row per diagnostic sample of a run; columns follow the persisted CSV order.
"""

import pandera.polars as pa
import polars as pl
from dagster_pandera import pandera_schema_to_dagster_type
from pandera.polars import PolarsData

from src.diagnostics.report import FLAG_BLOWUP, FLAG_NONFINITE, FLAG_OK


class NormReportSchema(pa.DataFrameModel):
    """Schema for a run's norm time series."""

    t: float = pa.Field(ge=0.0, description="Sample time.")
    l2: float = pa.Field(ge=0.0, description="L² norm.")
    l4: float = pa.Field(ge=0.0, description="L⁴ norm.")
    linf: float = pa.Field(ge=0.0, description="Maximum norm.")
    hs: float = pa.Field(ge=0.0, description="H^s norm at the monitored index s.")
    hdot1: float = pa.Field(ge=0.0, description="Homogeneous Ḣ¹ norm.")
    hdot2: float = pa.Field(ge=0.0, description="Homogeneous Ḣ² norm.")
    a1_hs: float = pa.Field(ge=0.0, description="H^s norm of |∂1|^α θ.")
    a2_hs: float = pa.Field(ge=0.0, description="H^s norm of |∂2|^β θ.")
    a1_hdot1: float = pa.Field(ge=0.0, description="Ḣ¹ norm of |∂1|^α θ.")
    a2_hdot1: float = pa.Field(ge=0.0, description="Ḣ¹ norm of |∂2|^β θ.")
    a1_hdot2: float = pa.Field(ge=0.0, description="Ḣ² norm of |∂1|^α θ.")
    a2_hdot2: float = pa.Field(ge=0.0, description="Ḣ² norm of |∂2|^β θ.")
    cumdiss1: float = pa.Field(ge=0.0, description="Trapezoid integral of a1_hs² from 0 to t.")
    cumdiss2: float = pa.Field(ge=0.0, description="Trapezoid integral of a2_hs² from 0 to t.")
    flag: str = pa.Field(isin=[FLAG_OK, FLAG_NONFINITE, FLAG_BLOWUP], description="Row status.")

    @pa.dataframe_check
    def times_increasing(cls, data: PolarsData) -> pl.LazyFrame:
        """Sample times strictly increase."""
        return data.lazyframe.select(pl.col("t").diff().fill_null(1.0) > 0)

    @pa.dataframe_check
    def budgets_non_decreasing(cls, data: PolarsData) -> pl.LazyFrame:
        """Cumulative dissipation never decreases between finite rows."""
        return data.lazyframe.select(
            (pl.col("cumdiss1").diff().fill_null(0.0).fill_nan(0.0) >= 0)
            & (pl.col("cumdiss2").diff().fill_null(0.0).fill_nan(0.0) >= 0)
        )

    class Config:
        """Pandera configuration."""

        description = "Schema for NormReport time series."
        strict = True
        ordered = True


NormReportDagsterType = pandera_schema_to_dagster_type(NormReportSchema)
