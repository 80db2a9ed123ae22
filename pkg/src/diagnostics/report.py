"""Time series of monitored norms and dissipation budgets for a single run."""

import math
from typing import Any

import numpy as np
import polars as pl
import scipy.fft
from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.diagnostics.norms import lp_norm, sobolev_weight, weighted_norm
from src.spectral.fields import PhysicalField, SpectralField
from src.spectral.grid import Grid
from src.spectral.operators import directional_symbol, gradient, real_values, riesz_velocity
from src.spectral.params import AnisotropyParams

CSV_COLUMNS = (
    "t",
    "l2",
    "l4",
    "linf",
    "hs",
    "hdot1",
    "hdot2",
    "a1_hs",
    "a2_hs",
    "a1_hdot1",
    "a2_hdot1",
    "a1_hdot2",
    "a2_hdot2",
    "cumdiss1",
    "cumdiss2",
    "flag",
)
AUXILIARY_COLUMNS = ("u_linf", "grad_u_linf", "grad_theta_linf")

FLAG_OK = "ok"
FLAG_NONFINITE = "nonfinite"
FLAG_BLOWUP = "blowup"

_REQUIRED_P = (2.0, 4.0, math.inf)


def lp_column(p: float) -> str:
    """Column name for the ``L^p`` norm: ``l2``, ``l4``, ``linf``."""
    return "linf" if math.isinf(p) else f"l{p:g}"


class DiagnosticsConfig(BaseModel):
    """
    Which norms a run monitors.

    Attributes
    ----------
    s : float
        Sobolev index of the ``hs`` column and of the dissipation budgets.
    p_norms : tuple[float, ...]
        Lebesgue exponents. Must contain 2, 4 and infinity; extra exponents add ``l<p>`` columns to the
        in-memory frame only.
    """

    model_config = ConfigDict(frozen=True)

    s: float = Field(default=2.0, ge=0.0, allow_inf_nan=False)
    p_norms: tuple[float, ...] = _REQUIRED_P

    @field_validator("p_norms")
    @classmethod
    def _check_p_norms(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        for p in value:
            if math.isnan(p) or p < 2:
                raise ValueError(f"p must lie in [2, inf], got {p}")
        missing = [p for p in _REQUIRED_P if p not in value]
        if missing:
            raise ValueError(f"p_norms must include 2, 4 and inf; missing {missing}")
        return tuple(sorted(set(value)))


def _pointwise_max_length(grid: Grid, *components: SpectralField) -> float:
    """Maximum over the grid of the Euclidean (Frobenius for a Jacobian) length of the components."""
    squared = sum(real_values(grid, component.coeffs) ** 2 for component in components)
    return float(np.sqrt(np.max(squared)))


class NormReport:
    """
    Accumulates one diagnostic row per sample time.

    The two budgets ``cumdiss1`` and ``cumdiss2`` are trapezoid partial integrals of
    ``‖|∂1|^α θ‖²_{H^s}`` and ``‖|∂2|^β θ‖²_{H^s}``. A report has a single writer: the run producing it.

    Parameters
    ----------
    params : AnisotropyParams
        Dissipation parameters; ``α`` and ``β`` set the directional monitors.
    config : DiagnosticsConfig, optional
        Monitored norms; defaults to ``s = 2`` and ``p ∈ {2, 4, inf}``.
    """

    def __init__(self, params: AnisotropyParams, config: DiagnosticsConfig | None = None) -> None:
        self.params = params
        self.config = config or DiagnosticsConfig()
        self.rows: list[dict[str, Any]] = []

    @property
    def s(self) -> float:
        return self.config.s

    @property
    def columns(self) -> list[str]:
        lp_columns = [lp_column(p) for p in self.config.p_norms if lp_column(p) not in CSV_COLUMNS]
        return [*CSV_COLUMNS[:-1], *lp_columns, *AUXILIARY_COLUMNS, CSV_COLUMNS[-1]]

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def aborted(self) -> bool:
        return any(row["flag"] != FLAG_OK for row in self.rows)

    def _measure(self, theta: SpectralField) -> dict[str, float]:
        grid = theta.grid
        alpha, beta = self.params.alpha, self.params.beta
        power = np.abs(theta.coeffs) ** 2
        physical = PhysicalField(grid=grid, values=scipy.fft.ifft2(theta.coeffs).real)
        row = {lp_column(p): lp_norm(physical, p) for p in self.config.p_norms}

        hs_weight = sobolev_weight(grid, self.s, False)
        h1_weight = sobolev_weight(grid, 1.0, True)
        h2_weight = sobolev_weight(grid, 2.0, True)
        a1 = directional_symbol(grid, 1, alpha) ** 2
        a2 = directional_symbol(grid, 2, beta) ** 2
        row |= {
            "hs": weighted_norm(grid, power, hs_weight),
            "hdot1": weighted_norm(grid, power, h1_weight),
            "hdot2": weighted_norm(grid, power, h2_weight),
            "a1_hs": weighted_norm(grid, power, a1 * hs_weight),
            "a2_hs": weighted_norm(grid, power, a2 * hs_weight),
            "a1_hdot1": weighted_norm(grid, power, a1 * h1_weight),
            "a2_hdot1": weighted_norm(grid, power, a2 * h1_weight),
            "a1_hdot2": weighted_norm(grid, power, a1 * h2_weight),
            "a2_hdot2": weighted_norm(grid, power, a2 * h2_weight),
        }
        u1, u2 = riesz_velocity(theta)
        row["u_linf"] = _pointwise_max_length(grid, u1, u2)
        row["grad_u_linf"] = _pointwise_max_length(grid, *gradient(u1), *gradient(u2))
        row["grad_theta_linf"] = _pointwise_max_length(grid, *gradient(theta))
        return row

    def record_row(self, theta: SpectralField, t: float, flag: str = FLAG_OK) -> dict[str, Any]:
        """
        Measure ``theta`` at time ``t`` and append the row.

        Parameters
        ----------
        theta : SpectralField
            State at time ``t``.
        t : float
            Sample time; must exceed the previous sample time.
        flag : str, optional
            Row flag. Non-finite states are always flagged ``nonfinite`` and recorded as NaN.

        Returns
        -------
        dict[str, Any]
            The appended row.
        """
        if self.rows and t <= self.rows[-1]["t"]:
            raise ValueError(f"sample time {t} does not advance past {self.rows[-1]['t']}")
        if theta.is_finite():
            row = self._measure(theta)
        else:
            row = dict.fromkeys(self.columns, math.nan)
            flag = FLAG_NONFINITE
        row["t"] = float(t)
        row["flag"] = flag

        if self.rows:
            previous = self.rows[-1]
            h = row["t"] - previous["t"]
            row["cumdiss1"] = previous["cumdiss1"] + 0.5 * h * (previous["a1_hs"] ** 2 + row["a1_hs"] ** 2)
            row["cumdiss2"] = previous["cumdiss2"] + 0.5 * h * (previous["a2_hs"] ** 2 + row["a2_hs"] ** 2)
        else:
            row["cumdiss1"] = 0.0
            row["cumdiss2"] = 0.0

        self.rows.append({column: row[column] for column in self.columns})
        return self.rows[-1]

    def column(self, name: str) -> np.ndarray:
        """Values of one column as a float array."""
        return np.array([row[name] for row in self.rows], dtype=np.float64)

    def to_frame(self) -> pl.DataFrame:
        """Every column, auxiliary ones included."""
        schema = {name: pl.Float64 for name in self.columns} | {"flag": pl.String}
        return pl.DataFrame(self.rows, schema=schema)

    def to_csv_frame(self) -> pl.DataFrame:
        """The persisted columns in their fixed order."""
        return self.to_frame().select(CSV_COLUMNS)

    @classmethod
    def from_frame(
        cls, frame: pl.DataFrame, params: AnisotropyParams, config: DiagnosticsConfig | None = None
    ) -> "NormReport":
        """
        Rebuild a report from stored rows. Missing auxiliary columns are filled with NaN.
        """
        report = cls(params=params, config=config)
        if "flag" not in frame.columns:
            frame = frame.with_columns(pl.lit(FLAG_OK).alias("flag"))
        for name in report.columns:
            if name not in frame.columns:
                frame = frame.with_columns(pl.lit(math.nan).alias(name))
        report.rows = frame.select(report.columns).to_dicts()
        return report
