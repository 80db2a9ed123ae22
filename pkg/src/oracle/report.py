"""Outcome of one verification suite configuration."""

from dataclasses import asdict, dataclass

import polars as pl

ORACLE_COLUMNS = ("lemma", "params", "samples", "max_ratio", "violations", "worst_case_seed")


@dataclass(frozen=True)
class OracleReport:
    """
    Attributes
    ----------
    lemma : str
        Suite identifier, e.g. ``lemma1``.
    params : str
        ``key=value`` pairs describing the configuration, separated by ``;``.
    samples : int
        Number of checks performed.
    max_ratio : float
        Largest observed ratio, gap or constant estimate.
    violations : int
        Checks failing beyond the stated tolerance; stability failures count as one violation each.
    worst_case_seed : int
        Seed reproducing the worst sample, or ``-1`` for deterministic checks.
    """

    lemma: str
    params: str
    samples: int
    max_ratio: float
    violations: int
    worst_case_seed: int = -1

    @property
    def passed(self) -> bool:
        return self.violations == 0


def format_params(**params: object) -> str:
    """Stable ``key=value;...`` rendering, keys in the given order."""
    rendered = (f"{key}={value:g}" if isinstance(value, float) else f"{key}={value}" for key, value in params.items())
    return ";".join(rendered)


def reports_to_frame(reports: list[OracleReport]) -> pl.DataFrame:
    """One row per report, columns in ``ORACLE_COLUMNS`` order."""
    schema = {
        "lemma": pl.String,
        "params": pl.String,
        "samples": pl.Int64,
        "max_ratio": pl.Float64,
        "violations": pl.Int64,
        "worst_case_seed": pl.Int64,
    }
    return pl.DataFrame([asdict(report) for report in reports], schema=schema)
