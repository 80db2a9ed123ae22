"""
Experiment files: flat UTF-8 ``key = value`` lines with ``#`` comments.

Every physical parameter is explicit; unknown or repeated keys are errors so that typos never fall
back to a default silently. Values are validated by the Pydantic models they feed, and validation
errors are reported against the line that set the offending key.
"""

import math
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from src.diagnostics.report import DiagnosticsConfig
from src.solver.config import CflDt, FixedDt, SolverConfig
from src.solver.initial_data import InitialDataConfig
from src.spectral.grid import Grid, build_grid
from src.spectral.params import AnisotropyParams

INT_KEYS = {"n1", "n2", "diag_stride", "seed", "initial_kmax", "snapshot_stride", "parallelism"}
FLOAT_KEYS = {
    "l1",
    "l2",
    "alpha",
    "beta",
    "mu",
    "nu",
    "t_end",
    "dt",
    "c_cfl",
    "dt_max",
    "s",
    "initial_s",
    "initial_amplitude",
    "t0",
    "tail_tolerance",
}
STR_KEYS = {"dt_policy", "initial_data"}
LIST_KEYS = {"p_norms", "alpha_grid", "beta_grid"}
KNOWN_KEYS = INT_KEYS | FLOAT_KEYS | STR_KEYS | LIST_KEYS

RUN_REQUIRED = ("n1", "n2", "alpha", "beta", "mu", "nu", "t_end")
SWEEP_REQUIRED = ("n1", "n2", "mu", "nu", "t_end", "alpha_grid", "beta_grid")


class ConfigError(ValueError):
    """
    Malformed experiment file.

    Attributes
    ----------
    line : int or None
        1-based line of the offending entry, ``None`` for whole-file problems such as a missing key.
    path : Path or None
        File the error refers to.
    """

    def __init__(self, message: str, line: int | None = None, path: Path | None = None) -> None:
        self.message = message
        self.line = line
        self.path = path
        super().__init__(message)

    def __str__(self) -> str:
        location = str(self.path) if self.path is not None else "<config>"
        if self.line is not None:
            location = f"{location}:{self.line}"
        return f"{location}: {self.message}"


class RunConfig(BaseModel):
    """A fully specified single-run experiment."""

    model_config = ConfigDict(frozen=True)

    n1: int
    n2: int
    l1: float = 2.0 * math.pi
    l2: float = 2.0 * math.pi
    solver: SolverConfig
    diagnostics: DiagnosticsConfig = DiagnosticsConfig()
    initial: InitialDataConfig = InitialDataConfig()
    t0: float | None = Field(default=None, ge=0.0)
    tail_tolerance: float = Field(default=1e-3, gt=0.0)

    @property
    def grid(self) -> Grid:
        return build_grid(self.n1, self.n2, self.l1, self.l2)

    @property
    def params(self) -> AnisotropyParams:
        return self.solver.params

    def with_seed(self, seed: int) -> "RunConfig":
        return self.model_copy(update={"solver": self.solver.model_copy(update={"seed": seed})})

    def with_orders(self, alpha: float, beta: float) -> "RunConfig":
        """Copy with the dissipation orders replaced (viscosities kept)."""
        params = AnisotropyParams(alpha=alpha, beta=beta, mu=self.params.mu, nu=self.params.nu)
        return self.model_copy(update={"solver": self.solver.model_copy(update={"params": params})})


class SweepSpec(BaseModel):
    """
    A grid of ``(α, β)`` points sharing one run configuration.

    ``base`` carries the first grid point's orders; ``point`` substitutes the others.
    """

    model_config = ConfigDict(frozen=True)

    alpha_grid: tuple[float, ...]
    beta_grid: tuple[float, ...]
    base: RunConfig
    parallelism: int = Field(default=1, ge=1)

    @field_validator("alpha_grid", "beta_grid")
    @classmethod
    def _check_grid(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if not value:
            raise ValueError("grid must not be empty")
        if any(not 0.0 < v < 1.0 for v in value):
            raise ValueError(f"grid values must lie in (0, 1), got {list(value)}")
        if any(b <= a for a, b in zip(value, value[1:], strict=False)):
            raise ValueError(f"grid must be strictly increasing, got {list(value)}")
        return value

    def points(self) -> list[tuple[float, float]]:
        """Grid points in row-major order (``α`` outer, ``β`` inner)."""
        return [(alpha, beta) for alpha in self.alpha_grid for beta in self.beta_grid]

    def point(self, alpha: float, beta: float) -> RunConfig:
        return self.base.with_orders(alpha, beta)


def _convert(key: str, raw: str, line: int, path: Path | None) -> Any:
    try:
        if key in INT_KEYS:
            return int(raw)
        if key in FLOAT_KEYS:
            return float(raw)
        if key in LIST_KEYS:
            items = [item.strip() for item in raw.split(",") if item.strip()]
            return tuple(float(item) for item in items)
    except ValueError:
        kind = "an integer" if key in INT_KEYS else "a number" if key in FLOAT_KEYS else "a comma separated list"
        raise ConfigError(f"value {raw!r} for {key} is not {kind}", line, path) from None
    return raw


def parse_config_text(text: str, path: Path | None = None) -> tuple[dict[str, Any], dict[str, int]]:
    """
    Parse the flat format into typed values.

    Returns
    -------
    tuple[dict[str, Any], dict[str, int]]
        Values by key, and the line each key was set on.

    Raises
    ------
    ConfigError
        On lines without ``=``, unknown or repeated keys, and values of the wrong type.
    """
    values: dict[str, Any] = {}
    lines: dict[str, int] = {}
    for number, raw_line in enumerate(text.splitlines(), start=1):
        content = raw_line.split("#", 1)[0].strip()
        if not content:
            continue
        if "=" not in content:
            raise ConfigError(f"expected 'key = value', got {content!r}", number, path)
        key, raw = (part.strip() for part in content.split("=", 1))
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown key {key!r}", number, path)
        if key in values:
            raise ConfigError(f"key {key!r} already set on line {lines[key]}", number, path)
        if not raw:
            raise ConfigError(f"missing value for {key}", number, path)
        values[key] = _convert(key, raw, number, path)
        lines[key] = number
    return values, lines


# model field -> experiment key, per model
_FIELD_KEYS = {
    "params": {"alpha": "alpha", "beta": "beta", "mu": "mu", "nu": "nu"},
    "dt_policy": {"dt": "dt", "c_cfl": "c_cfl", "dt_max": "dt_max", "kind": "dt_policy"},
    "initial": {"kind": "initial_data", "kmax": "initial_kmax", "s": "initial_s", "amplitude": "initial_amplitude"},
    "diagnostics": {"s": "s", "p_norms": "p_norms"},
    "solver": {"t_end": "t_end", "diag_stride": "diag_stride", "seed": "seed", "snapshot_stride": "snapshot_stride"},
    "run": {"n1": "n1", "n2": "n2", "l1": "l1", "l2": "l2", "t0": "t0", "tail_tolerance": "tail_tolerance"},
    "sweep": {"alpha_grid": "alpha_grid", "beta_grid": "beta_grid", "parallelism": "parallelism"},
}


def _build(model: type[BaseModel], group: str, values: dict, lines: dict, path: Path | None, **extra: Any) -> Any:
    """Instantiate ``model`` from the experiment keys of ``group``, mapping errors back to lines."""
    mapping = _FIELD_KEYS[group]
    kwargs = {field: values[key] for field, key in mapping.items() if key in values}
    try:
        return model(**kwargs, **extra)
    except ValidationError as exc:
        error = exc.errors()[0]
        field = next((str(part) for part in reversed(error["loc"]) if str(part) in mapping), None)
        key = mapping.get(field) if field else None
        label = key or ".".join(str(part) for part in error["loc"]) or group
        raise ConfigError(f"invalid {label}: {error['msg']}", lines.get(key), path) from None


def _require(values: dict, keys: tuple[str, ...], path: Path | None) -> None:
    missing = [key for key in keys if key not in values]
    if missing:
        raise ConfigError(f"missing required key(s): {', '.join(missing)}", None, path)


def _build_run(values: dict, lines: dict, path: Path | None) -> RunConfig:
    params = _build(AnisotropyParams, "params", values, lines, path)
    policy_kind = values.get("dt_policy", "fixed")
    if policy_kind == "fixed":
        _require(values, ("dt",), path)
        policy = _build(FixedDt, "dt_policy", values | {"dt_policy": "fixed"}, lines, path)
    elif policy_kind == "cfl":
        _require(values, ("c_cfl", "dt_max"), path)
        policy = _build(CflDt, "dt_policy", values, lines, path)
    else:
        raise ConfigError(f"dt_policy must be 'fixed' or 'cfl', got {policy_kind!r}", lines.get("dt_policy"), path)

    solver = _build(SolverConfig, "solver", values, lines, path, params=params, dt_policy=policy)
    diagnostics = _build(DiagnosticsConfig, "diagnostics", values, lines, path)
    initial = _build(InitialDataConfig, "initial", values, lines, path)
    run_config = _build(RunConfig, "run", values, lines, path, solver=solver, diagnostics=diagnostics, initial=initial)
    try:
        run_config.grid  # noqa: B018
    except ValueError as exc:
        key = "n1" if "n1" in str(exc) else "n2" if "n2" in str(exc) else "l1" if "l1" in str(exc) else "l2"
        raise ConfigError(str(exc), lines.get(key), path) from None
    t_end = run_config.solver.t_end
    if run_config.t0 is not None and t_end > 0 and run_config.t0 >= t_end:
        raise ConfigError(f"t0 must lie in [0, t_end), got {run_config.t0}", lines.get("t0"), path)
    return run_config


def load_run_config(path: str | Path, text: str | None = None) -> RunConfig:
    """
    Load a single-run experiment file.

    Parameters
    ----------
    path : str or Path
        File to read (also used in error messages).
    text : str, optional
        File content, when already in memory.

    Raises
    ------
    ConfigError
        With the offending line number where one exists.
    """
    path = Path(path)
    values, lines = parse_config_text(path.read_text(encoding="utf-8") if text is None else text, path)
    for key in ("alpha_grid", "beta_grid", "parallelism"):
        if key in values:
            raise ConfigError(f"{key} belongs in a sweep file", lines[key], path)
    _require(values, RUN_REQUIRED, path)
    return _build_run(values, lines, path)


def load_sweep_spec(path: str | Path, text: str | None = None) -> SweepSpec:
    """Load a sweep file: the run keys without ``alpha``/``beta``, plus the two grids."""
    path = Path(path)
    values, lines = parse_config_text(path.read_text(encoding="utf-8") if text is None else text, path)
    for key in ("alpha", "beta", "t0"):
        if key in values:
            raise ConfigError(f"{key} is not allowed in a sweep file", lines[key], path)
    _require(values, SWEEP_REQUIRED, path)
    for key in ("alpha_grid", "beta_grid"):
        if not values[key]:
            raise ConfigError(f"{key} must not be empty", lines[key], path)
    # orders are placeholders until the grids are validated
    base = _build_run(values | {"alpha": 0.5, "beta": 0.5}, lines, path)
    spec = _build(SweepSpec, "sweep", values, lines, path, base=base)
    return spec.model_copy(update={"base": base.with_orders(spec.alpha_grid[0], spec.beta_grid[0])})


def load_config(path: str | Path) -> RunConfig | SweepSpec:
    """Load either file kind; files with ``alpha_grid`` or ``beta_grid`` are sweeps."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    values, _ = parse_config_text(text, path)
    if "alpha_grid" in values or "beta_grid" in values:
        return load_sweep_spec(path, text)
    return load_run_config(path, text)
