"""Run configuration for the time integrator."""

from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field

from src.spectral.params import AnisotropyParams


class FixedDt(BaseModel):
    """Constant step. ``run`` shrinks it so that an integer number of steps lands on ``t_end``."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["fixed"] = "fixed"
    dt: float = Field(gt=0.0, allow_inf_nan=False)


class CflDt(BaseModel):
    """Advective CFL step ``c_cfl · min(Δx) / ‖u‖_∞``, capped at ``dt_max``."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["cfl"] = "cfl"
    c_cfl: float = Field(gt=0.0, le=1.0)
    dt_max: float = Field(gt=0.0, allow_inf_nan=False)


DtPolicy = Annotated[FixedDt | CflDt, Field(discriminator="kind")]


class SolverConfig(BaseModel):
    """
    Everything ``run`` needs besides the initial state.

    Attributes
    ----------
    params : AnisotropyParams
        Dissipation parameters.
    t_end : float
        Horizon. ``0`` yields a report with the initial row only.
    dt_policy : FixedDt or CflDt
        Step size rule.
    diag_stride : int
        Steps between diagnostic samples. The final state is always sampled.
    seed : int
        Seed of generated initial data; echoed into run records.
    snapshot_stride : int, optional
        Keep the spectral state every ``snapshot_stride`` steps in the trajectory.
    workers : int
        Threads handed to ``scipy.fft``.
    """

    model_config = ConfigDict(frozen=True)

    params: AnisotropyParams
    t_end: float = Field(ge=0.0, allow_inf_nan=False)
    dt_policy: DtPolicy
    diag_stride: int = Field(default=1, ge=1)
    seed: int = 0
    snapshot_stride: int | None = Field(default=None, ge=1)
    workers: int = Field(default=1, ge=1)
