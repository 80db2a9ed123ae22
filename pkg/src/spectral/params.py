"""Dissipation parameters of the anisotropic SQG system."""

from pydantic import BaseModel, ConfigDict, Field, model_validator


class AnisotropyParams(BaseModel):
    """
    Parameters ``(α, β, μ, ν)`` of the dissipation ``μ|∂1|^{2α}θ + ν|∂2|^{2β}θ``.

    ``μ = ν = 0`` is accepted as the inviscid diagnostic mode; otherwise both viscosities
    must be strictly positive.
    """

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(gt=0.0, lt=1.0, description="Horizontal dissipation order, |∂1|^{2α}.")
    beta: float = Field(gt=0.0, lt=1.0, description="Vertical diffusion order, |∂2|^{2β}.")
    mu: float = Field(ge=0.0, allow_inf_nan=False, description="Horizontal viscosity μ.")
    nu: float = Field(ge=0.0, allow_inf_nan=False, description="Vertical diffusivity ν.")

    @model_validator(mode="after")
    def _check_viscosities(self) -> "AnisotropyParams":
        if (self.mu == 0.0) != (self.nu == 0.0):
            raise ValueError("mu and nu must both be positive, or both zero for the inviscid mode")
        return self

    @property
    def inviscid(self) -> bool:
        """Whether both dissipation terms are switched off."""
        return self.mu == 0.0 and self.nu == 0.0

    @property
    def is_classical_qg(self) -> bool:
        """Whether ``α = β`` and ``μ = ν``, the isotropic dissipative QG special case."""
        return self.alpha == self.beta and self.mu == self.nu
