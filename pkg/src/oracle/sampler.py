"""Seeded band-limited random fields for the inequality suites."""

from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.diagnostics.norms import sobolev_norm
from src.spectral.fields import SpectralField
from src.spectral.grid import Grid
from src.spectral.random_fields import band_mask, hermitian_gaussian


class FieldSampler(BaseModel):
    """
    Recipe for a random field: Hermitian complex Gaussian coefficients on ``|j1|, |j2| <= kmax``.

    Attributes
    ----------
    grid : Grid
        Target grid.
    kmax : int
        Band limit, at most ``min(n1, n2) // 3`` so that sampled fields are unaffected by dealiasing.
    seed : int
        Seed of the generator; the same seed always yields the same field.
    normalization : {"unit_l2", "unit_h2"}
        Which norm the sample is scaled to one in.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: Grid
    kmax: int = Field(ge=1)
    seed: int = 0
    normalization: Literal["unit_l2", "unit_h2"] = "unit_l2"

    @model_validator(mode="after")
    def _check_band(self) -> "FieldSampler":
        if 3 * self.kmax > min(self.grid.shape):
            raise ValueError(f"kmax={self.kmax} exceeds min(n1, n2)/3 for a {self.grid.n1}x{self.grid.n2} grid")
        return self

    def with_seed(self, seed: int) -> "FieldSampler":
        return self.model_copy(update={"seed": seed})

    def seeds(self, n_samples: int) -> range:
        """Per-sample seeds ``seed, seed + 1, ...``; a sample is reproduced from its seed alone."""
        return range(self.seed, self.seed + n_samples)


def sample_field(sampler: FieldSampler) -> SpectralField:
    """
    Draw the field described by ``sampler``.

    Returns
    -------
    SpectralField
        Hermitian, zero-mean, zero outside the band, and of unit norm per ``sampler.normalization``.
    """
    rng = np.random.default_rng(sampler.seed)
    field = hermitian_gaussian(sampler.grid, band_mask(sampler.grid, sampler.kmax), rng)
    s = 0.0 if sampler.normalization == "unit_l2" else 2.0
    return field * (1.0 / sobolev_norm(field, s, homogeneous=False))
