"""Seeded random coefficient tables describing real fields."""

import numpy as np

from src.spectral.fields import SpectralField
from src.spectral.grid import Grid


def band_mask(grid: Grid, kmax: int) -> np.ndarray:
    """``True`` where ``|j1| <= kmax`` and ``|j2| <= kmax``."""
    return np.logical_and.outer(np.abs(grid.index1) <= kmax, np.abs(grid.index2) <= kmax)


def hermitian_gaussian(
    grid: Grid, mask: np.ndarray, rng: np.random.Generator, amplitude: np.ndarray | float = 1.0
) -> SpectralField:
    """
    Complex Gaussian coefficients on ``mask``, symmetrized to ``F(-ξ) = conj(F(ξ))`` with zero mean.

    ``mask`` must be symmetric under ``ξ → -ξ`` and exclude the Nyquist row and column.
    """
    noise = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    coeffs = np.where(mask, amplitude * noise, 0.0)
    field = SpectralField(grid=grid, coeffs=coeffs)
    symmetric = 0.5 * (coeffs + np.conj(field.reflected()))
    symmetric[0, 0] = 0.0
    return field.with_coeffs(symmetric)
