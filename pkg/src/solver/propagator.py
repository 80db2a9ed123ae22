"""Exact exponential of the diagonal anisotropic dissipation."""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from src.spectral.grid import Grid
from src.spectral.operators import directional_symbol
from src.spectral.params import AnisotropyParams


@lru_cache(maxsize=32)
def dissipation_rate(grid: Grid, params: AnisotropyParams) -> np.ndarray:
    """Per-mode rate ``μ|ξ1|^{2α} + ν|ξ2|^{2β}``; zero at ``ξ = 0``."""
    rate = params.mu * directional_symbol(grid, 1, 2.0 * params.alpha) + params.nu * directional_symbol(
        grid, 2, 2.0 * params.beta
    )
    rate.flags.writeable = False
    return rate


@dataclass(frozen=True, eq=False)
class LinearPropagator:
    """
    Factors ``exp(-(μ|ξ1|^{2α} + ν|ξ2|^{2β})·dt)`` of one step, plus the half-step factors used
    by the Runge-Kutta stages.
    """

    grid: Grid
    dt: float
    factors: np.ndarray
    half_factors: np.ndarray


def build_propagator(grid: Grid, params: AnisotropyParams, dt: float) -> LinearPropagator:
    """
    Tabulate the exact solution operator of the linear part over one step.

    Parameters
    ----------
    grid : Grid
        Spectral mesh.
    params : AnisotropyParams
        Dissipation parameters.
    dt : float
        Step size, strictly positive.

    Returns
    -------
    LinearPropagator
        Factors in ``(0, 1]``, equal to 1 at ``ξ = 0`` (and everywhere in the inviscid mode).

    Raises
    ------
    ValueError
        If ``dt`` is not a positive finite number.

    Examples
    --------
    With ``μ = ν = 1``, ``α = β = 1/2`` and ``dt = 1`` the mode ``ξ = (1, 0)`` decays by ``e^{-1}``.
    """
    if not np.isfinite(dt) or dt <= 0:
        raise ValueError(f"dt must be positive and finite, got {dt}")
    rate = dissipation_rate(grid, params)
    factors, half = np.exp(-rate * dt), np.exp(-rate * (0.5 * dt))
    factors.flags.writeable = False
    half.flags.writeable = False
    return LinearPropagator(grid=grid, dt=float(dt), factors=factors, half_factors=half)
