"""Lebesgue and Sobolev norms of discrete fields, normalized to approximate the continuum integrals."""

from functools import lru_cache

import numpy as np

from src.spectral.fields import PhysicalField, SpectralField
from src.spectral.grid import Grid
from src.spectral.operators import directional_symbol, fractional_symbol


def _check_p(p: float) -> None:
    if np.isnan(p) or p < 2:
        raise ValueError(f"p must lie in [2, inf], got {p}")


def lp_norm(f: PhysicalField, p: float) -> float:
    """
    Quadrature ``L^p`` norm ``(Σ|f|^p Δx1Δx2)^{1/p}``, or ``max|f|`` for ``p = inf``.

    Parameters
    ----------
    f : PhysicalField
        Field to measure.
    p : float
        Exponent in ``[2, inf]``; ``np.inf`` selects the maximum norm.

    Returns
    -------
    float
        The norm; ``cos(x1)`` on the ``2π`` box has ``L²`` norm ``π√2``.

    Raises
    ------
    ValueError
        If ``p < 2``.
    """
    _check_p(p)
    magnitude = np.abs(f.values)
    peak = float(magnitude.max())
    if np.isinf(p):
        return peak
    if peak == 0.0:
        return 0.0
    # scaled by the peak so large p does not overflow
    return peak * float(np.sum((magnitude / peak) ** p) * f.grid.cell_area) ** (1.0 / p)


@lru_cache(maxsize=64)
def sobolev_weight(grid: Grid, s: float, homogeneous: bool) -> np.ndarray:
    """
    Plancherel weight of ``H^s`` (``(1+|ξ|²)^s``) or ``Ḣ^s`` (``|ξ|^{2s}``, zero mode dropped).

    The returned array is read-only and shared between callers.
    """
    if homogeneous:
        weight = fractional_symbol(grid.kmag, 2.0 * s)
        weight[0, 0] = 0.0
    else:
        weight = (1.0 + grid.kmag**2) ** s
    weight.flags.writeable = False
    return weight


def weighted_norm(grid: Grid, power_spectrum: np.ndarray, weight: np.ndarray) -> float:
    """``sqrt(plancherel · Σ weight·|F|²)`` for a precomputed ``|F|²`` table."""
    return float(np.sqrt(grid.plancherel_factor * np.sum(weight * power_spectrum)))


def sobolev_norm(F: SpectralField, s: float, homogeneous: bool) -> float:
    """
    ``H^s`` or ``Ḣ^s`` norm via the discrete Plancherel sum.

    At ``s = 0`` the inhomogeneous norm equals ``lp_norm(to_physical(F), 2)``.
    """
    if not np.isfinite(s):
        raise ValueError(f"s must be finite, got {s}")
    return weighted_norm(F.grid, np.abs(F.coeffs) ** 2, sobolev_weight(F.grid, s, homogeneous))


def aniso_sobolev_norm(F: SpectralField, axis: int, power: float, s: float, homogeneous: bool) -> float:
    """Sobolev norm of ``|∂_axis|^power F``."""
    weight = directional_symbol(F.grid, axis, power) ** 2 * sobolev_weight(F.grid, s, homogeneous)
    return weighted_norm(F.grid, np.abs(F.coeffs) ** 2, weight)


def norm_equivalence_ratio(F: SpectralField, s: float) -> float:
    """
    Ratio ``‖F‖_{Ḣ^s} / (‖|∂1|^s F‖_{L²} + ‖|∂2|^s F‖_{L²})``.

    On mean-free fields the ratio is bounded by a constant depending on ``s``; zero fields give 0.
    """
    denominator = aniso_sobolev_norm(F, 1, s, 0.0, False) + aniso_sobolev_norm(F, 2, s, 0.0, False)
    if denominator == 0.0:
        return 0.0
    return sobolev_norm(F, s, homogeneous=True) / denominator
