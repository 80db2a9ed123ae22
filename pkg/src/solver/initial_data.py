"""Initial data for experiment runs."""

from typing import Literal

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from src.diagnostics.norms import sobolev_norm
from src.spectral.fields import SpectralField, from_function, to_spectral
from src.spectral.grid import Grid
from src.spectral.random_fields import band_mask, hermitian_gaussian

InitialDataKind = Literal["benchmark", "single_mode", "random", "power_law", "zero"]


class InitialDataConfig(BaseModel):
    """
    Attributes
    ----------
    kind : str
        ``benchmark`` (``sin x1 sin x2 + cos x2``), ``single_mode`` (``cos x1``), ``random``
        (band-limited, unit ``H²``), ``power_law`` (random phases, spectrum ``(1+|ξ|²)^{-(s+1)/2}``)
        or ``zero``.
    kmax : int, optional
        Band limit of ``random`` data; defaults to ``min(n1, n2) // 8``.
    s : float
        Nominal regularity of ``power_law`` data: it lies in ``H^r`` for every ``r < s``.
    amplitude : float
        Overall scale. ``random`` data have ``H²`` norm ``amplitude``, ``power_law`` data ``L²`` norm
        ``amplitude``.
    """

    model_config = ConfigDict(frozen=True)

    kind: InitialDataKind = "benchmark"
    kmax: int | None = Field(default=None, ge=1)
    s: float = Field(default=1.5, gt=0.0, allow_inf_nan=False)
    amplitude: float = Field(default=1.0, ge=0.0, allow_inf_nan=False)


def _normalized(field: SpectralField, norm: float, amplitude: float) -> SpectralField:
    if norm == 0.0:
        return field
    return field * (amplitude / norm)


def build_initial_data(grid: Grid, config: InitialDataConfig, seed: int = 0) -> SpectralField:
    """
    Generate ``θ⁰`` on ``grid``.

    Trigonometric data are scaled to the box so that ``x1`` and ``x2`` complete one period.

    Raises
    ------
    ValueError
        If ``kmax`` exceeds ``min(n1, n2) // 3``.
    """
    w1, w2 = 2.0 * np.pi / grid.l1, 2.0 * np.pi / grid.l2
    amplitude = config.amplitude
    match config.kind:
        case "zero":
            return SpectralField.zeros(grid)
        case "single_mode":
            return to_spectral(from_function(grid, lambda x1, _: amplitude * np.cos(w1 * x1)))
        case "benchmark":
            return to_spectral(
                from_function(grid, lambda x1, x2: amplitude * (np.sin(w1 * x1) * np.sin(w2 * x2) + np.cos(w2 * x2)))
            )
        case "random":
            kmax = config.kmax or max(1, min(grid.shape) // 8)
            if 3 * kmax > min(grid.shape):
                raise ValueError(f"kmax={kmax} exceeds the dealiased band of a {grid.n1}x{grid.n2} grid")
            rng = np.random.default_rng(seed)
            field = hermitian_gaussian(grid, band_mask(grid, kmax), rng)
            return _normalized(field, sobolev_norm(field, 2.0, homogeneous=False), amplitude)
        case "power_law":
            rng = np.random.default_rng(seed)
            spectrum = (1.0 + grid.kmag**2) ** (-(config.s + 1.0) / 2.0)
            field = hermitian_gaussian(grid, grid.dealias_mask & grid.nyquist_mask, rng, amplitude=spectrum)
            logger.debug(f"power-law data with nominal regularity s={config.s}, seed={seed}")
            return _normalized(field, sobolev_norm(field, 0.0, homogeneous=False), amplitude)
    raise ValueError(f"unknown initial data kind {config.kind!r}")
