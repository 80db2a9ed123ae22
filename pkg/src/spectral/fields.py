"""Immutable field values in physical and spectral representation, and the transforms between them."""

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
import scipy.fft

from src.spectral.grid import Grid


def _frozen_copy(values: np.ndarray, dtype: type) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class PhysicalField:
    """
    Point values of ``θ`` (or of a velocity component) on a grid.

    Attributes
    ----------
    grid : Grid
        The grid the values live on.
    values : np.ndarray
        Read-only ``(n1, n2)`` float64 array of finite values.
    """

    grid: Grid
    values: np.ndarray

    def __post_init__(self) -> None:
        values = _frozen_copy(self.values, np.float64)
        if values.shape != self.grid.shape:
            raise ValueError(f"values have shape {values.shape}, grid expects {self.grid.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("physical field contains NaN or Inf values")
        object.__setattr__(self, "values", values)


@dataclass(frozen=True, eq=False)
class SpectralField:
    """
    Fourier coefficients ``θ̂(ξ)`` on a grid (unnormalized forward convention).

    Attributes
    ----------
    grid : Grid
        The grid the coefficients belong to.
    coeffs : np.ndarray
        Read-only ``(n1, n2)`` complex128 array in FFT ordering.
    """

    grid: Grid
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        coeffs = _frozen_copy(self.coeffs, np.complex128)
        if coeffs.shape != self.grid.shape:
            raise ValueError(f"coefficients have shape {coeffs.shape}, grid expects {self.grid.shape}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zeros(cls, grid: Grid) -> "SpectralField":
        """Return the zero field on ``grid``."""
        return cls(grid=grid, coeffs=np.zeros(grid.shape, dtype=np.complex128))

    def reflected(self) -> np.ndarray:
        """Return the coefficient table evaluated at ``-ξ``."""
        return np.roll(np.flip(self.coeffs, axis=(0, 1)), shift=(1, 1), axis=(0, 1))

    def hermitian_defect(self) -> float:
        """
        Measure the departure from ``θ̂(-ξ) = conj(θ̂(ξ))``.

        Returns
        -------
        float
            ``max|θ̂(-ξ) - conj(θ̂(ξ))|`` relative to ``max|θ̂|``; zero for the zero field.
        """
        scale = float(np.max(np.abs(self.coeffs)))
        if scale == 0.0:
            return 0.0
        return float(np.max(np.abs(self.reflected() - np.conj(self.coeffs)))) / scale

    def is_hermitian(self, rtol: float = 1e-12) -> bool:
        """Whether the coefficients describe a real physical field within ``rtol``."""
        return self.hermitian_defect() <= rtol

    def is_finite(self) -> bool:
        """Whether every coefficient is finite."""
        return bool(np.all(np.isfinite(self.coeffs)))

    def with_coeffs(self, coeffs: np.ndarray) -> "SpectralField":
        """Return a new field on the same grid."""
        return SpectralField(grid=self.grid, coeffs=coeffs)

    def __add__(self, other: "SpectralField") -> "SpectralField":
        _check_same_grid(self.grid, other.grid)
        return self.with_coeffs(self.coeffs + other.coeffs)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        _check_same_grid(self.grid, other.grid)
        return self.with_coeffs(self.coeffs - other.coeffs)

    def __mul__(self, scalar: float) -> "SpectralField":
        return self.with_coeffs(self.coeffs * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "SpectralField":
        return self.with_coeffs(-self.coeffs)


def _check_same_grid(expected: Grid, actual: Grid) -> None:
    if expected != actual:
        raise ValueError(f"grid mismatch: {actual} is not {expected}")


def to_spectral(f: PhysicalField, grid: Grid | None = None, workers: int = 1) -> SpectralField:
    """
    Forward transform, unnormalized: ``F(ξ) = Σ_x f(x) e^{-iξ·x}``.

    Parameters
    ----------
    f : PhysicalField
        Field to transform.
    grid : Grid, optional
        Expected grid; a mismatch raises ``ValueError``.
    workers : int, optional
        Threads handed to ``scipy.fft``.

    Returns
    -------
    SpectralField
        Coefficients of ``f``. Hermitian because ``f`` is real.
    """
    if grid is not None:
        _check_same_grid(grid, f.grid)
    return SpectralField(grid=f.grid, coeffs=scipy.fft.fft2(f.values, workers=workers))


def to_physical(F: SpectralField, grid: Grid | None = None, workers: int = 1) -> PhysicalField:
    """
    Inverse transform, normalized by ``1/(n1·n2)``; the imaginary round-off is discarded.

    Raises
    ------
    ValueError
        On grid mismatch or non-finite coefficients.
    """
    if grid is not None:
        _check_same_grid(grid, F.grid)
    return PhysicalField(grid=F.grid, values=scipy.fft.ifft2(F.coeffs, workers=workers).real)


def from_function(grid: Grid, func: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> PhysicalField:
    """Sample ``func(x1, x2)`` on the grid points."""
    x1, x2 = grid.points
    return PhysicalField(grid=grid, values=func(x1, x2))
