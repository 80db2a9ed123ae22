"""Periodic box discretization and its wavevector tables."""

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.fft

MIN_MODES = 8


@dataclass(frozen=True)
class Grid:
    """
    Doubly periodic box ``[0, l1) x [0, l2)`` sampled on ``n1 x n2`` points.

    Arrays defined on the grid are indexed ``[i1, i2]`` with ``x2`` varying fastest.
    Wavenumber tables follow the FFT ordering ``0, 1, ..., n/2 - 1, -n/2, ..., -1``.

    Attributes
    ----------
    n1, n2 : int
        Number of modes (and grid points) along ``x1`` and ``x2``. Even, at least 8.
    l1, l2 : float
        Box periods. The default box used throughout the project is ``2π x 2π``.
    """

    n1: int
    n2: int
    l1: float
    l2: float

    def __post_init__(self) -> None:
        for name, size in (("n1", self.n1), ("n2", self.n2)):
            if isinstance(size, bool) or not isinstance(size, (int, np.integer)):
                raise ValueError(f"{name} must be an integer, got {size!r}")
            if size % 2:
                raise ValueError(f"{name} must be even, got {size}")
            if size < MIN_MODES:
                raise ValueError(f"{name} must be at least {MIN_MODES}, got {size}")
        for name, period in (("l1", self.l1), ("l2", self.l2)):
            if not np.isfinite(period) or period <= 0:
                raise ValueError(f"{name} must be a positive finite period, got {period}")

    @property
    def shape(self) -> tuple[int, int]:
        """Array shape of every field on this grid."""
        return (self.n1, self.n2)

    @property
    def dx1(self) -> float:
        """Grid spacing along ``x1``."""
        return self.l1 / self.n1

    @property
    def dx2(self) -> float:
        """Grid spacing along ``x2``."""
        return self.l2 / self.n2

    @property
    def cell_area(self) -> float:
        """Quadrature weight ``Δx1·Δx2``."""
        return self.dx1 * self.dx2

    @cached_property
    def index1(self) -> np.ndarray:
        """Signed integer mode indices along ``x1`` in FFT order."""
        return scipy.fft.fftfreq(self.n1, d=1.0 / self.n1).round().astype(np.int64)

    @cached_property
    def index2(self) -> np.ndarray:
        """Signed integer mode indices along ``x2`` in FFT order."""
        return scipy.fft.fftfreq(self.n2, d=1.0 / self.n2).round().astype(np.int64)

    @cached_property
    def k1(self) -> np.ndarray:
        """Wavenumbers ``2π·j/l1`` along ``x1``."""
        return 2.0 * np.pi * self.index1 / self.l1

    @cached_property
    def k2(self) -> np.ndarray:
        """Wavenumbers ``2π·j/l2`` along ``x2``."""
        return 2.0 * np.pi * self.index2 / self.l2

    @cached_property
    def wavevectors(self) -> tuple[np.ndarray, np.ndarray]:
        """Meshes ``(ξ1, ξ2)`` of shape ``(n1, n2)``."""
        return np.meshgrid(self.k1, self.k2, indexing="ij")

    @cached_property
    def kmag(self) -> np.ndarray:
        """Modulus ``|ξ|`` on the spectral mesh."""
        K1, K2 = self.wavevectors
        return np.hypot(K1, K2)

    @cached_property
    def nyquist_mask(self) -> np.ndarray:
        """``False`` on the Nyquist row and column, ``True`` elsewhere.

        Odd-order symbols (``iξ``, Riesz) are multiplied by this mask so real fields stay real.
        """
        mask1 = self.index1 != -(self.n1 // 2)
        mask2 = self.index2 != -(self.n2 // 2)
        return np.logical_and.outer(mask1, mask2)

    @cached_property
    def dealias_mask(self) -> np.ndarray:
        """Two-thirds rule mask: ``True`` where ``|j1| <= n1/3`` and ``|j2| <= n2/3``."""
        keep1 = 3 * np.abs(self.index1) <= self.n1
        keep2 = 3 * np.abs(self.index2) <= self.n2
        return np.logical_and.outer(keep1, keep2)

    @cached_property
    def points(self) -> tuple[np.ndarray, np.ndarray]:
        """Physical coordinate meshes ``(x1, x2)``."""
        x1 = np.arange(self.n1) * self.dx1
        x2 = np.arange(self.n2) * self.dx2
        return np.meshgrid(x1, x2, indexing="ij")

    @property
    def plancherel_factor(self) -> float:
        """Factor turning ``Σ|F(ξ)|²`` into the quadrature ``∫|f|² dx``."""
        return self.l1 * self.l2 / float(self.n1 * self.n2) ** 2


def build_grid(n1: int, n2: int, l1: float = 2.0 * np.pi, l2: float = 2.0 * np.pi) -> Grid:
    """
    Build a periodic grid.

    Parameters
    ----------
    n1, n2 : int
        Even mode counts, at least 8.
    l1, l2 : float, optional
        Box periods, ``2π`` by default.

    Returns
    -------
    Grid
        The validated grid. Wavenumber tables are computed lazily and cached.

    Raises
    ------
    ValueError
        If a size is odd or below 8, or a period is not positive.

    Examples
    --------
    >>> build_grid(8, 8).k1
    array([ 0.,  1.,  2.,  3., -4., -3., -2., -1.])
    """
    return Grid(n1=n1, n2=n2, l1=float(l1), l2=float(l2))
