"""
Fourier multiplier operators on spectral fields.

Every public operator takes and returns immutable ``SpectralField`` values. The ``*_coeffs``
kernels work on raw coefficient arrays and are shared with the time integrator, which calls them
several times per step.
"""

from functools import lru_cache

import numpy as np
import scipy.fft

from src.spectral.fields import SpectralField
from src.spectral.grid import Grid


def _read_only(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def _check_axis(axis: int) -> None:
    if axis not in {1, 2}:
        raise ValueError(f"axis must be 1 or 2, got {axis}")


def _check_power(power: float, name: str) -> None:
    if not np.isfinite(power):
        raise ValueError(f"{name} must be finite, got {power}")
    if power < 0:
        raise ValueError(f"{name} must be non-negative (inverse operators are not supported), got {power}")


def fractional_symbol(modulus: np.ndarray, power: float) -> np.ndarray:
    """
    Evaluate ``modulus**power`` with the convention ``0**power = 0`` for ``power > 0``.

    ``power = 0`` returns ones everywhere, so the zero mode is left untouched by the identity.
    """
    if power == 0:
        return np.ones_like(modulus)
    symbol = np.zeros_like(modulus)
    nonzero = modulus > 0
    symbol[nonzero] = modulus[nonzero] ** power
    return symbol


def directional_symbol(grid: Grid, axis: int, power: float) -> np.ndarray:
    """Multiplier ``|ξ_axis|^power`` on the spectral mesh."""
    _check_axis(axis)
    _check_power(power, "power")
    K1, K2 = grid.wavevectors
    return fractional_symbol(np.abs(K1 if axis == 1 else K2), power)


def apply_directional_fractional(F: SpectralField, axis: int, power: float) -> SpectralField:
    """
    Apply ``|∂_axis|^power``.

    Parameters
    ----------
    F : SpectralField
        Input coefficients.
    axis : {1, 2}
        Direction of the derivative.
    power : float
        Non-negative order. ``power = 0`` is the identity.

    Returns
    -------
    SpectralField
        ``|ξ_axis|^power · F(ξ)``; modes with ``ξ_axis = 0`` vanish when ``power > 0``.

    Raises
    ------
    ValueError
        If ``axis`` is not 1 or 2, or ``power`` is negative or not finite.
    """
    return F.with_coeffs(directional_symbol(F.grid, axis, power) * F.coeffs)


def apply_isotropic_fractional(F: SpectralField, sigma: float) -> SpectralField:
    """Apply ``|∇|^σ`` (multiplier ``|ξ|^σ``); the zero mode is annihilated for ``σ > 0``."""
    _check_power(sigma, "sigma")
    return F.with_coeffs(fractional_symbol(F.grid.kmag, sigma) * F.coeffs)


@lru_cache(maxsize=32)
def riesz_symbols(grid: Grid) -> tuple[np.ndarray, np.ndarray]:
    """
    Symbols of ``R^⊥ = (-R2, R1)``: ``(-iξ2/|ξ|, iξ1/|ξ|)``.

    Both vanish at ``ξ = 0`` and on the Nyquist row/column.
    """
    K1, K2 = grid.wavevectors
    kmag = grid.kmag
    inv = np.zeros_like(kmag)
    np.divide(1.0, kmag, out=inv, where=kmag > 0)
    inv *= grid.nyquist_mask
    return _read_only(-1j * K2 * inv), _read_only(1j * K1 * inv)


@lru_cache(maxsize=32)
def gradient_symbols(grid: Grid) -> tuple[np.ndarray, np.ndarray]:
    """Symbols ``(iξ1, iξ2)`` with the Nyquist row/column zeroed."""
    K1, K2 = grid.wavevectors
    mask = grid.nyquist_mask
    return _read_only(1j * K1 * mask), _read_only(1j * K2 * mask)


def velocity_coeffs(grid: Grid, coeffs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Kernel of ``riesz_velocity`` on a raw coefficient array."""
    s1, s2 = riesz_symbols(grid)
    return s1 * coeffs, s2 * coeffs


def dealias_coeffs(grid: Grid, coeffs: np.ndarray) -> np.ndarray:
    """Kernel of ``dealias`` on a raw coefficient array."""
    return np.where(grid.dealias_mask, coeffs, 0.0)


def real_values(grid: Grid, coeffs: np.ndarray, workers: int = 1) -> np.ndarray:
    """Point values of a Hermitian coefficient array through the half-spectrum inverse transform."""
    return scipy.fft.irfft2(coeffs[:, : grid.n2 // 2 + 1], s=grid.shape, workers=workers)


def real_coeffs(grid: Grid, values: np.ndarray, workers: int = 1) -> np.ndarray:
    """Full ``n1 x n2`` coefficient array of real point values, rebuilt from the half spectrum."""
    half = scipy.fft.rfft2(values, workers=workers)
    full = np.empty(grid.shape, dtype=np.complex128)
    m = grid.n2 // 2
    full[:, : m + 1] = half
    mirror = (-np.arange(grid.n1)) % grid.n1
    full[:, m + 1 :] = np.conj(half[mirror, 1:m][:, ::-1])
    return full


def advection_coeffs(grid: Grid, coeffs: np.ndarray, workers: int = 1) -> np.ndarray:
    """
    Kernel of ``advection_term``: spectral coefficients of the dealiased ``u·∇θ``.

    The input is truncated first, velocity and gradient are formed by multipliers, the product is
    taken pointwise and the result is truncated again. With the two-thirds rule no aliased mode
    lands inside the retained band, so this equals the Galerkin projection of the quadratic term.
    All five transforms are real-to-complex.
    """
    truncated = dealias_coeffs(grid, coeffs)
    u1_hat, u2_hat = velocity_coeffs(grid, truncated)
    g1_sym, g2_sym = gradient_symbols(grid)
    u1, u2, g1, g2 = (
        real_values(grid, arr, workers=workers) for arr in (u1_hat, u2_hat, g1_sym * truncated, g2_sym * truncated)
    )
    return dealias_coeffs(grid, real_coeffs(grid, u1 * g1 + u2 * g2, workers=workers))


def riesz_velocity(theta: SpectralField) -> tuple[SpectralField, SpectralField]:
    """
    SQG velocity ``u = R^⊥θ``.

    Returns
    -------
    tuple[SpectralField, SpectralField]
        ``(û1, û2) = (-iξ2/|ξ| θ̂, iξ1/|ξ| θ̂)``; mean-free, and ``ξ1û1 + ξ2û2 = 0`` mode by mode.

    Examples
    --------
    For ``θ = cos(x1)`` on the ``2π`` box the velocity is ``(0, -sin(x1))``.
    """
    u1, u2 = velocity_coeffs(theta.grid, theta.coeffs)
    return theta.with_coeffs(u1), theta.with_coeffs(u2)


def gradient(F: SpectralField) -> tuple[SpectralField, SpectralField]:
    """Spectral gradient ``(∂1F, ∂2F)``."""
    g1, g2 = gradient_symbols(F.grid)
    return F.with_coeffs(g1 * F.coeffs), F.with_coeffs(g2 * F.coeffs)


def dealias(F: SpectralField) -> SpectralField:
    """Two-thirds rule truncation. A projection: idempotent and norm non-increasing."""
    return F.with_coeffs(dealias_coeffs(F.grid, F.coeffs))


def advection_term(theta: SpectralField, workers: int = 1) -> SpectralField:
    """
    Dealiased nonlinear term ``u_θ·∇θ`` of the AQG equation, computed pseudo-spectrally.

    For band-limited ``θ`` the result is orthogonal to ``θ`` in ``L²``.
    """
    return theta.with_coeffs(advection_coeffs(theta.grid, theta.coeffs, workers=workers))


def inner_product(F: SpectralField, G: SpectralField) -> float:
    """Real ``L²`` inner product ``∫ f g dx`` evaluated through Plancherel."""
    if F.grid != G.grid:
        raise ValueError("grid mismatch in inner product")
    return float(F.grid.plancherel_factor * np.real(np.vdot(F.coeffs, G.coeffs)))
