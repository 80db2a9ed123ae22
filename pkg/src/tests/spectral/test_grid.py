"""Unit tests for the periodic grid."""

import math

import numpy as np
import pytest

from src.spectral.grid import build_grid


def test_wavenumbers_follow_fft_order() -> None:
    """Test the signed ordering of the wavenumber table on the 2π box."""
    grid = build_grid(8, 8)
    np.testing.assert_array_equal(grid.k1, [0.0, 1.0, 2.0, 3.0, -4.0, -3.0, -2.0, -1.0])
    np.testing.assert_array_equal(grid.index2, [0, 1, 2, 3, -4, -3, -2, -1])


def test_wavenumbers_scale_with_period() -> None:
    """Test that a box of period 4π halves the wavenumbers."""
    grid = build_grid(8, 16, l1=4.0 * math.pi)
    np.testing.assert_allclose(grid.k1[:4], [0.0, 0.5, 1.0, 1.5])
    assert grid.k2.shape == (16,)


def test_zero_mode_is_unique() -> None:
    """Test that ξ = (0, 0) appears exactly once."""
    grid = build_grid(16, 8)
    assert np.count_nonzero(grid.kmag == 0.0) == 1
    assert grid.kmag[0, 0] == 0.0


@pytest.mark.parametrize(
    ("n1", "n2", "message"),
    [
        (9, 8, "even"),
        (8, 6, "at least 8"),
        (8.0, 8, "integer"),
    ],
)
def test_invalid_sizes_rejected(n1: int, n2: int, message: str) -> None:
    """Test that odd, small and non-integer sizes are rejected."""
    with pytest.raises(ValueError, match=message):
        build_grid(n1, n2)


def test_non_positive_period_rejected() -> None:
    """Test validation of box periods."""
    with pytest.raises(ValueError, match="l2"):
        build_grid(8, 8, l2=0.0)


def test_dealias_mask_keeps_two_thirds() -> None:
    """Test that the two-thirds rule keeps |j| <= n/3 along each axis."""
    grid = build_grid(32, 32)
    kept = np.abs(grid.index1[grid.dealias_mask.any(axis=1)])
    assert kept.max() == 10
    assert grid.dealias_mask.sum() == 21 * 21


def test_nyquist_mask_drops_only_nyquist_lines() -> None:
    """Test that only the -n/2 row and column are masked."""
    grid = build_grid(8, 8)
    mask = grid.nyquist_mask
    assert not mask[4, :].any()
    assert not mask[:, 4].any()
    assert mask.sum() == 7 * 7


def test_plancherel_factor_matches_quadrature() -> None:
    """Test that Σ|F|² times the factor equals the quadrature of f²."""
    grid = build_grid(16, 8)
    values = np.random.default_rng(0).standard_normal(grid.shape)
    coeffs = np.fft.fft2(values)
    quadrature = float(np.sum(values**2) * grid.cell_area)
    assert grid.plancherel_factor * float(np.sum(np.abs(coeffs) ** 2)) == pytest.approx(quadrature, rel=1e-12)
