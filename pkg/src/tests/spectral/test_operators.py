"""Unit tests for Fourier multiplier operators."""

import math

import numpy as np
import pytest
import scipy.fft
from hypothesis import given, settings
from hypothesis import strategies as st

from src.spectral.fields import SpectralField, from_function, to_physical, to_spectral
from src.spectral.grid import build_grid
from src.spectral.operators import (
    advection_term,
    apply_directional_fractional,
    apply_isotropic_fractional,
    dealias,
    dealias_coeffs,
    gradient,
    gradient_symbols,
    inner_product,
    real_coeffs,
    real_values,
    riesz_velocity,
    velocity_coeffs,
)
from src.spectral.random_fields import band_mask, hermitian_gaussian

GRID = build_grid(32, 32)


@pytest.fixture
def random_field() -> SpectralField:
    """Band-limited real field inside the dealiased band."""
    return hermitian_gaussian(GRID, band_mask(GRID, 8), np.random.default_rng(11))


def _l2(F: SpectralField) -> float:
    return math.sqrt(inner_product(F, F))


def test_directional_power_zero_is_identity(random_field: SpectralField) -> None:
    """Test that |∂1|^0 leaves every mode, including the mean, unchanged."""
    shifted = random_field.with_coeffs(random_field.coeffs + np.where(GRID.kmag == 0, 5.0, 0.0))
    np.testing.assert_array_equal(apply_directional_fractional(shifted, 1, 0.0).coeffs, shifted.coeffs)


def test_directional_derivative_of_cosine() -> None:
    """Test |∂1|^1 cos(2x1) = 2cos(2x1) and |∂2|^{1/2} cos(2x1) = 0."""
    F = to_spectral(from_function(GRID, lambda x1, _: np.cos(2.0 * x1)))
    np.testing.assert_allclose(apply_directional_fractional(F, 1, 1.0).coeffs, 2.0 * F.coeffs, atol=1e-10)
    np.testing.assert_allclose(apply_directional_fractional(F, 2, 0.5).coeffs, 0.0, atol=1e-10)


def test_isotropic_fractional_annihilates_mean() -> None:
    """Test that |∇|^σ removes the constant mode for σ > 0."""
    F = to_spectral(from_function(GRID, lambda x1, x2: 3.0 + np.cos(x1 + x2)))
    out = apply_isotropic_fractional(F, 2.0)
    assert out.coeffs[0, 0] == 0.0
    np.testing.assert_allclose(to_physical(out).values, 2.0 * np.cos(GRID.points[0] + GRID.points[1]), atol=1e-12)


@pytest.mark.parametrize(
    ("axis", "power", "message"),
    [(3, 1.0, "axis"), (1, -0.5, "non-negative"), (2, np.nan, "finite")],
)
def test_directional_arguments_validated(axis: int, power: float, message: str) -> None:
    """Test rejection of bad axes and powers."""
    with pytest.raises(ValueError, match=message):
        apply_directional_fractional(SpectralField.zeros(GRID), axis, power)


def test_riesz_velocity_of_single_mode() -> None:
    """Test that θ = cos(x1) drives u = (0, -sin(x1))."""
    F = to_spectral(from_function(GRID, lambda x1, _: np.cos(x1)))
    u1, u2 = riesz_velocity(F)
    np.testing.assert_allclose(to_physical(u1).values, 0.0, atol=1e-13)
    np.testing.assert_allclose(to_physical(u2).values, -np.sin(GRID.points[0]), atol=1e-13)


def test_riesz_velocity_is_divergence_free_and_mean_free(random_field: SpectralField) -> None:
    """Test ξ·û = 0 mode by mode and û(0) = 0."""
    u1, u2 = riesz_velocity(random_field)
    K1, K2 = GRID.wavevectors
    assert np.max(np.abs(K1 * u1.coeffs + K2 * u2.coeffs)) <= 1e-12 * np.max(np.abs(random_field.coeffs))
    assert u1.coeffs[0, 0] == 0.0
    assert u2.coeffs[0, 0] == 0.0


def test_riesz_velocity_preserves_l2_of_mean_free_field(random_field: SpectralField) -> None:
    """Test |u|_{L2} = |θ|_{L2} for mean-free θ without Nyquist content."""
    u1, u2 = riesz_velocity(random_field)
    assert math.hypot(_l2(u1), _l2(u2)) == pytest.approx(_l2(random_field), rel=1e-12)


def test_gradient_of_sine() -> None:
    """Test ∂2 sin(3x2) = 3cos(3x2)."""
    F = to_spectral(from_function(GRID, lambda _, x2: np.sin(3.0 * x2)))
    g1, g2 = gradient(F)
    np.testing.assert_allclose(to_physical(g1).values, 0.0, atol=1e-12)
    np.testing.assert_allclose(to_physical(g2).values, 3.0 * np.cos(3.0 * GRID.points[1]), atol=1e-12)


def test_dealias_is_a_projection() -> None:
    """Test idempotence and the non-increase of the L² norm."""
    F = hermitian_gaussian(GRID, GRID.nyquist_mask, np.random.default_rng(5))
    once = dealias(F)
    np.testing.assert_array_equal(dealias(once).coeffs, once.coeffs)
    assert _l2(once) <= _l2(F)


def test_advection_is_skew(random_field: SpectralField) -> None:
    """Test ⟨u_θ·∇θ, θ⟩ = 0 for band-limited θ."""
    advection = advection_term(random_field)
    scale = _l2(advection) * _l2(random_field)
    assert abs(inner_product(advection, random_field)) <= 1e-12 * scale


def test_advection_vanishes_for_shear_mode() -> None:
    """Test that a single Fourier mode is a steady state of the nonlinearity."""
    F = to_spectral(from_function(GRID, lambda x1, _: np.cos(x1)))
    np.testing.assert_allclose(advection_term(F).coeffs, 0.0, atol=1e-10)


def test_inner_product_is_quadrature() -> None:
    """Test Plancherel against the trapezoid quadrature."""
    f = from_function(GRID, lambda x1, x2: np.sin(x1) * np.cos(2.0 * x2) + 0.5)
    g = from_function(GRID, lambda x1, x2: np.cos(x2) + 1.0)
    expected = float(np.sum(f.values * g.values) * GRID.cell_area)
    assert inner_product(to_spectral(f), to_spectral(g)) == pytest.approx(expected, rel=1e-12)


def test_inner_product_grid_mismatch() -> None:
    """Test that fields from different grids are refused."""
    with pytest.raises(ValueError, match="grid mismatch"):
        inner_product(SpectralField.zeros(GRID), SpectralField.zeros(build_grid(8, 8)))


@settings(max_examples=40, deadline=None)
@given(
    a=st.floats(0.0, 2.0),
    b=st.floats(0.0, 2.0),
    axis=st.sampled_from([1, 2]),
    seed=st.integers(0, 2**16),
)
def test_directional_powers_compose(a: float, b: float, axis: int, seed: int) -> None:
    """Test |∂|^a |∂|^b = |∂|^{a+b} on random band-limited fields."""
    F = hermitian_gaussian(GRID, band_mask(GRID, 8), np.random.default_rng(seed))
    composed = apply_directional_fractional(apply_directional_fractional(F, axis, b), axis, a)
    direct = apply_directional_fractional(F, axis, a + b)
    np.testing.assert_allclose(composed.coeffs, direct.coeffs, rtol=1e-12, atol=1e-12 * np.max(np.abs(F.coeffs)))


def test_isotropic_first_order_on_product_mode() -> None:
    """Test |∇| cos(x1)cos(x2) = √2 cos(x1)cos(x2)."""
    f = from_function(GRID, lambda x1, x2: np.cos(x1) * np.cos(x2))
    out = to_physical(apply_isotropic_fractional(to_spectral(f), 1.0))
    np.testing.assert_allclose(out.values, math.sqrt(2.0) * f.values, atol=1e-12)


@pytest.mark.parametrize("shape", [(16, 16), (16, 12), (10, 24)])
def test_half_spectrum_transforms_match_full(shape: tuple[int, int]) -> None:
    """Test the real-to-complex kernels against the complex transforms."""
    grid = build_grid(*shape)
    values = np.random.default_rng(3).standard_normal(grid.shape)
    coeffs = scipy.fft.fft2(values)
    np.testing.assert_allclose(real_coeffs(grid, values), coeffs, atol=1e-11)
    np.testing.assert_allclose(real_values(grid, coeffs), values, atol=1e-12)


def test_advection_matches_complex_transform_product(random_field: SpectralField) -> None:
    """Test the dealiased product against a reference built from full complex transforms."""
    coeffs = random_field.coeffs
    u1_hat, u2_hat = velocity_coeffs(GRID, coeffs)
    g1_sym, g2_sym = gradient_symbols(GRID)
    u1, u2, g1, g2 = (scipy.fft.ifft2(arr).real for arr in (u1_hat, u2_hat, g1_sym * coeffs, g2_sym * coeffs))
    expected = dealias_coeffs(GRID, scipy.fft.fft2(u1 * g1 + u2 * g2))
    np.testing.assert_allclose(advection_term(random_field).coeffs, expected, atol=1e-10 * np.max(np.abs(expected)))
