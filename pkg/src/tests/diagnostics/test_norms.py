"""Unit tests for Lebesgue and Sobolev norms and the parameter regimes."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.diagnostics.norms import aniso_sobolev_norm, lp_norm, norm_equivalence_ratio, sobolev_norm
from src.diagnostics.regime import (
    condition_global,
    corollary_window,
    regularity_threshold,
    rho_exponent,
    rho_or_none,
)
from src.spectral.fields import SpectralField, from_function, to_physical, to_spectral
from src.spectral.grid import build_grid
from src.spectral.random_fields import band_mask, hermitian_gaussian

GRID = build_grid(32, 32)
COS_L2 = math.pi * math.sqrt(2.0)


@pytest.fixture
def cosine() -> SpectralField:
    """θ = cos(x1) on the 2π box."""
    return to_spectral(from_function(GRID, lambda x1, _: np.cos(x1)))


def test_lp_norms_of_cosine(cosine: SpectralField) -> None:
    """Test the L², L⁴ and maximum norms of cos(x1)."""
    f = to_physical(cosine)
    assert lp_norm(f, 2.0) == pytest.approx(COS_L2, rel=1e-12)
    # ∫∫cos⁴ = 2π · 3π/4
    assert lp_norm(f, 4.0) == pytest.approx((2.0 * math.pi * 3.0 * math.pi / 4.0) ** 0.25, rel=1e-12)
    assert lp_norm(f, math.inf) == pytest.approx(1.0)


def test_lp_norm_rejects_small_p(cosine: SpectralField) -> None:
    """Test that exponents below 2 are refused."""
    with pytest.raises(ValueError, match=r"\[2, inf\]"):
        lp_norm(to_physical(cosine), 1.5)


def test_lp_norm_large_exponent_stays_finite() -> None:
    """Test that large p on large values does not overflow."""
    f = from_function(GRID, lambda x1, x2: 1e3 * np.sin(x1) * np.cos(x2))
    assert math.isfinite(lp_norm(f, 400.0))
    assert lp_norm(f, 400.0) <= 1e3 * (4.0 * math.pi**2) ** (1.0 / 400.0) * (1.0 + 1e-12)


@given(st.floats(-50.0, 50.0, allow_nan=False), st.sampled_from([2.0, 3.0, 4.0, 8.0, math.inf]))
def test_lp_norm_is_absolutely_homogeneous(scale: float, p: float) -> None:
    """Test ‖c f‖ = |c| ‖f‖."""
    f = from_function(GRID, lambda x1, x2: np.sin(x1) + 0.3 * np.cos(2.0 * x2))
    scaled = from_function(GRID, lambda x1, x2: scale * (np.sin(x1) + 0.3 * np.cos(2.0 * x2)))
    assert lp_norm(scaled, p) == pytest.approx(abs(scale) * lp_norm(f, p), rel=1e-10, abs=1e-12)


def test_sobolev_norms_of_cosine(cosine: SpectralField) -> None:
    """Test H^s and Ḣ^s norms of a unit-frequency mode."""
    assert sobolev_norm(cosine, 0.0, homogeneous=False) == pytest.approx(lp_norm(to_physical(cosine), 2.0))
    assert sobolev_norm(cosine, 1.0, homogeneous=True) == pytest.approx(COS_L2)
    assert sobolev_norm(cosine, 1.5, homogeneous=False) == pytest.approx(2.0**0.75 * COS_L2)


def test_homogeneous_norm_drops_mean() -> None:
    """Test that constants have zero homogeneous norm, even at s = 0."""
    constant = to_spectral(from_function(GRID, lambda x1, _: np.full_like(x1, 2.0)))
    assert sobolev_norm(constant, 0.0, homogeneous=True) == 0.0
    assert sobolev_norm(constant, 0.0, homogeneous=False) == pytest.approx(2.0 * 2.0 * math.pi)


def test_sobolev_norm_rejects_infinite_index(cosine: SpectralField) -> None:
    """Test that the index must be finite."""
    with pytest.raises(ValueError, match="finite"):
        sobolev_norm(cosine, math.inf, homogeneous=False)


def test_aniso_sobolev_norm_of_directional_mode() -> None:
    """Test ‖|∂1|^{1/2} cos(2x1)‖ = √2 ‖cos(2x1)‖ and ‖|∂2|^{1/2} cos(2x1)‖ = 0."""
    F = to_spectral(from_function(GRID, lambda x1, _: np.cos(2.0 * x1)))
    assert aniso_sobolev_norm(F, 1, 0.5, 0.0, False) == pytest.approx(math.sqrt(2.0) * COS_L2)
    assert aniso_sobolev_norm(F, 2, 0.5, 0.0, False) == 0.0


@pytest.mark.parametrize("s", [0.5, 1.0, 2.0])
def test_norm_equivalence_ratio_bounded_by_one_up_to_two(s: float) -> None:
    """Test the directional splitting bound on random mean-free fields."""
    F = hermitian_gaussian(GRID, band_mask(GRID, 10), np.random.default_rng(int(10 * s)))
    assert 0.0 < norm_equivalence_ratio(F, s) <= 1.0 + 1e-12
    assert norm_equivalence_ratio(SpectralField.zeros(GRID), s) == 0.0


@pytest.mark.parametrize(
    ("alpha", "beta", "expected"),
    [
        (0.5, 0.6, True),
        (0.5, 0.5, False),
        (0.25, 0.5, False),
        (0.25, 0.7, True),
        (0.75, 0.1667, False),
        (0.75, 0.2, True),
        (0.9, 0.1, True),
        (0.1, 0.9, True),
        (0.1, 0.8, False),
    ],
)
def test_condition_global_truth_table(alpha: float, beta: float, expected: bool) -> None:
    """Test the regularity condition on both branches and at the frontier."""
    assert condition_global(alpha, beta) is expected


SWEEP_ORDERS = (0.25, 0.5, 0.75)
SWEEP_TRUTH = {
    (0.25, 0.25): False,
    (0.25, 0.5): False,
    (0.25, 0.75): True,
    (0.5, 0.25): False,
    (0.5, 0.5): False,
    (0.5, 0.75): True,
    (0.75, 0.25): True,
    (0.75, 0.5): True,
    (0.75, 0.75): True,
}


def test_condition_on_three_by_three_sweep_grid() -> None:
    """Test the hand-evaluated table over {0.25, 0.5, 0.75}²; (0.5, 0.5) sits on the frontier."""
    table = {(a, b): condition_global(a, b) for a in SWEEP_ORDERS for b in SWEEP_ORDERS}
    assert table == SWEEP_TRUTH


def test_threshold_is_continuous_at_one_half() -> None:
    """Test that both branches meet at α = 1/2."""
    assert regularity_threshold(0.5) == pytest.approx(0.5)
    assert regularity_threshold(0.5 + 1e-12) == pytest.approx(0.5)


@pytest.mark.parametrize(("alpha", "beta"), [(0.0, 0.5), (0.5, 1.0), (-0.1, 0.5)])
def test_condition_rejects_orders_outside_unit_interval(alpha: float, beta: float) -> None:
    """Test input validation of the classifier."""
    with pytest.raises(ValueError, match=r"\(0, 1\)"):
        condition_global(alpha, beta)


def test_rho_exponent_values() -> None:
    """Test the exponent on both branches."""
    assert rho_exponent(0.4, 0.8) == pytest.approx(1.6 / 0.44, abs=1e-12)
    assert rho_exponent(0.4, 0.8) == pytest.approx(3.6364, abs=1e-4)
    assert rho_exponent(0.75, 0.75) == pytest.approx(3.0, abs=1e-12)
    assert rho_exponent(0.5, 0.75) == pytest.approx(3.0)
    assert rho_exponent(0.75, 0.5) == pytest.approx(3.0)
    assert rho_exponent(0.9, 0.9) == pytest.approx(max(1.8 / 0.8, 1.8 / (2.8 * 0.9 - 1.0)))


def test_rho_exponent_undefined_outside_regime() -> None:
    """Test that ρ is refused where the condition fails."""
    with pytest.raises(ValueError, match="undefined"):
        rho_exponent(0.25, 0.5)
    assert rho_or_none(0.25, 0.5) is None


@given(st.floats(0.01, 0.99), st.floats(0.01, 0.99))
def test_rho_defined_exactly_inside_regime(alpha: float, beta: float) -> None:
    """Test that ρ exists iff the condition holds, and then exceeds one."""
    rho = rho_or_none(alpha, beta)
    assert (rho is not None) == condition_global(alpha, beta)
    if rho is not None:
        assert rho > 1.0


def test_corollary_window() -> None:
    """Test the regularizing index window."""
    assert corollary_window(0.6, 0.8) == pytest.approx((0.8, 2.0))
    with pytest.raises(ValueError, match="1/2"):
        corollary_window(0.4, 0.8)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**16), st.floats(0.0, 4.0))
def test_homogeneous_norm_dominated_by_inhomogeneous(seed: int, s: float) -> None:
    """Test ‖θ‖_{Ḣ^s} ≤ ‖θ‖_{H^s}, the mean included."""
    F = hermitian_gaussian(GRID, band_mask(GRID, 10), np.random.default_rng(seed))
    F = F.with_coeffs(F.coeffs + np.where(GRID.kmag == 0, 50.0, 0.0))
    assert sobolev_norm(F, s, homogeneous=True) <= sobolev_norm(F, s, homogeneous=False)
