"""Unit tests for solver configuration, linear propagators and initial data."""

import math

import numpy as np
import pytest
from pydantic import TypeAdapter, ValidationError

from src.diagnostics.norms import sobolev_norm
from src.solver.config import CflDt, DtPolicy, FixedDt, SolverConfig
from src.solver.initial_data import InitialDataConfig, build_initial_data
from src.solver.propagator import build_propagator, dissipation_rate
from src.spectral.fields import to_physical
from src.spectral.grid import build_grid
from src.spectral.params import AnisotropyParams

GRID = build_grid(32, 32)
HALF = AnisotropyParams(alpha=0.5, beta=0.5, mu=1.0, nu=1.0)


def test_dt_policy_is_discriminated() -> None:
    """Test parsing both step policies from plain mappings."""
    adapter = TypeAdapter(DtPolicy)
    assert adapter.validate_python({"kind": "fixed", "dt": 0.01}) == FixedDt(dt=0.01)
    assert isinstance(adapter.validate_python({"kind": "cfl", "c_cfl": 0.5, "dt_max": 0.1}), CflDt)
    with pytest.raises(ValidationError):
        adapter.validate_python({"kind": "adaptive", "dt": 0.01})


@pytest.mark.parametrize(
    "kwargs",
    [
        {"t_end": -1.0},
        {"diag_stride": 0},
        {"snapshot_stride": 0},
        {"workers": 0},
    ],
)
def test_solver_config_validation(kwargs: dict) -> None:
    """Test the accepted ranges of the solver settings."""
    settings = {"params": HALF, "t_end": 1.0, "dt_policy": FixedDt(dt=0.1)} | kwargs
    with pytest.raises(ValidationError):
        SolverConfig(**settings)


def test_cfl_number_bounded_by_one() -> None:
    """Test that the CFL number lies in (0, 1]."""
    with pytest.raises(ValidationError):
        CflDt(c_cfl=1.5, dt_max=0.1)


def test_propagator_factors() -> None:
    """Test e^{-dt} on ξ = (1, 0), 1 on ξ = 0 and the half-step factors."""
    propagator = build_propagator(GRID, HALF, 1.0)
    assert propagator.factors[1, 0] == pytest.approx(math.exp(-1.0))
    assert propagator.factors[0, 0] == 1.0
    np.testing.assert_allclose(propagator.half_factors**2, propagator.factors)
    assert np.all((propagator.factors > 0.0) & (propagator.factors <= 1.0))


def test_inviscid_propagator_is_identity() -> None:
    """Test that μ = ν = 0 switches the dissipation off."""
    inviscid = AnisotropyParams(alpha=0.3, beta=0.7, mu=0.0, nu=0.0)
    np.testing.assert_array_equal(build_propagator(GRID, inviscid, 0.5).factors, 1.0)


def test_dissipation_rate_is_anisotropic() -> None:
    """Test μ|ξ1|^{2α} + ν|ξ2|^{2β} on the two axes."""
    params = AnisotropyParams(alpha=0.25, beta=0.75, mu=2.0, nu=3.0)
    rate = dissipation_rate(GRID, params)
    assert rate[4, 0] == pytest.approx(2.0 * 4.0**0.5)
    assert rate[0, 4] == pytest.approx(3.0 * 4.0**1.5)
    assert not rate.flags.writeable


@pytest.mark.parametrize("dt", [0.0, -0.1, math.inf])
def test_propagator_rejects_bad_steps(dt: float) -> None:
    """Test that the step must be positive and finite."""
    with pytest.raises(ValueError, match="dt"):
        build_propagator(GRID, HALF, dt)


def test_benchmark_data() -> None:
    """Test θ⁰ = sin x1 sin x2 + cos x2."""
    theta0 = build_initial_data(GRID, InitialDataConfig(kind="benchmark"))
    x1, x2 = GRID.points
    np.testing.assert_allclose(to_physical(theta0).values, np.sin(x1) * np.sin(x2) + np.cos(x2), atol=1e-13)


def test_single_mode_scaled_to_box() -> None:
    """Test that cos completes one period on a 4π box."""
    grid = build_grid(16, 16, l1=4.0 * math.pi)
    theta0 = build_initial_data(grid, InitialDataConfig(kind="single_mode", amplitude=2.0))
    np.testing.assert_allclose(to_physical(theta0).values, 2.0 * np.cos(0.5 * grid.points[0]), atol=1e-13)


def test_random_data_normalized_in_h2() -> None:
    """Test the H² normalization and reproducibility of random data."""
    config = InitialDataConfig(kind="random", kmax=5, amplitude=3.0)
    theta0 = build_initial_data(GRID, config, seed=12)
    assert sobolev_norm(theta0, 2.0, homogeneous=False) == pytest.approx(3.0)
    assert theta0.is_hermitian()
    np.testing.assert_array_equal(theta0.coeffs, build_initial_data(GRID, config, seed=12).coeffs)
    assert not np.array_equal(theta0.coeffs, build_initial_data(GRID, config, seed=13).coeffs)


def test_random_band_limit_checked() -> None:
    """Test that the band must fit inside the dealiased range."""
    with pytest.raises(ValueError, match="kmax"):
        build_initial_data(GRID, InitialDataConfig(kind="random", kmax=11))


def test_power_law_data_normalized_in_l2() -> None:
    """Test unit L² power-law data with their spectral decay."""
    theta0 = build_initial_data(GRID, InitialDataConfig(kind="power_law", s=1.5), seed=4)
    assert sobolev_norm(theta0, 0.0, homogeneous=False) == pytest.approx(1.0)
    assert theta0.is_hermitian()
    assert np.all(theta0.coeffs[~GRID.dealias_mask] == 0.0)


def test_zero_data() -> None:
    """Test the zero initial state."""
    assert np.all(build_initial_data(GRID, InitialDataConfig(kind="zero")).coeffs == 0.0)


def test_unknown_kind_refused() -> None:
    """Test validation of the data kind."""
    with pytest.raises(ValidationError):
        InitialDataConfig(kind="vortex")
