"""
Numerical checks of the functional inequalities behind the regularity estimates.

Interpolation and the elementary logarithm bound hold exactly in the discrete setting and are
checked as such. The Riesz ``L^p`` bound and the logarithmic Sobolev bound only assert the existence
of a constant: those checks report observed ratios, and the suites judge their stability.
"""

import math

import numpy as np
import scipy.fft

from src.diagnostics.norms import aniso_sobolev_norm, lp_norm, sobolev_norm
from src.oracle.report import OracleReport, format_params
from src.oracle.sampler import FieldSampler, sample_field
from src.spectral.fields import SpectralField, to_physical
from src.spectral.operators import apply_isotropic_fractional, velocity_coeffs

STABILITY_GROWTH = 1.2
PLANCHEREL_TOLERANCE = 1e-10


def check_interpolation(
    f: SpectralField, axis: int, s: float, s1: float, s2: float, z: float, homogeneous: bool
) -> float:
    """
    Ratio of the two sides of the directional interpolation inequality.

    ``‖|∂_i|^{z·s1 + (1-z)·s2} f‖ ≤ ‖|∂_i|^{s1} f‖^z · ‖|∂_i|^{s2} f‖^{1-z}``, all norms in ``H^s``
    (or ``Ḣ^s`` when ``homogeneous``). Hölder's inequality on the discrete spectrum makes this exact.

    Parameters
    ----------
    f : SpectralField
        Field to test.
    axis : {1, 2}
        Derivative direction.
    s : float
        Outer Sobolev index, shared by all three norms.
    s1, s2 : float
        Non-negative derivative orders.
    z : float
        Interpolation weight in ``[0, 1]``.
    homogeneous : bool
        Selects ``Ḣ^s`` instead of ``H^s``.

    Returns
    -------
    float
        ``LHS / RHS``, at most ``1`` up to rounding; ``0`` when the right-hand side vanishes.
    """
    if not 0.0 <= z <= 1.0:
        raise ValueError(f"z must lie in [0, 1], got {z}")
    if s1 < 0 or s2 < 0:
        raise ValueError(f"derivative orders must be non-negative, got s1={s1}, s2={s2}")
    lhs = aniso_sobolev_norm(f, axis, z * s1 + (1.0 - z) * s2, s, homogeneous)
    rhs = aniso_sobolev_norm(f, axis, s1, s, homogeneous) ** z
    rhs *= aniso_sobolev_norm(f, axis, s2, s, homogeneous) ** (1.0 - z)
    if rhs == 0.0:
        return 0.0
    return lhs / rhs


def vector_lp_norm(u1: np.ndarray, u2: np.ndarray, cell_area: float, p: float) -> float:
    """Quadrature ``L^p`` norm of the pointwise Euclidean length of ``(u1, u2)``; any ``p > 1``."""
    magnitude = np.hypot(u1, u2)
    peak = float(magnitude.max())
    if math.isinf(p) or peak == 0.0:
        return peak
    return peak * float(np.sum((magnitude / peak) ** p) * cell_area) ** (1.0 / p)


def riesz_lp_ratio(theta: SpectralField, p: float) -> float:
    """``‖R^⊥θ‖_{L^p} / ‖θ‖_{L^p}``; 0 for the zero field."""
    grid = theta.grid
    u1_hat, u2_hat = velocity_coeffs(grid, theta.coeffs)
    u1, u2 = scipy.fft.ifft2(u1_hat).real, scipy.fft.ifft2(u2_hat).real
    values = to_physical(theta).values
    denominator = vector_lp_norm(values, np.zeros_like(values), grid.cell_area, p)
    if denominator == 0.0:
        return 0.0
    return vector_lp_norm(u1, u2, grid.cell_area, p) / denominator


def estimate_riesz_lp_constant(p: float, sampler: FieldSampler, n_samples: int) -> OracleReport:
    """
    Largest observed ``‖R^⊥θ‖_{L^p} / ‖θ‖_{L^p}`` over ``n_samples`` random fields.

    Sample ``i`` is drawn with seed ``sampler.seed + i``. The estimate counts as stable when the
    maximum over all samples is at most ``1.2`` times the maximum over the first half. At ``p = 2``
    every ratio above ``1 + 1e-10`` is a violation, since the Riesz symbols have modulus at most one.

    Parameters
    ----------
    p : float
        Finite exponent above 1.
    sampler : FieldSampler
        Field recipe; its seed is the first sample seed.
    n_samples : int
        Number of fields, at least 2.

    Returns
    -------
    OracleReport
        ``max_ratio`` is the constant estimate; ``worst_case_seed`` reproduces it.

    Raises
    ------
    ValueError
        If ``p`` is not a finite number above 1 or ``n_samples < 2``.
    """
    if not (math.isfinite(p) and p > 1.0):
        raise ValueError(f"p must be finite and greater than 1, got {p}")
    if n_samples < 2:
        raise ValueError(f"n_samples must be at least 2, got {n_samples}")
    ratios = np.array([riesz_lp_ratio(sample_field(sampler.with_seed(seed)), p) for seed in sampler.seeds(n_samples)])
    worst = int(np.argmax(ratios))
    violations = int(not np.all(np.isfinite(ratios)))
    if ratios.max() > STABILITY_GROWTH * ratios[: n_samples // 2].max():
        violations += 1
    if p == 2.0:
        violations += int(np.count_nonzero(ratios > 1.0 + PLANCHEREL_TOLERANCE))
    return OracleReport(
        lemma="lemma2",
        params=format_params(p=float(p), n=sampler.grid.n1, kmax=sampler.kmax),
        samples=n_samples,
        max_ratio=float(ratios[worst]),
        violations=violations,
        worst_case_seed=sampler.seed + worst,
    )


def check_log_sobolev(f: SpectralField, sigma: float) -> tuple[float, float, float]:
    """
    Compare ``‖R^⊥f‖_∞`` with ``1 + ‖f‖_{L²} + ‖f‖_∞·ln(e + ‖|∇|^σ f‖_{L²})``.

    Parameters
    ----------
    f : SpectralField
        Field to test.
    sigma : float
        Smoothness index of the logarithm, strictly above 1.

    Returns
    -------
    tuple[float, float, float]
        ``(lhs, rhs_shape, lhs / rhs_shape)``.
    """
    if not (math.isfinite(sigma) and sigma > 1.0):
        raise ValueError(f"sigma must be greater than 1, got {sigma}")
    grid = f.grid
    u1_hat, u2_hat = velocity_coeffs(grid, f.coeffs)
    lhs = vector_lp_norm(scipy.fft.ifft2(u1_hat).real, scipy.fft.ifft2(u2_hat).real, grid.cell_area, math.inf)
    physical = to_physical(f)
    smooth = sobolev_norm(apply_isotropic_fractional(f, sigma), 0.0, homogeneous=False)
    rhs_shape = 1.0 + lp_norm(physical, 2) + lp_norm(physical, math.inf) * math.log(math.e + smooth)
    return lhs, rhs_shape, lhs / rhs_shape


def sharp_ln_constant(alpha: float) -> float:
    """Smallest ``C`` with ``ln x ≤ C·x^α`` on ``[1, ∞)``: ``1/(α·e)``, attained at ``x = e^{1/α}``."""
    return 1.0 / (alpha * math.e)


def check_ln_bound(alpha: float, n_points: int = 20000) -> float:
    """
    Largest value of ``ln x - x^α/(α·e)`` over a log-spaced grid of ``[1, 1e12]``.

    The grid also contains the equality point ``e^{1/α}`` when it falls inside the range.

    Returns
    -------
    float
        Non-positive up to rounding.
    """
    if not (math.isfinite(alpha) and alpha > 0):
        raise ValueError(f"alpha must be positive, got {alpha}")
    x = np.logspace(0.0, 12.0, n_points)
    peak = math.exp(1.0 / alpha)
    if peak <= 1e12:
        x = np.append(x, peak)
    return float(np.max(np.log(x) - sharp_ln_constant(alpha) * x**alpha))
