"""
Integrating-factor Runge-Kutta time stepping.

The stiff linear dissipation is integrated exactly through ``LinearPropagator`` factors and the
advection term explicitly with the classical four-stage scheme (Lawson form). When the advection
term vanishes identically the step reduces to the exact exponential decay.
"""

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.fft
from loguru import logger

from src.diagnostics.norms import sobolev_weight, weighted_norm
from src.diagnostics.report import FLAG_BLOWUP, DiagnosticsConfig, NormReport
from src.solver.config import CflDt, FixedDt, SolverConfig
from src.solver.propagator import LinearPropagator, build_propagator
from src.spectral.fields import PhysicalField, SpectralField
from src.spectral.grid import Grid
from src.spectral.operators import advection_coeffs, advection_term, velocity_coeffs
from src.spectral.params import AnisotropyParams

CFL_EPSILON = 1e-12
BLOWUP_FACTOR = 1e6
FIXED_STEP_SLACK = 1e-9


class BlowUpError(RuntimeError):
    """Raised when the state becomes non-finite or its ``H¹`` norm explodes."""

    def __init__(self, time: float, reason: str) -> None:
        self.time = time
        self.reason = reason
        super().__init__(f"blow-up or instability at t={time:.6g}: {reason}")


@dataclass
class Trajectory:
    """
    Output of ``run``.

    Attributes
    ----------
    times : list[float]
        Diagnostic sample times, strictly increasing from 0.
    report : NormReport
        One row per sample time, plus a flagged row if the run aborted.
    final : SpectralField
        Last valid state.
    snapshots : list[tuple[float, SpectralField]]
        States kept every ``snapshot_stride`` steps (empty when no stride is configured).
    aborted : bool
        Whether the run stopped early.
    abort_reason : str, optional
        Message of the ``BlowUpError`` that stopped the run.
    """

    times: list[float]
    report: NormReport
    final: SpectralField
    snapshots: list[tuple[float, SpectralField]] = field(default_factory=list)
    aborted: bool = False
    abort_reason: str | None = None

    @property
    def t_final(self) -> float:
        return self.times[-1]


def rhs_nonlinear(theta: SpectralField) -> SpectralField:
    """Explicit part of the equation, ``-u_θ·∇θ`` (dealiased)."""
    return -advection_term(theta)


def _ifrk4(grid: Grid, coeffs: np.ndarray, dt: float, propagator: LinearPropagator, workers: int) -> np.ndarray:
    E, E2 = propagator.factors, propagator.half_factors

    def nonlinear(c: np.ndarray) -> np.ndarray:
        return -advection_coeffs(grid, c, workers=workers)

    k1 = nonlinear(coeffs)
    k2 = nonlinear(E2 * (coeffs + 0.5 * dt * k1))
    k3 = nonlinear(E2 * coeffs + 0.5 * dt * k2)
    k4 = nonlinear(E * coeffs + dt * E2 * k3)
    return E * coeffs + (dt / 6.0) * (E * k1 + 2.0 * E2 * (k2 + k3) + k4)


def step_ifrk4(
    theta: SpectralField,
    dt: float,
    params: AnisotropyParams,
    propagator: LinearPropagator | None = None,
    t: float = 0.0,
    workers: int = 1,
) -> SpectralField:
    """
    Advance ``θ' = -u·∇θ - Lθ`` by one step.

    Parameters
    ----------
    theta : SpectralField
        Current state, Hermitian.
    dt : float
        Step size.
    params : AnisotropyParams
        Dissipation parameters defining ``L``.
    propagator : LinearPropagator, optional
        Precomputed factors for ``dt``; built on the fly when omitted.
    t : float, optional
        Time of ``theta``; only used in the blow-up message.
    workers : int, optional
        Threads handed to ``scipy.fft``.

    Returns
    -------
    SpectralField
        State at ``t + dt``. Fourth-order accurate; exact when the advection term vanishes.

    Raises
    ------
    BlowUpError
        If the new state contains NaN or Inf.
    """
    if propagator is None:
        propagator = build_propagator(theta.grid, params, dt)
    elif not math.isclose(propagator.dt, dt, rel_tol=1e-14):
        raise ValueError(f"propagator built for dt={propagator.dt}, step requested with dt={dt}")
    new = _ifrk4(theta.grid, theta.coeffs, dt, propagator, workers)
    if not np.all(np.isfinite(new)):
        raise BlowUpError(t + dt, "non-finite coefficients")
    return theta.with_coeffs(new)


def adapt_dt(u1: PhysicalField, u2: PhysicalField, grid: Grid, policy: FixedDt | CflDt) -> float:
    """
    Step size for the next step.

    Returns
    -------
    float
        ``policy.dt`` for a fixed policy, otherwise
        ``min(dt_max, c_cfl · min(Δx1, Δx2) / max(‖u‖_∞, 1e-12))``.
    """
    if isinstance(policy, FixedDt):
        return policy.dt
    speed = float(np.sqrt(np.max(u1.values**2 + u2.values**2)))
    return min(policy.dt_max, policy.c_cfl * min(grid.dx1, grid.dx2) / max(speed, CFL_EPSILON))


def _cfl_dt(grid: Grid, coeffs: np.ndarray, policy: CflDt, workers: int) -> float:
    u1_hat, u2_hat = velocity_coeffs(grid, coeffs)
    u1 = PhysicalField(grid=grid, values=scipy.fft.ifft2(u1_hat, workers=workers).real)
    u2 = PhysicalField(grid=grid, values=scipy.fft.ifft2(u2_hat, workers=workers).real)
    return adapt_dt(u1, u2, grid, policy)


def fixed_step_count(t_end: float, dt: float) -> tuple[int, float]:
    """Number of steps and effective step so that the steps land exactly on ``t_end``."""
    n_steps = max(1, math.ceil(t_end / dt - FIXED_STEP_SLACK))
    return n_steps, t_end / n_steps


def run(theta0: SpectralField, config: SolverConfig, diagnostics: DiagnosticsConfig | None = None) -> Trajectory:
    """
    Integrate from ``theta0`` to ``config.t_end``.

    Diagnostics are sampled at ``t = 0``, every ``diag_stride`` steps and at the final step. A blow-up
    does not raise: the trajectory comes back with ``aborted`` set and a flagged last report row.

    Parameters
    ----------
    theta0 : SpectralField
        Initial state, Hermitian.
    config : SolverConfig
        Parameters, horizon and step policy.
    diagnostics : DiagnosticsConfig, optional
        Monitored norms.

    Returns
    -------
    Trajectory
        Deterministic given ``theta0`` and ``config``.
    """
    if not theta0.is_hermitian(rtol=1e-10):
        raise ValueError(f"initial data is not Hermitian (defect {theta0.hermitian_defect():.3g})")

    grid, params, policy = theta0.grid, config.params, config.dt_policy
    report = NormReport(params=params, config=diagnostics)
    report.record_row(theta0, 0.0)
    trajectory = Trajectory(times=[0.0], report=report, final=theta0)
    if config.snapshot_stride:
        trajectory.snapshots.append((0.0, theta0))
    if config.t_end == 0.0:
        return trajectory

    h1_weight = sobolev_weight(grid, 1.0, True)
    h1_limit = BLOWUP_FACTOR * max(weighted_norm(grid, np.abs(theta0.coeffs) ** 2, h1_weight), np.finfo(float).tiny)

    if isinstance(policy, FixedDt):
        n_steps, dt_fixed = fixed_step_count(config.t_end, policy.dt)
        fixed_propagator = build_propagator(grid, params, dt_fixed)
        logger.info(f"Running {n_steps} steps of dt={dt_fixed:.6g} to t={config.t_end:g} on {grid.n1}x{grid.n2}")
    else:
        n_steps, dt_fixed, fixed_propagator = None, None, None
        logger.info(f"Running CFL-limited steps (c={policy.c_cfl}) to t={config.t_end:g} on {grid.n1}x{grid.n2}")

    coeffs = theta0.coeffs
    t, step = 0.0, 0
    while True:
        if fixed_propagator is not None:
            dt, propagator = dt_fixed, fixed_propagator
        else:
            dt = min(_cfl_dt(grid, coeffs, policy, config.workers), config.t_end - t)
            propagator = build_propagator(grid, params, dt)
        try:
            new = _ifrk4(grid, coeffs, dt, propagator, config.workers)
            if not np.all(np.isfinite(new)):
                raise BlowUpError(t + dt, "non-finite coefficients")
            if weighted_norm(grid, np.abs(new) ** 2, h1_weight) > h1_limit:
                raise BlowUpError(t + dt, f"H1 norm exceeded {BLOWUP_FACTOR:g} times its initial value")
        except BlowUpError as err:
            logger.warning(f"Run aborted: {err}; last valid time t={t:.6g}")
            flagged = theta0.with_coeffs(new if np.all(np.isfinite(new)) else np.full_like(new, np.nan))
            report.record_row(flagged, err.time, flag=FLAG_BLOWUP)
            trajectory.aborted = True
            trajectory.abort_reason = str(err)
            trajectory.final = theta0.with_coeffs(coeffs)
            return trajectory

        coeffs = new
        step += 1
        t = step * dt_fixed if dt_fixed is not None else t + dt
        last = step == n_steps if n_steps is not None else t >= config.t_end * (1.0 - 1e-12)
        if last:
            t = config.t_end

        state = None
        if step % config.diag_stride == 0 or last:
            state = theta0.with_coeffs(coeffs)
            report.record_row(state, t)
            trajectory.times.append(t)
        if config.snapshot_stride and (step % config.snapshot_stride == 0 or last):
            trajectory.snapshots.append((t, state if state is not None else theta0.with_coeffs(coeffs)))
        if last:
            trajectory.final = state if state is not None else theta0.with_coeffs(coeffs)
            logger.info(f"Run finished at t={t:g} after {step} steps")
            return trajectory
