"""Single runs, (α, β) sweeps and the restart experiment."""

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import polars as pl
from loguru import logger

from src.diagnostics.certificate import (
    MIN_CERTIFICATE_ROWS,
    Verdict,
    certify_boundedness,
    observed_h1_constant,
    observed_hs_constant,
)
from src.diagnostics.norms import sobolev_norm
from src.diagnostics.regime import condition_global, corollary_window, rho_or_none
from src.harness.config import RunConfig, SweepSpec
from src.harness.persistence import SWEEP_SCHEMA, write_json, write_norm_report, write_restart_comparison, write_sweep
from src.solver.config import FixedDt
from src.solver.initial_data import build_initial_data
from src.solver.integrator import Trajectory, fixed_step_count, run
from src.spectral.fields import SpectralField
from src.spectral.snapshot import write_snapshot

SNAP_TOLERANCE = 1e-12


@dataclass(frozen=True)
class RunRecord:
    """
    Summary of one run, linking the regularity condition to the observed behaviour.

    Attributes
    ----------
    config : RunConfig
        Echo of every solver and diagnostic parameter.
    verdict : Verdict or None
        Boundedness verdict; ``None`` when the report is too short to certify.
    report_path : Path or None
        Where the NormReport CSV was written.
    wall_time : float
        Seconds spent integrating.
    condition_11 : bool
        Whether ``(α, β)`` is strictly inside the regular regime.
    rho : float or None
        Velocity exponent of the ``Ḣ¹`` estimate; present exactly when ``condition_11`` holds.
    classical_qg : bool
        Whether the parameters reduce to the isotropic dissipative QG equation.
    aborted : bool
        Whether the run stopped on blow-up.
    abort_reason : str or None
        Message of the blow-up.
    h1_constant : float or None
        Observed constant of the ``Ḣ¹`` energy inequality, when ``rho`` is defined.
    hs_constant : float or None
        Observed constant of the ``H^s`` energy inequality, for runs with at least two samples.
    """

    config: RunConfig
    verdict: Verdict | None
    report_path: Path | None
    wall_time: float
    condition_11: bool
    rho: float | None
    classical_qg: bool
    aborted: bool = False
    abort_reason: str | None = None
    h1_constant: float | None = None
    hs_constant: float | None = None

    def summary(self) -> str:
        params = self.config.params
        head = f"alpha={params.alpha:g} beta={params.beta:g} condition_11={self.condition_11}"
        if self.verdict is None:
            status = "aborted" if self.aborted else f"not certified (fewer than {MIN_CERTIFICATE_ROWS} samples)"
        else:
            status = (
                f"bounded={self.verdict.bounded} sup={self.verdict.sup_norm:.6g} at t={self.verdict.sup_time:g} "
                f"tail_slope={self.verdict.growth_rate_tail:.3g}"
            )
            if self.verdict.reason:
                status += f" ({self.verdict.reason})"
        return f"{head} {status}"


def initial_state(config: RunConfig) -> SpectralField:
    return build_initial_data(config.grid, config.initial, seed=config.solver.seed)


def _verdict(trajectory: Trajectory, config: RunConfig) -> Verdict | None:
    if len(trajectory.report) < MIN_CERTIFICATE_ROWS:
        if trajectory.aborted:
            return None
        logger.warning(f"Report has {len(trajectory.report)} rows; boundedness is not certified")
        return None
    return certify_boundedness(trajectory.report, tail_tolerance=config.tail_tolerance)


def _record(config: RunConfig, trajectory: Trajectory, wall_time: float, report_path: Path | None) -> RunRecord:
    params = config.params
    rho = rho_or_none(params.alpha, params.beta)
    h1_constant = hs_constant = None
    if not trajectory.aborted and len(trajectory.report) > 1:
        hs_constant = observed_hs_constant(trajectory.report)
        if rho is not None:
            h1_constant = observed_h1_constant(trajectory.report, rho)
    return RunRecord(
        config=config,
        verdict=_verdict(trajectory, config),
        report_path=report_path,
        wall_time=wall_time,
        condition_11=condition_global(params.alpha, params.beta),
        rho=rho,
        classical_qg=params.is_classical_qg,
        aborted=trajectory.aborted,
        abort_reason=trajectory.abort_reason,
        h1_constant=h1_constant,
        hs_constant=hs_constant,
    )


def _integrate(config: RunConfig, theta0: SpectralField | None = None) -> tuple[Trajectory, float]:
    theta0 = initial_state(config) if theta0 is None else theta0
    start = time.perf_counter()
    trajectory = run(theta0, config.solver, diagnostics=config.diagnostics)
    return trajectory, time.perf_counter() - start


def run_experiment(config: RunConfig, out_dir: str | Path | None = None, name: str = "run") -> RunRecord:
    """
    Integrate one configuration and persist its artifacts.

    Writes ``<name>_report.csv``, ``<name>_record.json`` and the final state ``<name>_final.aqgf``
    under ``out_dir`` when one is given.

    Returns
    -------
    RunRecord
        Blow-ups are reported in the record, not raised.
    """
    trajectory, wall_time = _integrate(config)
    report_path = None
    if out_dir is not None:
        out_dir = Path(out_dir)
        report_path = write_norm_report(trajectory.report, out_dir / f"{name}_report.csv")
        write_snapshot(out_dir / f"{name}_final.aqgf", trajectory.final)
    record = _record(config, trajectory, wall_time, report_path)
    if out_dir is not None:
        write_json(record, Path(out_dir) / f"{name}_record.json")
    logger.info(f"Run finished in {wall_time:.2f}s: {record.summary()}")
    return record


def _sweep_point(config: RunConfig) -> dict:
    """Run one grid point; failures are recorded in the row."""
    params = config.params
    row = {
        "alpha": params.alpha,
        "beta": params.beta,
        "condition_11": condition_global(params.alpha, params.beta),
        "rho": rho_or_none(params.alpha, params.beta),
        "bounded": False,
        "sup_hs": None,
        "tail_slope": None,
        "aborted": True,
    }
    try:
        trajectory, _ = _integrate(config)
        verdict = _verdict(trajectory, config)
    except Exception:
        logger.exception(f"Sweep point alpha={params.alpha:g} beta={params.beta:g} failed")
        return row
    hs = trajectory.report.column("hs")
    finite = hs[np.isfinite(hs)]
    row |= {
        "bounded": verdict is not None and verdict.bounded,
        "sup_hs": float(finite.max()) if finite.size else None,
        "tail_slope": verdict.growth_rate_tail if verdict is not None and not trajectory.aborted else None,
        "aborted": trajectory.aborted,
    }
    return row


def sweep(spec: SweepSpec, out_dir: str | Path | None = None) -> pl.DataFrame:
    """
    Run every ``(α, β)`` grid point with identical initial data and horizon.

    Rows come back in row-major grid order regardless of ``spec.parallelism``, and the table holds no
    timing information, so the CSV is byte-identical across parallelism settings.

    Returns
    -------
    pl.DataFrame
        Columns ``alpha, beta, condition_11, rho, bounded, sup_hs, tail_slope, aborted``.
    """
    configs = [spec.point(alpha, beta) for alpha, beta in spec.points()]
    logger.info(f"Sweeping {len(configs)} points with parallelism {spec.parallelism}")
    if spec.parallelism == 1:
        rows = [_sweep_point(config) for config in configs]
    else:
        with ProcessPoolExecutor(max_workers=spec.parallelism) as executor:
            rows = list(executor.map(_sweep_point, configs))
    frame = pl.DataFrame(rows, schema=SWEEP_SCHEMA)
    if out_dir is not None:
        write_sweep(frame, Path(out_dir) / "sweep.csv")
    return frame


def _check_regularizing_data(config: RunConfig) -> None:
    lo, hi = corollary_window(config.params.alpha, config.params.beta)
    if config.initial.kind != "power_law":
        raise ValueError(f"the restart experiment needs power_law initial data, got {config.initial.kind}")
    if not lo < config.initial.s < hi:
        raise ValueError(f"initial_s={config.initial.s:g} lies outside the regularizing window ({lo:g}, {hi:g})")
    logger.info(f"Power-law data with s={config.initial.s:g} inside the regularizing window ({lo:g}, {hi:g})")


def restart(config: RunConfig, out_dir: str | Path | None = None) -> tuple[RunRecord, RunRecord, pl.DataFrame]:
    """
    Compare a run with its restart from the state sampled at ``t0``.

    The data must be low-regularity ``power_law`` data whose index lies in ``corollary_window(α, β)``,
    which needs ``α, β > 1/2``. ``t0`` snaps to the nearest diagnostic sample time, with a warning when
    it moves. The restarted run uses the same effective step, so on the overlap both runs execute the
    same arithmetic.

    Returns
    -------
    tuple[RunRecord, RunRecord, pl.DataFrame]
        Records of the original and restarted runs, and a table ``t, t_shifted, discrepancy_l2``.

    Raises
    ------
    ValueError
        On a non-fixed step policy, ``t_end = 0``, ``t0`` outside ``[0, t_end)``, orders outside
        ``(1/2, 1)``, or data that are not power-law data inside the window.
    """
    policy = config.solver.dt_policy
    if not isinstance(policy, FixedDt):
        raise ValueError("the restart experiment needs a fixed dt policy")
    if config.solver.t_end <= 0:
        raise ValueError("the restart experiment needs t_end > 0")
    t0 = config.t0 if config.t0 is not None else 0.5 * config.solver.t_end
    if not 0.0 <= t0 < config.solver.t_end:
        raise ValueError(f"t0 must lie in [0, t_end), got {t0}")
    _check_regularizing_data(config)

    _, dt_eff = fixed_step_count(config.solver.t_end, policy.dt)
    stride = config.solver.diag_stride
    solver = config.solver.model_copy(update={"snapshot_stride": stride, "dt_policy": FixedDt(dt=dt_eff)})
    original_config = config.model_copy(update={"solver": solver})
    original, original_time = _integrate(original_config)
    if original.aborted:
        raise ValueError(f"original run aborted before the restart could be compared: {original.abort_reason}")

    times = np.array([t for t, _ in original.snapshots])
    index = int(np.argmin(np.abs(times - t0)))
    if index == len(times) - 1 and len(times) > 1:
        index -= 1
    snapped = float(times[index])
    if not math.isclose(snapped, t0, rel_tol=0.0, abs_tol=SNAP_TOLERANCE * max(1.0, config.solver.t_end)):
        logger.warning(f"t0={t0:g} is not a sample time; snapped to t0={snapped:g}")

    restart_solver = solver.model_copy(update={"t_end": config.solver.t_end - snapped})
    restart_config = original_config.model_copy(update={"solver": restart_solver, "t0": None})
    restarted, restart_time = _integrate(restart_config, theta0=original.snapshots[index][1])

    overlap = original.snapshots[index:]
    rows = [
        {
            "t": t,
            "t_shifted": t_shifted,
            "discrepancy_l2": sobolev_norm(theta - gamma, 0.0, homogeneous=False),
        }
        for (t, theta), (t_shifted, gamma) in zip(overlap, restarted.snapshots, strict=False)
    ]
    if len(overlap) != len(restarted.snapshots):
        logger.warning(f"overlap has {len(overlap)} samples, restarted run {len(restarted.snapshots)}")
    comparison = pl.DataFrame(
        rows, schema={"t": pl.Float64, "t_shifted": pl.Float64, "discrepancy_l2": pl.Float64}
    )
    logger.info(f"Restart at t0={snapped:g}: max overlap discrepancy {comparison['discrepancy_l2'].max():.3g}")

    report_paths: list[Path | None] = [None, None]
    if out_dir is not None:
        out_dir = Path(out_dir)
        report_paths = [
            write_norm_report(original.report, out_dir / "original_report.csv"),
            write_norm_report(restarted.report, out_dir / "restarted_report.csv"),
        ]
        write_snapshot(out_dir / "restart_state.aqgf", original.snapshots[index][1])
        write_restart_comparison(comparison, out_dir / "restart_comparison.csv")
    records = (
        _record(original_config, original, original_time, report_paths[0]),
        _record(restart_config, restarted, restart_time, report_paths[1]),
    )
    if out_dir is not None:
        write_json({"original": records[0], "restarted": records[1], "t0": snapped}, out_dir / "restart_records.json")
    return records[0], records[1], comparison
