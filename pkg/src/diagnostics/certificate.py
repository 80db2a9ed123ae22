"""
Empirical checks run over a finished NormReport.

A finite horizon cannot certify behaviour as ``t → ∞``: the boundedness verdict is a heuristic
based on the tail growth rate and on the decay of the dissipation budget increments.
"""

from dataclasses import dataclass

import numpy as np
from loguru import logger
from scipy.integrate import cumulative_simpson, cumulative_trapezoid
from scipy.stats import linregress

from src.diagnostics.report import NormReport

MIN_CERTIFICATE_ROWS = 16
DEFAULT_TAIL_TOLERANCE = 1e-3
BUDGET_ABSOLUTE_FLOOR = 1e-6
HEURISTIC_NOTE = "finite-horizon heuristic: a bounded tail up to t_end does not prove a global bound"


@dataclass(frozen=True)
class Verdict:
    """
    Boundedness classification of one run.

    Attributes
    ----------
    bounded : bool
        Tail slope within tolerance, both budgets settling, and no abort.
    sup_norm : float
        Supremum over samples of ``‖θ‖²_{H^s} + μ·cumdiss1 + ν·cumdiss2``.
    sup_time : float
        First sample time at which the supremum is reached.
    growth_rate_tail : float
        Least-squares slope of ``log ‖θ‖_{H^s}`` over the second half of the run.
    budgets_decaying : bool
        Whether both budgets' last-quarter increments are at most half their second-quarter ones.
    reason : str or None
        Why the run is not bounded, if it is not.
    """

    bounded: bool
    sup_norm: float
    sup_time: float
    growth_rate_tail: float
    budgets_decaying: bool
    reason: str | None = None
    note: str = HEURISTIC_NOTE


def _tail_slope(t: np.ndarray, hs: np.ndarray) -> float:
    half = t >= 0.5 * t[-1]
    positive = half & (hs > 0)
    if np.count_nonzero(positive) < 2:
        return 0.0
    return float(linregress(t[positive], np.log(hs[positive])).slope)


def _budget_settles(t: np.ndarray, budget: np.ndarray) -> bool:
    quarters = np.interp(np.array([0.25, 0.5, 0.75, 1.0]) * t[-1], t, budget)
    second = quarters[1] - quarters[0]
    last = quarters[3] - quarters[2]
    return bool(last <= 0.5 * second or abs(last) <= BUDGET_ABSOLUTE_FLOOR)


def certify_boundedness(
    report: NormReport, s: float | None = None, tail_tolerance: float = DEFAULT_TAIL_TOLERANCE
) -> Verdict:
    """
    Classify a run as uniformly bounded in ``H^s`` or not.

    Parameters
    ----------
    report : NormReport
        Report covering ``[0, t_end]`` with at least 16 rows.
    s : float, optional
        Sobolev index the verdict refers to; must match the report's monitored index.
    tail_tolerance : float, optional
        Largest admissible tail log-slope per unit time.

    Returns
    -------
    Verdict
        Aborted runs are never bounded.

    Raises
    ------
    ValueError
        If the report is too short or was monitored at a different index.
    """
    if s is not None and s != report.s:
        raise ValueError(f"report monitors s={report.s}, verdict requested for s={s}")
    if len(report) < MIN_CERTIFICATE_ROWS:
        raise ValueError(f"certificate needs at least {MIN_CERTIFICATE_ROWS} rows, report has {len(report)}")

    t = report.column("t")
    hs = report.column("hs")
    cum1, cum2 = report.column("cumdiss1"), report.column("cumdiss2")
    combination = hs**2 + report.params.mu * cum1 + report.params.nu * cum2

    if report.aborted:
        finite = np.isfinite(combination)
        sup_index = int(np.argmax(np.where(finite, combination, -np.inf))) if finite.any() else 0
        reason = f"run aborted ({report.rows[-1]['flag']}) at t={report.rows[-1]['t']:.6g}"
        logger.warning(f"Boundedness certificate refused: {reason}")
        return Verdict(
            bounded=False,
            sup_norm=float(combination[sup_index]) if finite.any() else float("nan"),
            sup_time=float(t[sup_index]),
            growth_rate_tail=float("nan"),
            budgets_decaying=False,
            reason=reason,
        )

    sup_index = int(np.argmax(combination))
    slope = _tail_slope(t, hs)
    decaying = _budget_settles(t, cum1) and _budget_settles(t, cum2)
    reasons = []
    if slope > tail_tolerance:
        reasons.append(f"tail log-slope {slope:.3g} exceeds {tail_tolerance:g}")
    if not decaying:
        reasons.append("dissipation budgets still growing in the last quarter")
    return Verdict(
        bounded=not reasons,
        sup_norm=float(combination[sup_index]),
        sup_time=float(t[sup_index]),
        growth_rate_tail=slope,
        budgets_decaying=decaying,
        reason="; ".join(reasons) or None,
    )


def _simpson_budget(t: np.ndarray, integrand: np.ndarray) -> np.ndarray:
    if len(t) < 3:
        return cumulative_trapezoid(integrand, t, initial=0.0)
    return cumulative_simpson(integrand, x=t, initial=0.0)


def energy_identity_residual(report: NormReport) -> np.ndarray:
    """
    Pointwise residual ``|½‖θ(t)‖²_{L²} - ½‖θ⁰‖²_{L²} + μ∫‖|∂1|^α θ‖²_{L²} + ν∫‖|∂2|^β θ‖²_{L²}|``.

    Time integrals use Simpson's rule on the sampled dissipation rates; the persisted budgets stay trapezoid.
    Only meaningful when the rates are ``L²`` norms, so the report must monitor ``s = 0``.
    """
    if report.s != 0:
        raise ValueError(f"energy identity needs a report monitored at s=0, got s={report.s}")
    t = report.column("t")
    energy = 0.5 * report.column("l2") ** 2
    dissipated = report.params.mu * _simpson_budget(t, report.column("a1_hs") ** 2)
    dissipated += report.params.nu * _simpson_budget(t, report.column("a2_hs") ** 2)
    return np.abs(energy - energy[0] + dissipated)


def max_principle_violations(report: NormReport, linf_tolerance: float = 1e-3, rtol: float = 1e-6) -> dict[str, int]:
    """
    Count departures from the maximum principle.

    Returns
    -------
    dict[str, int]
        ``linf``: samples with ``‖θ‖_∞ > (1 + linf_tolerance)·‖θ⁰‖_∞``; ``l2`` and ``l4``: sample
        intervals over which the norm grew by more than ``rtol`` relative.
    """
    linf = report.column("linf")
    counts = {"linf": int(np.count_nonzero(linf > (1.0 + linf_tolerance) * linf[0]))}
    for name in ("l2", "l4"):
        values = report.column(name)
        counts[name] = int(np.count_nonzero(values[1:] > values[:-1] * (1.0 + rtol)))
    return counts


def observed_h1_constant(report: NormReport, rho: float) -> float:
    """
    Smallest ``C`` for which the sampled ``Ḣ¹`` energy inequality holds.

    ``‖θ(t)‖²_{Ḣ¹} + ∫(μ‖|∂1|^α θ‖²_{Ḣ¹} + ν‖|∂2|^β θ‖²_{Ḣ¹}) ≤ ‖θ⁰‖²_{Ḣ¹} + C ∫(1 + ‖u‖_∞^ρ)‖θ‖²_{Ḣ¹}``,
    with time integrals by the trapezoid rule. Reported only; no value is asserted anywhere.
    """
    t = report.column("t")
    h1_sq = report.column("hdot1") ** 2
    dissipation = report.params.mu * report.column("a1_hdot1") ** 2 + report.params.nu * report.column("a2_hdot1") ** 2
    lhs = h1_sq + cumulative_trapezoid(dissipation, t, initial=0.0)
    forcing = cumulative_trapezoid((1.0 + report.column("u_linf") ** rho) * h1_sq, t, initial=0.0)
    excess = np.maximum(lhs - h1_sq[0], 0.0)
    valid = forcing > 0
    if not valid.any():
        return 0.0
    return float(np.max(excess[valid] / forcing[valid]))


def observed_hs_constant(report: NormReport) -> float:
    """
    Smallest ``C`` for which the sampled ``H^s`` energy inequality holds.

    ``‖θ(t)‖²_{H^s} + μ·cumdiss1 + ν·cumdiss2 ≤ ‖θ⁰‖²_{H^s} + C ∫(1 + ‖∇u‖_∞ + ‖∇θ‖_∞)‖θ‖²_{H^s}``, with
    ``‖∇u‖_∞`` the largest Frobenius norm of the velocity Jacobian. Reported only.
    """
    t = report.column("t")
    hs_sq = report.column("hs") ** 2
    lhs = hs_sq + report.params.mu * report.column("cumdiss1") + report.params.nu * report.column("cumdiss2")
    rate = 1.0 + report.column("grad_u_linf") + report.column("grad_theta_linf")
    forcing = cumulative_trapezoid(rate * hs_sq, t, initial=0.0)
    excess = np.maximum(lhs - hs_sq[0], 0.0)
    valid = forcing > 0
    if not valid.any():
        return 0.0
    return float(np.max(excess[valid] / forcing[valid]))
