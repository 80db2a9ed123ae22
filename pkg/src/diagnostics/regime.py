"""Parameter regimes of the anisotropic dissipation: the global regularity condition and its exponents."""

FRONTIER_TOLERANCE = 1e-4


def _check_unit_interval(alpha: float, beta: float) -> None:
    for name, value in (("alpha", alpha), ("beta", beta)):
        if not (0.0 < value < 1.0):
            raise ValueError(f"{name} must lie in (0, 1), got {value}")


def regularity_threshold(alpha: float) -> float:
    """Smallest ``β`` (exclusive) for which ``(α, β)`` is in the regular regime."""
    if alpha <= 0.5:
        return 1.0 / (2.0 * alpha + 1.0)
    return (1.0 - alpha) / (2.0 * alpha)


def condition_global(alpha: float, beta: float) -> bool:
    """
    Evaluate the global regularity condition.

    ``β > 1/(2α+1)`` when ``0 < α ≤ 1/2`` and ``β > (1-α)/(2α)`` when ``1/2 < α < 1``.

    Parameters
    ----------
    alpha, beta : float
        Dissipation orders in ``(0, 1)``.

    Returns
    -------
    bool
        ``True`` strictly inside the regime. Points within ``FRONTIER_TOLERANCE`` of the threshold
        count as boundary points and return ``False``.

    Raises
    ------
    ValueError
        If either order lies outside ``(0, 1)``.

    Examples
    --------
    >>> condition_global(0.5, 0.6)
    True
    >>> condition_global(0.75, 0.1667)
    False
    """
    _check_unit_interval(alpha, beta)
    return beta > regularity_threshold(alpha) + FRONTIER_TOLERANCE


def rho_exponent(alpha: float, beta: float) -> float:
    """
    Exponent ``ρ`` of the velocity maximum norm in the ``Ḣ¹`` energy estimate.

    ``2β/((2α+1)β - 1)`` for ``α ≤ 1/2``, otherwise ``max{2α/(2α-1), 2α/((2β+1)α - 1)}``.

    Raises
    ------
    ValueError
        If ``(α, β)`` does not satisfy ``condition_global``.
    """
    if not condition_global(alpha, beta):
        raise ValueError(f"exponent undefined outside regularity regime: alpha={alpha}, beta={beta}")
    if alpha <= 0.5:
        return 2.0 * beta / ((2.0 * alpha + 1.0) * beta - 1.0)
    return max(2.0 * alpha / (2.0 * alpha - 1.0), 2.0 * alpha / ((2.0 * beta + 1.0) * alpha - 1.0))


def corollary_window(alpha: float, beta: float) -> tuple[float, float]:
    """
    Sobolev indices ``(max{2-2α, 2-2β}, 2)`` from which data are instantly regularized.

    Only defined for ``α, β ∈ (1/2, 1)``.
    """
    _check_unit_interval(alpha, beta)
    if alpha <= 0.5 or beta <= 0.5:
        raise ValueError(f"regularizing window needs alpha, beta in (1/2, 1), got alpha={alpha}, beta={beta}")
    return max(2.0 - 2.0 * alpha, 2.0 - 2.0 * beta), 2.0


def rho_or_none(alpha: float, beta: float) -> float | None:
    """``rho_exponent`` inside the regime, ``None`` outside it."""
    return rho_exponent(alpha, beta) if condition_global(alpha, beta) else None
