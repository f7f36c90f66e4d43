"""Minimal-m threshold search and epsilon-scaling fits."""

from typing import Sequence
import logging

import numpy as np
from scipy.stats import linregress

from src.core.errors import ParameterError, SearchRangeError
from src.harness.trials import failure_rate
from src.models.schemas import MinimalMResult, ProbeRecord, ScalingFit, TrialConfig
from config.settings import get_settings

settings = get_settings()
logger = logging.getLogger(__name__)


def _admissible(m: int, construction: str) -> int:
    """Round m up to a value the construction accepts."""
    if construction == "fourier" and m % 2:
        return m + 1
    return m


def minimal_m(
    template: TrialConfig,
    target_success: float,
    m_range: tuple[int, int],
    trials: int,
    root_seed: int | None = None,
    jobs: int | None = None,
    resolution: int | None = None,
) -> MinimalMResult:
    """
    Smallest m whose empirical success rate reaches the target.

    Doubles m from the bottom of the range until a probe passes, then
    bisects the last failing/passing bracket down to `resolution`. Every
    probe reuses the same root seed.

    Args:
        template: Trial config; its m is replaced by the probes
        target_success: Required success rate, usually 1 - eta
        m_range: Inclusive (lower, upper) search range
        trials: Trials per probe
        root_seed: Root of the per-trial seeds
        jobs: Worker processes
        resolution: Final bracket width (default bracket / settings.MIN_M_RESOLUTION_DIVISOR)

    Returns:
        MinimalMResult with the probe history

    Raises:
        SearchRangeError: If no m in the range reaches the target
    """
    lower, upper = m_range
    if lower < 1 or lower > upper:
        raise ParameterError(f"Invalid m range: {m_range}")
    if not 0.0 <= target_success <= 1.0:
        raise ParameterError(f"target_success must lie in [0, 1], got {target_success}")

    construction = template.construction
    lower = _admissible(lower, construction)
    if target_success <= 0.0:
        return MinimalMResult(m=lower, target_success=target_success)

    history: list[ProbeRecord] = []

    def probe(m: int) -> bool:
        point = failure_rate(template.model_copy(update={"m": m}), trials, root_seed, jobs)
        success = 1.0 - point.rate
        record = ProbeRecord(m=m, success_rate=success, trials=trials, passed=success >= target_success)
        history.append(record)
        logger.info("Probe m=%d: success %.4f (%s)", m, success, "pass" if record.passed else "fail")
        return record.passed

    failing = None
    m = lower
    while True:
        if m > upper:
            raise SearchRangeError(
                f"No m in [{m_range[0]}, {upper}] reaches success rate {target_success}", history
            )
        if probe(m):
            break
        failing = m
        if m == upper:
            raise SearchRangeError(
                f"No m in [{m_range[0]}, {upper}] reaches success rate {target_success}", history
            )
        m = min(2 * m, upper)
        m = _admissible(m, construction)

    passing = m
    if failing is None:
        return MinimalMResult(m=passing, target_success=target_success, history=history)

    if resolution is None:
        resolution = max(1, (passing - failing) // settings.MIN_M_RESOLUTION_DIVISOR)
    while passing - failing > resolution:
        mid = _admissible((failing + passing) // 2, construction)
        if mid >= passing or mid <= failing:
            break
        if probe(mid):
            passing = mid
        else:
            failing = mid
    return MinimalMResult(m=passing, target_success=target_success, history=history)


def scaling_exponent(epsilons: Sequence[float], m_values: Sequence[float]) -> ScalingFit:
    """
    Least-squares slope of ln(m*) against ln(epsilon).

    Args:
        epsilons: Distortion levels, at least 3 distinct values
        m_values: Measured minimal m per level

    Returns:
        ScalingFit; a slope near -2 matches the epsilon^-2 law

    Raises:
        ParameterError: On fewer than 3 points, non-positive values or repeated epsilons only
    """
    eps = np.asarray(epsilons, dtype=np.float64)
    ms = np.asarray(m_values, dtype=np.float64)
    if eps.shape != ms.shape or eps.ndim != 1:
        raise ParameterError("epsilons and m_values must be equal-length sequences")
    if eps.size < 3 or np.unique(eps).size < 3:
        raise ParameterError("Need at least 3 distinct epsilon values")
    if np.any(eps <= 0.0) or np.any(ms <= 0.0):
        raise ParameterError("epsilons and m_values must be positive")

    fit = linregress(np.log(eps), np.log(ms))
    return ScalingFit(
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        stderr=float(fit.stderr),
        points=int(eps.size),
    )
