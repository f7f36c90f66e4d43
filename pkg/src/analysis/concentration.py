"""Hoeffding and Rademacher-chaos tail bounds with Monte-Carlo checks."""

from typing import Literal
import logging
import math

import numpy as np

from src.analysis.norms import spectral_norm
from src.core.errors import DimensionError, ParameterError
from src.core.seeding import derive_rng
from src.core.vectors import as_vector
from src.models.schemas import TailCheckResult
from config.settings import get_settings

settings = get_settings()
logger = logging.getLogger(__name__)

TailKind = Literal["hoeffding", "chaos"]


def _check_t(t: float) -> None:
    if not t > 0.0:
        raise ParameterError(f"t must be positive, got {t}")


def hoeffding_bound(x, t: float) -> float:
    """
    2 exp(-t^2 / (2 ||x||^2)) for P(|<xi, x>| >= t).

    Args:
        x: Nonzero coefficient vector
        t: Threshold

    Returns:
        Bound value (may exceed 1)
    """
    _check_t(t)
    vec = as_vector(x)
    sq = float(vec @ vec)
    if sq == 0.0:
        raise ParameterError("Hoeffding bound needs a nonzero vector")
    return 2.0 * math.exp(-t ** 2 / (2.0 * sq))


def _chaos_matrix(X) -> np.ndarray:
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.size == 0:
        raise DimensionError(f"Chaos matrix must be square and nonempty, got shape {arr.shape}")
    if np.any(np.diag(arr) != 0.0):
        raise ParameterError("Chaos matrix must have a zero diagonal")
    return arr


def chaos_bound(X, t: float) -> float:
    """
    2 exp(-(1/64) min((96/65) t / ||X||, t^2 / ||X||_F^2)) for P(|xi* X xi| >= t).

    Args:
        X: Square matrix with zero diagonal
        t: Threshold

    Returns:
        Bound value; 0 for the zero matrix
    """
    _check_t(t)
    arr = _chaos_matrix(X)
    op_norm = spectral_norm(arr)
    fro_sq = float(np.sum(arr ** 2))
    if op_norm == 0.0:
        return 0.0
    exponent = min((96.0 / 65.0) * t / op_norm, t ** 2 / fro_sq)
    return 2.0 * math.exp(-exponent / 64.0)


def tail_check(
    kind: TailKind,
    instance,
    t: float,
    trials: int,
    seed: int = 0,
) -> TailCheckResult:
    """
    Compare the empirical tail frequency of a Rademacher sum or chaos with its bound.

    Args:
        kind: "hoeffding" (instance is a vector) or "chaos" (instance is a matrix)
        instance: Coefficient vector or zero-diagonal matrix
        t: Threshold
        trials: Rademacher draws, at least settings.MIN_TAIL_TRIALS
        seed: Seed of the draws

    Returns:
        TailCheckResult; passes iff freq <= min(1, bound) + 3/sqrt(trials)
    """
    if trials < settings.MIN_TAIL_TRIALS:
        raise ParameterError(f"trials must be >= {settings.MIN_TAIL_TRIALS}, got {trials}")
    if kind == "hoeffding":
        coeffs = as_vector(instance)
        bound = hoeffding_bound(coeffs, t)
        n = coeffs.size
    elif kind == "chaos":
        coeffs = _chaos_matrix(instance)
        bound = chaos_bound(coeffs, t)
        n = coeffs.shape[0]
    else:
        raise ParameterError(f"Unknown tail kind: {kind}")

    rng = derive_rng(seed, "tail")
    hits = 0
    remaining = trials
    while remaining > 0:
        chunk = min(remaining, settings.TAIL_CHUNK)
        xi = rng.integers(0, 2, size=(chunk, n)) * 2.0 - 1.0
        if kind == "hoeffding":
            stat = xi @ coeffs
        else:
            stat = np.sum((xi @ coeffs) * xi, axis=1)
        hits += int(np.count_nonzero(np.abs(stat) >= t))
        remaining -= chunk

    freq = hits / trials
    slack = settings.TAIL_SLACK_SIGMAS / math.sqrt(trials)
    passed = freq <= min(1.0, bound) + slack
    logger.debug("%s tail at t=%.4g: freq %.5g vs bound %.5g", kind, t, freq, bound)
    return TailCheckResult(
        kind=kind, t=t, trials=trials, empirical_freq=freq, bound=bound, slack=slack, passed=passed
    )
