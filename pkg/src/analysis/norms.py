"""Operator norm of dense matrices."""

from typing import Literal
import logging

import numpy as np
from scipy.linalg import svdvals

from src.core.errors import DimensionError, NumericError, ParameterError
from src.core.seeding import derive_rng
from config.settings import get_settings

settings = get_settings()
logger = logging.getLogger(__name__)


def _power_iteration(M: np.ndarray, tol: float, max_iter: int) -> float:
    n = M.shape[1]
    v = derive_rng(0, "power-start").standard_normal(n)
    v /= np.linalg.norm(v)
    lam_old = 0.0
    for it in range(max_iter):
        w = M.T @ (M @ v)
        lam = float(v @ w)  # Rayleigh quotient of M*M
        w_norm = np.linalg.norm(w)
        if w_norm == 0.0:
            return 0.0
        v = w / w_norm
        if abs(lam - lam_old) <= tol * lam:
            logger.debug("Power iteration converged after %d iterations", it + 1)
            return float(np.sqrt(lam))
        lam_old = lam
    raise NumericError(f"Power iteration did not converge within {max_iter} iterations")


def spectral_norm(
    M: np.ndarray,
    tol: float | None = None,
    method: Literal["auto", "svd", "power"] = "auto",
    max_iter: int | None = None,
) -> float:
    """
    Largest singular value of M.

    Uses a full SVD when min(M.shape) <= settings.SPECTRAL_SVD_MAX_DIM and
    power iteration on M*M from a fixed start vector otherwise.

    Args:
        M: Dense matrix
        tol: Relative stopping tolerance for power iteration
        method: "auto", "svd" or "power"
        max_iter: Power iteration cap (default settings.POWER_ITER_MAX)

    Returns:
        ||M||

    Raises:
        NumericError: On non-finite entries or non-convergence
    """
    if tol is None:
        tol = settings.SPECTRAL_TOL
    if max_iter is None:
        max_iter = settings.POWER_ITER_MAX

    arr = np.asarray(M, dtype=np.float64)
    if arr.ndim != 2:
        raise DimensionError(f"Expected a matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NumericError("Matrix has non-finite entries")
    if arr.size == 0:
        return 0.0

    if method == "auto":
        method = "svd" if min(arr.shape) <= settings.SPECTRAL_SVD_MAX_DIM else "power"
    if method == "svd":
        return float(svdvals(arr)[0])
    if method == "power":
        return _power_iteration(arr, tol, max_iter)
    raise ParameterError(f"Unknown spectral norm method: {method}")
