"""Walsh-Hadamard transform in Sylvester ordering."""

import numpy as np
from scipy.linalg import hadamard

from src.core.errors import DimensionError, NumericError, ParameterError


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def _as_columns(x: np.ndarray | list) -> np.ndarray:
    arr = np.array(x, dtype=np.float64)
    if arr.ndim not in (1, 2) or arr.shape[0] == 0:
        raise DimensionError(f"Expected a nonempty vector or N x k array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NumericError("Transform input has non-finite entries")
    if not is_power_of_two(arr.shape[0]):
        raise ParameterError(f"Hadamard transform needs a power-of-2 length, got {arr.shape[0]}")
    return arr


def fwht(x: np.ndarray | list) -> np.ndarray:
    """
    Unnormalized fast Walsh-Hadamard transform H x, O(N log N).

    Works along axis 0, so an N x k array transforms each column.

    Args:
        x: Vector of power-of-2 length N, or N x k array

    Returns:
        H x with H the N x N Sylvester-Hadamard matrix
    """
    y = _as_columns(x)
    n = y.shape[0]
    tail = y.shape[1:]
    h = 1
    while h < n:
        # butterfly: (a, b) -> (a + b, a - b) on pairs h apart
        y = y.reshape((-1, 2, h) + tail)
        a = y[:, 0]
        b = y[:, 1]
        y = np.stack((a + b, a - b), axis=1)
        h *= 2
    return y.reshape((n,) + tail)


def naive_hadamard_multiply(x: np.ndarray | list) -> np.ndarray:
    """Explicit O(N^2) product with the Sylvester-Hadamard matrix."""
    y = _as_columns(x)
    return hadamard(y.shape[0], dtype=np.float64) @ y
