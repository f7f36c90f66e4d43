"""Discrete Fourier transform and circular convolution."""

from typing import Literal

import numpy as np
from scipy.linalg import circulant

from src.core.errors import DimensionError, NumericError, ParameterError
from src.transforms.hadamard import is_power_of_two

Method = Literal["auto", "fast", "naive"]


def _as_array(x, dtype) -> np.ndarray:
    arr = np.array(x, dtype=dtype)
    if arr.ndim not in (1, 2) or arr.shape[0] == 0:
        raise DimensionError(f"Expected a nonempty vector or N x k array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NumericError("Transform input has non-finite entries")
    return arr


def _dft_matrix(n: int) -> np.ndarray:
    idx = np.arange(n)
    # reduce f*l mod n first so large products keep full precision
    return np.exp(-2j * np.pi * (np.outer(idx, idx) % n) / n)


def _resolve(method: Method, n: int) -> str:
    if method == "auto":
        return "fast" if is_power_of_two(n) else "naive"
    if method == "fast" and not is_power_of_two(n):
        raise ParameterError(f"The fast DFT path needs a power-of-2 length, got {n}")
    if method not in ("fast", "naive"):
        raise ParameterError(f"Unknown DFT method: {method}")
    return method


def dft(x, method: Method = "auto") -> np.ndarray:
    """
    Unnormalized DFT: X_f = sum_l x_l exp(-2 pi i f l / N), along axis 0.

    Args:
        x: Real or complex vector (or N x k array)
        method: "fast" (power-of-2 N only), "naive" O(N^2), or "auto"

    Returns:
        complex128 array of the same shape
    """
    arr = _as_array(x, np.complex128)
    n = arr.shape[0]
    if _resolve(method, n) == "fast":
        return np.fft.fft(arr, axis=0)
    return _dft_matrix(n) @ arr


def idft(X, method: Method = "auto") -> np.ndarray:
    """Inverse DFT, defined as conj(dft(conj(X))) / N."""
    arr = _as_array(X, np.complex128)
    return np.conj(dft(np.conj(arr), method=method)) / arr.shape[0]


def circular_convolve(c, x, method: Method = "auto") -> np.ndarray:
    """
    Circular convolution out_j = sum_l c[(j - l) mod N] x_l.

    The fast path multiplies in the Fourier domain; `x` may be an N x k
    array, in which case every column is convolved with c.

    Args:
        c: Kernel of length N
        x: Vector of length N or N x k array
        method: DFT path selection, see `dft`

    Returns:
        Real convolution result
    """
    kernel = _as_array(c, np.float64)
    signal = _as_array(x, np.float64)
    if kernel.ndim != 1:
        raise DimensionError("Convolution kernel must be one-dimensional")
    if kernel.shape[0] != signal.shape[0]:
        raise DimensionError(
            f"Length mismatch: kernel has {kernel.shape[0]}, signal has {signal.shape[0]}"
        )
    C = dft(kernel, method=method)
    X = dft(signal, method=method)
    if signal.ndim == 2:
        C = C[:, None]
    return np.real(idft(C * X, method=method))


def direct_circular_convolve(c, x) -> np.ndarray:
    """Direct O(N^2) sum, the oracle for `circular_convolve`."""
    kernel = _as_array(c, np.float64)
    signal = _as_array(x, np.float64)
    if kernel.ndim != 1 or kernel.shape[0] != signal.shape[0]:
        raise DimensionError("Kernel and signal must have equal length")
    return circulant(kernel) @ signal
