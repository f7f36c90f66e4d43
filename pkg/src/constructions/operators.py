"""Embedding operators Phi and their sign-randomized composition Phi D_xi."""

from abc import ABC, abstractmethod
from enum import Enum
from typing import Literal
import logging

import numpy as np

from src.core.errors import DimensionError, ParameterError, ResourceLimitError
from src.core.signs import SignPattern
from src.core.vectors import PointSet, as_vector
from src.transforms.fourier import circular_convolve, dft
from src.transforms.hadamard import fwht
from config.settings import get_settings

settings = get_settings()
logger = logging.getLogger(__name__)

BatchMode = Literal["direct", "pairwise"]


class OperatorKind(str, Enum):
    """Operator families."""
    SUBGAUSSIAN_GAUSSIAN = "subgaussian-gaussian"
    SUBGAUSSIAN_RADEMACHER = "subgaussian-rademacher"
    PARTIAL_HADAMARD = "partial-hadamard"
    PARTIAL_FOURIER = "partial-fourier"
    PARTIAL_CIRCULANT = "partial-circulant"
    EXPLICIT = "explicit"


class EmbeddingOperator(ABC):
    """Seeded, possibly implicit m x N linear map."""

    kind: OperatorKind

    def __init__(self, m: int, N: int, seed: int | None, scale: float):
        if m < 1 or N < 1:
            raise ParameterError(f"Operator dimensions must be positive, got m={m}, N={N}")
        self.m = int(m)
        self.N = int(N)
        self.seed = seed
        self.scale = float(scale)

    @abstractmethod
    def _apply_columns(self, X: np.ndarray) -> np.ndarray:
        """Map an N x k array to an m x k array."""

    def apply_columns(self, X: np.ndarray) -> np.ndarray:
        """
        Apply the operator to every column of X.

        Args:
            X: N x k array

        Returns:
            m x k array
        """
        arr = np.asarray(X, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != self.N:
            raise DimensionError(f"Expected an array with {self.N} rows, got shape {arr.shape}")
        return self._apply_columns(arr)

    def apply(self, x) -> np.ndarray:
        """Image of a single vector of length N."""
        vec = as_vector(x)
        if vec.size != self.N:
            raise DimensionError(f"Vector length {vec.size} does not match operator N={self.N}")
        return self._apply_columns(vec[:, None])[:, 0]

    def __repr__(self) -> str:
        return f"<{type(self).__name__}(kind={self.kind.value}, m={self.m}, N={self.N}, seed={self.seed})>"


class DenseOperator(EmbeddingOperator):
    """Explicit matrix; `matrix` already includes the scale factor."""

    def __init__(self, kind: OperatorKind, matrix: np.ndarray, seed: int | None = None, scale: float = 1.0):
        matrix = np.array(matrix, dtype=np.float64)
        if matrix.ndim != 2:
            raise DimensionError(f"Dense operator needs a 2-D matrix, got shape {matrix.shape}")
        super().__init__(matrix.shape[0], matrix.shape[1], seed, scale)
        matrix.setflags(write=False)
        self.kind = kind
        self.matrix = matrix

    def _apply_columns(self, X: np.ndarray) -> np.ndarray:
        return self.matrix @ X


class PartialHadamardOperator(EmbeddingOperator):
    """Sampled rows of the Sylvester-Hadamard matrix, scaled by 1/sqrt(m)."""

    kind = OperatorKind.PARTIAL_HADAMARD

    def __init__(self, rows: np.ndarray, N: int, seed: int | None, replace: bool = True):
        rows = np.asarray(rows, dtype=np.int64)
        super().__init__(rows.size, N, seed, 1.0 / np.sqrt(rows.size))
        rows.setflags(write=False)
        self.rows = rows
        self.replace = replace

    def _apply_columns(self, X: np.ndarray) -> np.ndarray:
        return self.scale * fwht(X)[self.rows]


class PartialFourierOperator(EmbeddingOperator):
    """
    Sampled DFT rows split into (cos, -sin) row pairs, scaled by sqrt(2/m).

    Output row 2i is the real part and row 2i+1 the imaginary part of the
    DFT coefficient at frequency `frequencies[i]`.
    """

    kind = OperatorKind.PARTIAL_FOURIER

    def __init__(self, frequencies: np.ndarray, N: int, seed: int | None, replace: bool = True):
        frequencies = np.asarray(frequencies, dtype=np.int64)
        m = 2 * frequencies.size
        super().__init__(m, N, seed, np.sqrt(2.0 / m))
        frequencies.setflags(write=False)
        self.frequencies = frequencies
        self.replace = replace

    def _apply_columns(self, X: np.ndarray) -> np.ndarray:
        coeffs = dft(X)[self.frequencies]
        out = np.empty((self.m, X.shape[1]), dtype=np.float64)
        out[0::2] = coeffs.real
        out[1::2] = coeffs.imag
        return self.scale * out


class PartialCirculantOperator(EmbeddingOperator):
    """
    First m rows of the circulant whose first row is `generator`.

    Row j is the generator rotated right by j positions, so
    (Phi x)_j = sum_l g[(l - j) mod N] x_l, a convolution with the kernel
    c[k] = g[-k mod N].
    """

    kind = OperatorKind.PARTIAL_CIRCULANT

    def __init__(self, generator: np.ndarray, m: int, seed: int | None, variant: str = "gaussian"):
        generator = np.asarray(generator, dtype=np.float64)
        super().__init__(m, generator.size, seed, 1.0 / np.sqrt(m))
        if m > generator.size:
            raise ParameterError(f"Partial circulant needs m <= N, got m={m}, N={generator.size}")
        generator.setflags(write=False)
        self.generator = generator
        self.variant = variant
        self._kernel = np.roll(generator[::-1], 1)

    def _apply_columns(self, X: np.ndarray) -> np.ndarray:
        return self.scale * circular_convolve(self._kernel, X)[: self.m]


class SignedOperator:
    """Phi D_xi: the base operator composed with a random sign diagonal."""

    def __init__(self, base: EmbeddingOperator, signs: SignPattern):
        if len(signs) != base.N:
            raise DimensionError(f"Sign pattern length {len(signs)} does not match N={base.N}")
        self.base = base
        self.signs = signs

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def N(self) -> int:
        return self.base.N

    @property
    def kind(self) -> OperatorKind:
        return self.base.kind

    def apply_columns(self, X: np.ndarray) -> np.ndarray:
        arr = np.asarray(X, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != self.N:
            raise DimensionError(f"Expected an array with {self.N} rows, got shape {arr.shape}")
        return self.base.apply_columns(self.signs.signs[:, None] * arr)

    def apply(self, x) -> np.ndarray:
        vec = as_vector(x)
        if vec.size != self.N:
            raise DimensionError(f"Vector length {vec.size} does not match operator N={self.N}")
        return self.base.apply(self.signs.signs * vec)

    def __repr__(self) -> str:
        return f"<SignedOperator(base={self.base!r}, sign_seed={self.signs.seed})>"


AnyOperator = EmbeddingOperator | SignedOperator


def apply(op: AnyOperator, x) -> np.ndarray:
    """Embed a single vector: Phi x or Phi D_xi x."""
    return op.apply(x)


def pairwise_differences(E: PointSet) -> np.ndarray:
    """
    All unordered nonzero differences x_i - x_j, i < j, as rows.

    Raises:
        ParameterError: If E has fewer than two points
    """
    if E.p < 2:
        raise ParameterError(f"Pairwise mode needs at least 2 points, got {E.p}")
    i, j = np.triu_indices(E.p, k=1)
    diffs = E.points[i] - E.points[j]
    nonzero = np.any(diffs != 0.0, axis=1)
    return diffs[nonzero]


def apply_batch(op: AnyOperator, E: PointSet, mode: BatchMode = "direct") -> PointSet:
    """
    Embed a point set, either point by point or through its pairwise differences.

    Args:
        op: Operator
        E: Point set of dimension op.N
        mode: "direct" or "pairwise"

    Returns:
        PointSet of embedded vectors (p rows, or one row per nonzero difference)
    """
    if E.dim != op.N:
        raise DimensionError(f"Point dimension {E.dim} does not match operator N={op.N}")
    if mode == "direct":
        rows = E.points
    elif mode == "pairwise":
        rows = pairwise_differences(E)
        if rows.shape[0] == 0:
            raise ParameterError("All pairwise differences are zero")
    else:
        raise ParameterError(f"Unknown batch mode: {mode}")
    return PointSet(op.apply_columns(rows.T).T)


def densify(op: AnyOperator, cap: int | None = None) -> np.ndarray:
    """
    Explicit m x N matrix of the operator.

    Args:
        op: Operator
        cap: Maximum number of entries (default settings.DENSIFY_CAP)

    Returns:
        Dense matrix whose product with x equals apply(op, x)

    Raises:
        ResourceLimitError: If m * N exceeds the cap
    """
    if cap is None:
        cap = settings.DENSIFY_CAP
    if op.m * op.N > cap:
        raise ResourceLimitError(f"Densifying {op.m} x {op.N} exceeds the cap of {cap} entries")
    if isinstance(op, DenseOperator):
        return np.array(op.matrix)
    if isinstance(op, SignedOperator) and isinstance(op.base, DenseOperator):
        return op.base.matrix * op.signs.signs[None, :]
    # identity in column chunks of at most cap entries each
    width = max(1, cap // max(op.m, op.N))
    chunks = [
        op.apply_columns(np.eye(op.N, min(width, op.N - start), k=-start))
        for start in range(0, op.N, width)
    ]
    return np.hstack(chunks)
