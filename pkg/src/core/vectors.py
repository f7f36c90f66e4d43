"""Vector and point-set values, and the decreasing arrangement."""

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from src.core.errors import DimensionError, NumericError


def as_vector(x: Sequence[float] | np.ndarray, name: str = "x") -> np.ndarray:
    """
    Validate and convert input to a 1-D float64 vector.

    Args:
        x: Input coordinates
        name: Name used in error messages

    Returns:
        float64 numpy array (copy)

    Raises:
        DimensionError: If x is empty or not one-dimensional
        NumericError: If x has NaN or Inf entries
    """
    arr = np.array(x, dtype=np.float64)
    if arr.ndim != 1:
        raise DimensionError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise DimensionError(f"{name} must be nonempty")
    if not np.all(np.isfinite(arr)):
        raise NumericError(f"{name} has non-finite entries")
    return arr


@dataclass(frozen=True)
class PointSet:
    """Finite set E of p points in R^N, stored row-wise as a p x N array."""

    points: np.ndarray

    def __post_init__(self):
        arr = np.array(self.points, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise DimensionError(f"PointSet needs a nonempty p x N array, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise NumericError("PointSet has non-finite entries")
        arr.setflags(write=False)
        object.__setattr__(self, "points", arr)

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[float]]) -> "PointSet":
        rows = [as_vector(v) for v in vectors]
        if not rows:
            raise DimensionError("PointSet needs at least one point")
        dims = {len(r) for r in rows}
        if len(dims) != 1:
            raise DimensionError(f"All points must share one dimension, got {sorted(dims)}")
        return cls(np.vstack(rows))

    @property
    def p(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.p

    def __iter__(self):
        return iter(self.points)


@dataclass(frozen=True)
class Permutation:
    """Bijection on {0, ..., N-1}; y = x[order]."""

    order: np.ndarray

    def __post_init__(self):
        order = np.asarray(self.order, dtype=np.int64)
        if order.ndim != 1 or not np.array_equal(np.sort(order), np.arange(order.size)):
            raise DimensionError("Permutation must contain each index exactly once")
        order.setflags(write=False)
        object.__setattr__(self, "order", order)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(n))

    def one_based(self) -> list[int]:
        """Index sequence in 1-based numbering."""
        return [int(i) + 1 for i in self.order]

    def apply(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(x)[self.order]

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self.order)
        inv[self.order] = np.arange(self.order.size)
        return Permutation(inv)


def decreasing_arrangement(x: Sequence[float] | np.ndarray) -> tuple[np.ndarray, Permutation]:
    """
    Reorder x so that |y_i| >= |y_j| for i < j.

    Ties keep their original order (stable sort).

    Args:
        x: Input vector

    Returns:
        Tuple of (rearranged vector, permutation with y = x[perm.order])
    """
    vec = as_vector(x)
    order = np.argsort(-np.abs(vec), kind="stable")
    return vec[order], Permutation(order)


def is_decreasing(x: np.ndarray) -> bool:
    """Check |x_i| >= |x_{i+1}| for all i."""
    mags = np.abs(np.asarray(x, dtype=np.float64))
    return bool(np.all(mags[:-1] >= mags[1:]))
