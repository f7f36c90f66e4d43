"""Rademacher sign patterns and the diagonal D_xi."""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from src.core.errors import DimensionError, ParameterError
from src.core.seeding import derive_rng
from src.core.vectors import as_vector


@dataclass(frozen=True)
class SignPattern:
    """Sequence of +-1 values; `seed` is None for forced patterns."""

    signs: np.ndarray
    seed: int | None = None

    def __post_init__(self):
        signs = np.asarray(self.signs, dtype=np.float64)
        if signs.ndim != 1 or signs.size == 0:
            raise DimensionError("Sign pattern must be a nonempty 1-D sequence")
        if not np.all(np.abs(signs) == 1.0):
            raise ParameterError("Sign pattern entries must be exactly -1 or +1")
        signs.setflags(write=False)
        object.__setattr__(self, "signs", signs)

    @classmethod
    def from_seed(cls, N: int, seed: int) -> "SignPattern":
        """Draw xi uniformly from {-1, 1}^N."""
        if N < 1:
            raise ParameterError(f"N must be positive, got {N}")
        rng = derive_rng(seed, "signs")
        signs = rng.integers(0, 2, size=N) * 2.0 - 1.0
        return cls(signs, seed)

    @classmethod
    def forced(cls, signs: Sequence[float]) -> "SignPattern":
        return cls(np.asarray(signs, dtype=np.float64), None)

    def __len__(self) -> int:
        return self.signs.size

    def flipped(self) -> "SignPattern":
        return SignPattern(-self.signs, None)


def apply_sign_diagonal(x: Sequence[float] | np.ndarray, xi: SignPattern) -> np.ndarray:
    """
    Compute D_xi x.

    Args:
        x: Vector of length N
        xi: Sign pattern of length N

    Returns:
        Vector with entries xi_j * x_j
    """
    vec = as_vector(x)
    if vec.size != len(xi):
        raise DimensionError(f"Length mismatch: x has {vec.size}, signs have {len(xi)}")
    return xi.signs * vec
