"""Block decomposition of a rearranged vector into blocks of size s = k/2."""

from dataclasses import dataclass
import math

import numpy as np

from src.core.errors import ParameterError


@dataclass(frozen=True)
class BlockStructure:
    """
    Partition of {0, ..., N-1} into R = ceil(N/s) contiguous blocks.

    Ranges are half-open (start, stop) pairs; all but the last have length s.
    """

    N: int
    s: int
    ranges: tuple[tuple[int, int], ...]

    @property
    def R(self) -> int:
        return len(self.ranges)

    @property
    def first(self) -> tuple[int, int]:
        """The block x_(1)."""
        return self.ranges[0]

    @property
    def rest(self) -> tuple[int, int]:
        """Union of blocks 2..R (x_(flat)); empty when R = 1."""
        return (self.ranges[0][1], self.N)

    def lengths(self) -> list[int]:
        return [stop - start for start, stop in self.ranges]

    def labels(self) -> np.ndarray:
        """Block index (0-based) of every coordinate."""
        out = np.empty(self.N, dtype=np.int64)
        for J, (start, stop) in enumerate(self.ranges):
            out[start:stop] = J
        return out

    def one_based(self) -> list[tuple[int, int]]:
        """Ranges as inclusive 1-based [first..last] pairs."""
        return [(start + 1, stop) for start, stop in self.ranges]


def block_partition(N: int, s: int) -> BlockStructure:
    """
    Split {0, ..., N-1} into blocks of size s.

    Args:
        N: Dimension
        s: Block size; s > N degenerates to a single block

    Returns:
        BlockStructure with R = ceil(N/s) ranges

    Raises:
        ParameterError: If N < 1 or s < 1
    """
    if N < 1:
        raise ParameterError(f"N must be positive, got {N}")
    if s < 1:
        raise ParameterError(f"Block size s must be positive, got {s}")
    s_eff = min(s, N)
    R = math.ceil(N / s_eff)
    ranges = tuple((J * s_eff, min((J + 1) * s_eff, N)) for J in range(R))
    return BlockStructure(N=N, s=s_eff, ranges=ranges)
