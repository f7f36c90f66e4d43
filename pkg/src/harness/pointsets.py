"""Synthetic point sets E for embedding trials."""

import numpy as np

from src.core.errors import ParameterError
from src.core.seeding import derive_rng
from src.core.vectors import PointSet
from src.models.schemas import PointSetKind
from config.settings import get_settings

settings = get_settings()


def generate_pointset(
    kind: PointSetKind | str,
    p: int,
    N: int,
    seed: int,
    support: int | None = None,
) -> PointSet:
    """
    Draw p points in R^N.

    gaussian-unit points are standard normal vectors scaled to unit norm;
    sparse points carry +-1/sqrt(support) on a random support; a
    pairwise-cloud is N(0, I/N) points meant for pairwise-difference
    embedding.

    Args:
        kind: Point-set kind
        p: Number of points
        N: Dimension
        seed: Data seed
        support: Support size for sparse points (default settings.SPARSE_SUPPORT, clipped to N)

    Returns:
        PointSet

    Raises:
        ParameterError: On an unknown kind or non-positive sizes
    """
    if p < 1 or N < 1:
        raise ParameterError(f"p and N must be positive, got p={p}, N={N}")
    try:
        kind = PointSetKind(kind)
    except ValueError as e:
        raise ParameterError(f"Unknown point-set kind: {kind}") from e

    rng = derive_rng(seed, "points")
    if kind == PointSetKind.GAUSSIAN_UNIT:
        points = rng.standard_normal((p, N))
        norms = np.linalg.norm(points, axis=1, keepdims=True)
        return PointSet(points / norms)

    if kind == PointSetKind.SPARSE:
        size = min(support if support is not None else settings.SPARSE_SUPPORT, N)
        if size < 1:
            raise ParameterError(f"Support size must be positive, got {size}")
        idx = np.argsort(rng.random((p, N)), axis=1)[:, :size]
        values = (rng.integers(0, 2, size=(p, size)) * 2.0 - 1.0) / np.sqrt(size)
        points = np.zeros((p, N))
        np.put_along_axis(points, idx, values, axis=1)
        return PointSet(points)

    return PointSet(rng.standard_normal((p, N)) / np.sqrt(N))
