"""Worst-case relative squared-norm distortion of an embedding."""

import numpy as np

from src.constructions.operators import AnyOperator, BatchMode, apply_batch, pairwise_differences
from src.core.errors import DimensionError, ParameterError
from src.core.vectors import PointSet


def distortion(op: AnyOperator, E: PointSet, mode: BatchMode = "direct") -> float:
    """
    max over y of | ||op(y)||^2 - ||y||^2 | / ||y||^2.

    In direct mode y ranges over the points of E, in pairwise mode over the
    differences of distinct pairs. Zero vectors are skipped.

    Args:
        op: Operator
        E: Point set
        mode: "direct" or "pairwise"

    Returns:
        Maximum relative distortion; a trial at level epsilon succeeds iff this is <= epsilon

    Raises:
        ParameterError: If every vector in scope is zero
    """
    if E.dim != op.N:
        raise DimensionError(f"Point dimension {E.dim} does not match operator N={op.N}")
    if mode == "direct":
        rows = E.points
    elif mode == "pairwise":
        rows = pairwise_differences(E)
    else:
        raise ParameterError(f"Unknown batch mode: {mode}")

    norms_sq = np.sum(rows ** 2, axis=1)
    rows = rows[norms_sq > 0.0]
    norms_sq = norms_sq[norms_sq > 0.0]
    if rows.shape[0] == 0:
        raise ParameterError("No nonzero vectors to measure distortion on")

    images = apply_batch(op, PointSet(rows), "direct").points
    image_sq = np.sum(images ** 2, axis=1)
    return float(np.max(np.abs(image_sq - norms_sq) / norms_sq))
