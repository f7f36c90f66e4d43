"""Kernel vectors of a fixed operator, with and without sign randomization."""

import logging

import numpy as np
from scipy.linalg import null_space

from src.constructions.builders import build_operator
from src.constructions.operators import densify
from src.core.errors import ParameterError
from src.core.seeding import derive_seed
from src.core.signs import SignPattern
from src.models.schemas import NullSpaceReport

logger = logging.getLogger(__name__)


def kernel_vector(Phi: np.ndarray) -> np.ndarray:
    """A unit vector in the null space of Phi."""
    basis = null_space(Phi)
    if basis.shape[1] == 0:
        raise ParameterError(f"Matrix of shape {Phi.shape} has a trivial null space")
    return basis[:, 0]


def null_space_experiment(
    N: int,
    m: int,
    sign_trials: int,
    seed: int = 0,
    construction: str = "hadamard",
) -> NullSpaceReport:
    """
    Show that a fixed Phi kills some x while Phi D_xi keeps ||x||^2 on average.

    Args:
        N: Dimension
        m: Rows, m < N
        sign_trials: Number of sign patterns
        seed: Matrix seed; sign seeds are derived from it
        construction: Operator family (Hadamard rows are drawn without replacement)

    Returns:
        NullSpaceReport
    """
    if m >= N:
        raise ParameterError(f"Need m < N for a nontrivial kernel, got m={m}, N={N}")
    if sign_trials < 1:
        raise ParameterError(f"sign_trials must be >= 1, got {sign_trials}")

    op = build_operator(construction, m, N, seed, replace=False)
    x = kernel_vector(densify(op))
    kernel_ratio = float(np.linalg.norm(op.apply(x)) / np.linalg.norm(x))

    signs = np.stack([
        SignPattern.from_seed(N, derive_seed(seed, "trial-signs", t)).signs for t in range(sign_trials)
    ])
    images = op.apply_columns((signs * x[None, :]).T)
    ratios = np.sum(images ** 2, axis=0) / float(x @ x)
    logger.info("Kernel ratio %.3g, mean signed ratio %.4f", kernel_ratio, ratios.mean())
    return NullSpaceReport(
        N=N,
        m=m,
        kernel_ratio=kernel_ratio,
        sign_trials=sign_trials,
        mean_ratio=float(ratios.mean()),
    )
