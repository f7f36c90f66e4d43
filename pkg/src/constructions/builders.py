"""Builders for every operator family, plus sign randomization."""

from typing import Literal
import logging

import numpy as np

from src.constructions.operators import (
    DenseOperator,
    EmbeddingOperator,
    OperatorKind,
    PartialCirculantOperator,
    PartialFourierOperator,
    PartialHadamardOperator,
    SignedOperator,
)
from src.core.errors import ParameterError
from src.core.seeding import derive_rng
from src.core.signs import SignPattern
from src.transforms.hadamard import is_power_of_two

logger = logging.getLogger(__name__)

Variant = Literal["gaussian", "rademacher"]

# CLI construction names -> operator kinds
CONSTRUCTIONS: dict[str, OperatorKind] = {
    "gaussian": OperatorKind.SUBGAUSSIAN_GAUSSIAN,
    "rademacher": OperatorKind.SUBGAUSSIAN_RADEMACHER,
    "hadamard": OperatorKind.PARTIAL_HADAMARD,
    "fourier": OperatorKind.PARTIAL_FOURIER,
    "circulant": OperatorKind.PARTIAL_CIRCULANT,
    "identity": OperatorKind.EXPLICIT,
}


def _check_dims(m: int, N: int) -> None:
    if m < 1 or N < 1:
        raise ParameterError(f"m and N must be positive, got m={m}, N={N}")


def _unit_variance_entries(rng: np.random.Generator, size, variant: Variant) -> np.ndarray:
    if variant == "gaussian":
        return rng.standard_normal(size)
    if variant == "rademacher":
        return rng.integers(0, 2, size=size) * 2.0 - 1.0
    raise ParameterError(f"Unknown variant: {variant}")


def build_subgaussian(m: int, N: int, variant: Variant = "gaussian", seed: int = 0) -> DenseOperator:
    """
    Dense matrix with i.i.d. entries of variance 1/m.

    Rademacher columns have unit norm up to rounding of 1/sqrt(m): exact
    when m is a power of 4, otherwise within m * machine epsilon.

    Args:
        m: Output dimension (m > N is allowed)
        N: Input dimension
        variant: "gaussian" (N(0, 1/m)) or "rademacher" (+-1/sqrt(m))
        seed: Matrix seed

    Returns:
        DenseOperator
    """
    _check_dims(m, N)
    rng = derive_rng(seed, "matrix")
    scale = 1.0 / np.sqrt(m)
    matrix = scale * _unit_variance_entries(rng, (m, N), variant)
    kind = OperatorKind.SUBGAUSSIAN_GAUSSIAN if variant == "gaussian" else OperatorKind.SUBGAUSSIAN_RADEMACHER
    return DenseOperator(kind, matrix, seed=seed, scale=scale)


def build_explicit(matrix) -> DenseOperator:
    """Wrap a fixed matrix (identity, zero, ...) as an operator; test hook."""
    return DenseOperator(OperatorKind.EXPLICIT, matrix)


def _sample_indices(rng: np.random.Generator, N: int, count: int, replace: bool) -> np.ndarray:
    if replace:
        return rng.integers(0, N, size=count)
    return rng.permutation(N)[:count]


def build_partial_hadamard(m: int, N: int, seed: int = 0, replace: bool = True) -> PartialHadamardOperator:
    """
    m rows of the N x N Hadamard matrix, sampled uniformly.

    Args:
        m: Number of rows
        N: Power-of-2 dimension
        seed: Matrix seed
        replace: i.i.d. rows (default) or a uniform subset without replacement

    Returns:
        PartialHadamardOperator
    """
    _check_dims(m, N)
    if not is_power_of_two(N):
        raise ParameterError(f"Partial Hadamard needs a power-of-2 N, got {N}")
    if not replace and m > N:
        raise ParameterError(f"Cannot sample {m} distinct rows from {N}")
    rows = _sample_indices(derive_rng(seed, "rows"), N, m, replace)
    return PartialHadamardOperator(rows, N, seed, replace=replace)


def build_partial_fourier(m: int, N: int, seed: int = 0, replace: bool = True) -> PartialFourierOperator:
    """
    m/2 DFT frequencies, each contributing a (real, imaginary) row pair.

    Args:
        m: Even number of output rows
        N: Dimension, at least 2
        seed: Matrix seed
        replace: i.i.d. frequencies (default) or distinct frequencies

    Returns:
        PartialFourierOperator
    """
    _check_dims(m, N)
    if m % 2 != 0:
        raise ParameterError(f"Partial Fourier needs an even m, got {m}")
    if N < 2:
        raise ParameterError(f"Partial Fourier needs N >= 2, got {N}")
    if not replace and m // 2 > N:
        raise ParameterError(f"Cannot sample {m // 2} distinct frequencies from {N}")
    frequencies = _sample_indices(derive_rng(seed, "frequencies"), N, m // 2, replace)
    return PartialFourierOperator(frequencies, N, seed, replace=replace)


def build_partial_circulant(m: int, N: int, variant: Variant = "gaussian", seed: int = 0) -> PartialCirculantOperator:
    """
    First m rows of a random circulant matrix, scaled by 1/sqrt(m).

    Args:
        m: Number of rows, 1 <= m <= N
        N: Dimension
        variant: Distribution of the generator row
        seed: Matrix seed

    Returns:
        PartialCirculantOperator
    """
    _check_dims(m, N)
    if m > N:
        raise ParameterError(f"Partial circulant needs m <= N, got m={m}, N={N}")
    generator = _unit_variance_entries(derive_rng(seed, "generator"), N, variant)
    return PartialCirculantOperator(generator, m, seed, variant=variant)


def randomize_signs(op: EmbeddingOperator, seed: int | None = None, signs: SignPattern | None = None) -> SignedOperator:
    """
    Compose op with D_xi.

    Args:
        op: Base operator
        seed: Sign seed, independent of op.seed
        signs: Forced sign pattern (overrides seed)

    Returns:
        SignedOperator
    """
    if signs is None:
        if seed is None:
            raise ParameterError("Either a sign seed or a forced sign pattern is required")
        signs = SignPattern.from_seed(op.N, seed)
    return SignedOperator(op, signs)


def build_operator(
    construction: str,
    m: int,
    N: int,
    seed: int = 0,
    variant: Variant = "gaussian",
    replace: bool = True,
) -> EmbeddingOperator:
    """
    Build an operator by construction name.

    Args:
        construction: One of CONSTRUCTIONS
        m: Output dimension
        N: Input dimension
        seed: Matrix seed
        variant: Generator distribution for circulant
        replace: Row/frequency sampling mode for Hadamard and Fourier

    Returns:
        EmbeddingOperator
    """
    if construction not in CONSTRUCTIONS:
        raise ParameterError(f"Unknown construction: {construction}")
    logger.debug("Building %s operator: m=%d, N=%d, seed=%s", construction, m, N, seed)
    if construction == "gaussian":
        return build_subgaussian(m, N, "gaussian", seed)
    if construction == "rademacher":
        return build_subgaussian(m, N, "rademacher", seed)
    if construction == "hadamard":
        return build_partial_hadamard(m, N, seed, replace=replace)
    if construction == "fourier":
        return build_partial_fourier(m, N, seed, replace=replace)
    if construction == "circulant":
        return build_partial_circulant(m, N, variant, seed)
    if m != N:
        raise ParameterError(f"The identity construction needs m = N, got m={m}, N={N}")
    return build_explicit(np.eye(N))


def random_bits(kind: OperatorKind, m: int, N: int) -> int:
    """
    Number of independent random draws a construction consumes, signs excluded.

    Dense matrices draw every entry; Hadamard draws m row indices; Fourier
    m/2 frequencies; circulant one generator row of length N.
    """
    if kind in (OperatorKind.SUBGAUSSIAN_GAUSSIAN, OperatorKind.SUBGAUSSIAN_RADEMACHER):
        return m * N
    if kind == OperatorKind.PARTIAL_HADAMARD:
        return m
    if kind == OperatorKind.PARTIAL_FOURIER:
        return m // 2
    if kind == OperatorKind.PARTIAL_CIRCULANT:
        return N
    return 0
