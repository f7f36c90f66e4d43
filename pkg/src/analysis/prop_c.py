"""The coupling matrix C, the cross vector v and the three-term expansion of ||Phi D_xi x||^2."""

import logging
from typing import Literal

import numpy as np

from src.analysis.norms import spectral_norm
from src.analysis.rip import rip_constant_exact
from src.analysis.theorem import DEFAULT_CONSTANTS, TheoremConstants
from src.constructions.operators import EmbeddingOperator, SignedOperator, densify
from src.core.blocks import BlockStructure, block_partition
from src.core.errors import DimensionError, ParameterError, ResourceLimitError
from src.core.seeding import derive_rng
from src.core.signs import SignPattern
from src.core.vectors import PointSet, as_vector, decreasing_arrangement, is_decreasing
from src.models.schemas import ExpansionTerms, PropCReport, ProofTermReport
from config.settings import get_settings

settings = get_settings()
logger = logging.getLogger(__name__)


def _coupling_matrix(G: np.ndarray, y: np.ndarray, blocks: BlockStructure) -> np.ndarray:
    """y_j G_jl y_l on pairs in distinct blocks, both beyond the first; zero elsewhere."""
    labels = blocks.labels()
    mask = (labels[:, None] != labels[None, :]) & (labels[:, None] > 0) & (labels[None, :] > 0)
    return np.where(mask, y[:, None] * G * y[None, :], 0.0)


def _validate_prop_c(Phi, x, s: int, b):
    arr = np.asarray(Phi, dtype=np.float64)
    if arr.ndim != 2:
        raise DimensionError(f"Phi must be a matrix, got shape {arr.shape}")
    N = arr.shape[1]
    vec = as_vector(x)
    if vec.size != N:
        raise DimensionError(f"x has length {vec.size}, Phi has {N} columns")
    if not 1 <= s <= N:
        raise ParameterError(f"Block size must satisfy 1 <= s <= N={N}, got {s}")
    if N > settings.PROP_C_MAX_DIM:
        raise ResourceLimitError(f"N={N} exceeds the dense coupling-matrix cap {settings.PROP_C_MAX_DIM}")
    if not is_decreasing(vec):
        raise ParameterError("x must be in decreasing arrangement")
    if np.linalg.norm(vec) > 1.0 + 1e-12:
        raise ParameterError(f"x must have norm at most 1, got {np.linalg.norm(vec):.6g}")
    signs = SignPattern.forced(b).signs
    if signs.size != s:
        raise DimensionError(f"b must have length s={s}, got {signs.size}")
    return arr, vec, signs


def prop_c_quantities(Phi, x, s: int, b) -> tuple[np.ndarray, np.ndarray]:
    """
    Coupling matrix C and cross vector v of a decreasing unit-ball vector.

    C_jl = x_j <Phi_j, Phi_l> x_l for j, l in distinct blocks beyond the
    first; v = D_{x_rest} Phi_rest^* Phi_first D_{x_first} b, padded with
    zeros on the first block.

    Args:
        Phi: m x N matrix
        x: Vector in decreasing arrangement with ||x|| <= 1
        s: Block size
        b: Signs on the first block (length s)

    Returns:
        Tuple of (C as N x N, v of length N)

    Raises:
        ParameterError: If x is not decreasing or ||x|| > 1
        ResourceLimitError: If N exceeds settings.PROP_C_MAX_DIM
    """
    arr, vec, signs = _validate_prop_c(Phi, x, s, b)
    N = arr.shape[1]
    blocks = block_partition(N, s)
    G = arr.T @ arr

    C = _coupling_matrix(G, vec, blocks)
    v = np.zeros(N)
    v[s:] = vec[s:] * (G[s:, :s] @ (vec[:s] * signs))
    return C, v


def prop_c_check(Phi, x, s: int, b, delta: float | None = None) -> PropCReport:
    """
    Measure ||C||, ||C||_F and ||v|| against delta/s, delta/sqrt(s), delta/sqrt(s).

    Args:
        Phi: m x N matrix
        x: Vector in decreasing arrangement with ||x|| <= 1
        s: Block size
        b: Signs on the first block
        delta: RIP constant of order 2s; computed exactly when omitted

    Returns:
        PropCReport
    """
    C, v = prop_c_quantities(Phi, x, s, b)
    if delta is None:
        N = np.asarray(Phi).shape[1]
        delta = rip_constant_exact(Phi, min(2 * s, N)).delta

    measured = (spectral_norm(C), float(np.linalg.norm(C, "fro")), float(np.linalg.norm(v)))
    bounds = (delta / s, delta / np.sqrt(s), delta / np.sqrt(s))
    tol = settings.INEQUALITY_TOL
    passed = tuple(bool(mv <= bd + tol) for mv, bd in zip(measured, bounds))
    return PropCReport(
        s=s,
        delta=delta,
        norm_C_spectral=measured[0],
        norm_C_frobenius=measured[1],
        norm_v=measured[2],
        bounds=bounds,
        passed=passed,
    )


def block_images(op: EmbeddingOperator, x, xi: np.ndarray, s: int) -> np.ndarray:
    """
    Images Phi_(J) D_{x_(J)} xi_(J) of every block, one column per block.

    Blocks are taken in the decreasing arrangement of x, which amounts to
    permuting the columns of Phi alongside x.
    """
    vec = as_vector(x)
    if vec.size != op.N or xi.size != op.N:
        raise DimensionError(f"x and xi must have length N={op.N}")
    _, perm = decreasing_arrangement(vec)
    blocks = block_partition(op.N, s)
    Z = np.zeros((op.N, blocks.R))
    z = vec * xi
    for J, (start, stop) in enumerate(blocks.ranges):
        idx = perm.order[start:stop]
        Z[idx, J] = z[idx]
    return op.apply_columns(Z)


def expansion_terms(op: SignedOperator, x, s: int) -> ExpansionTerms:
    """
    Split ||Phi D_xi x||^2 into block energy, first-block cross term and chaos term.

    Args:
        op: Sign-randomized operator
        x: Vector of length N (arranged internally)
        s: Block size

    Returns:
        ExpansionTerms; term1 + term2 + term3 equals total up to rounding
    """
    if s < 1:
        raise ParameterError(f"Block size must be positive, got {s}")
    W = block_images(op.base, x, op.signs.signs, s)
    first = W[:, 0]
    rest_blocks = W[:, 1:]
    rest = rest_blocks.sum(axis=1)
    rest_energy = float(np.sum(rest_blocks ** 2))

    term1 = float(np.sum(W ** 2))
    term2 = 2.0 * float(first @ rest)
    term3 = float(rest @ rest) - rest_energy
    total = float(np.sum(op.apply(x) ** 2))
    return ExpansionTerms(term1=term1, term2=term2, term3=term3, total=total)


def proof_term_exceedance(
    op: EmbeddingOperator,
    x_samples: PointSet,
    s: int,
    delta: float,
    epsilon: float,
    eta: float = 0.05,
    sign_trials: int = 100,
    seed: int = 0,
    constants: TheoremConstants = DEFAULT_CONSTANTS,
    reference: Literal["delta", "epsilon"] = "delta",
) -> ProofTermReport:
    """
    Fraction of (x, xi) draws where the cross or chaos term is large.

    With reference "delta" counts |term2| > 2 gamma delta ||x||^2 and
    |term3| > tau delta ||x||^2 (0.2 delta and 0.55 delta); with "epsilon"
    counts |term2| >= 2 gamma epsilon ||x||^2 and |term3| >= tau epsilon ||x||^2.
    Draws are `sign_trials` Rademacher patterns per sample; passes when the
    sum of both fractions stays below eta plus a 3-sigma Monte-Carlo allowance.

    Args:
        op: Base operator (signs are drawn here)
        x_samples: Nonzero points of dimension N
        s: Block size
        delta: Certified RIP constant of order 2s, reported alongside
        epsilon: Distortion level
        eta: Allowed failure probability
        sign_trials: Sign draws per sample
        seed: Seed of the sign draws
        constants: Proof constants (tau, gamma)
        reference: Level the thresholds scale with

    Returns:
        ProofTermReport
    """
    if not 0.0 < epsilon < 1.0:
        raise ParameterError(f"epsilon must lie in (0, 1), got {epsilon}")
    if x_samples.dim != op.N:
        raise DimensionError(f"Samples have dimension {x_samples.dim}, operator N={op.N}")
    if reference not in ("delta", "epsilon"):
        raise ParameterError(f"Unknown threshold reference: {reference}")
    if sign_trials < 1:
        raise ParameterError(f"sign_trials must be >= 1, got {sign_trials}")
    if op.N > settings.PROP_C_MAX_DIM:
        raise ResourceLimitError(f"N={op.N} exceeds the dense coupling-matrix cap {settings.PROP_C_MAX_DIM}")

    level = delta if reference == "delta" else epsilon
    cross_threshold = 2.0 * constants.gamma * level
    chaos_threshold = constants.tau * level
    exceeds = np.greater if reference == "delta" else np.greater_equal
    Phi = densify(op)
    N = op.N
    blocks = block_partition(N, s)
    s_eff = blocks.s
    cross_hits = 0
    chaos_hits = 0
    draws = 0
    for i, x in enumerate(x_samples):
        energy = float(x @ x)
        if energy == 0.0:
            continue
        y, perm = decreasing_arrangement(x)
        M = Phi[:, perm.order] * y[None, :]
        K = M.T @ M
        C = _coupling_matrix(K, np.ones(N), blocks)
        Xi = derive_rng(seed, "signs", i).integers(0, 2, size=(sign_trials, N)) * 2.0 - 1.0
        term2 = 2.0 * np.sum((Xi[:, :s_eff] @ K[:s_eff, s_eff:]) * Xi[:, s_eff:], axis=1)
        term3 = np.sum((Xi @ C) * Xi, axis=1)
        cross_hits += int(np.count_nonzero(exceeds(np.abs(term2), cross_threshold * energy)))
        chaos_hits += int(np.count_nonzero(exceeds(np.abs(term3), chaos_threshold * energy)))
        draws += sign_trials
    if draws == 0:
        raise ParameterError("All samples are zero")

    cross_fraction = cross_hits / draws
    chaos_fraction = chaos_hits / draws
    slack = settings.TAIL_SLACK_SIGMAS / np.sqrt(draws)
    passed = cross_fraction + chaos_fraction <= eta + slack
    logger.info(
        "Proof terms (%s): cross %.4g, chaos %.4g over %d draws (eta=%.3g)",
        reference, cross_fraction, chaos_fraction, draws, eta,
    )
    return ProofTermReport(
        s=s_eff,
        epsilon=epsilon,
        delta=delta,
        eta=eta,
        reference=reference,
        cross_threshold=cross_threshold,
        chaos_threshold=chaos_threshold,
        draws=draws,
        cross_fraction=cross_fraction,
        chaos_fraction=chaos_fraction,
        slack=float(slack),
        passed=bool(passed),
    )
