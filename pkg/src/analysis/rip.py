"""Restricted isometry constants and disjoint-block coherence."""

from itertools import combinations, islice
import logging
import math

import numpy as np

from src.analysis.norms import spectral_norm
from src.core.errors import DimensionError, NumericError, ParameterError, ResourceLimitError
from src.core.seeding import derive_rng
from src.models.schemas import RipEstimate, RipMethod
from config.settings import get_settings

settings = get_settings()
logger = logging.getLogger(__name__)


def _as_matrix(Phi) -> np.ndarray:
    arr = np.asarray(Phi, dtype=np.float64)
    if arr.ndim != 2 or arr.size == 0:
        raise DimensionError(f"Expected a nonempty matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NumericError("Matrix has non-finite entries")
    return arr


def _check_order(k: int, N: int) -> None:
    if not 1 <= k <= N:
        raise ParameterError(f"Sparsity order must satisfy 1 <= k <= N={N}, got {k}")


def support_deltas(Phi: np.ndarray, supports: np.ndarray) -> np.ndarray:
    """
    max(sigma_max^2 - 1, 1 - sigma_min^2) for each support (row of `supports`).

    When k > m the column submatrix is rank deficient and sigma_min = 0.
    """
    m = Phi.shape[0]
    k = supports.shape[1]
    sub = np.transpose(Phi[:, supports], (1, 0, 2))  # (B, m, k)
    sv = np.linalg.svd(sub, compute_uv=False)
    smax = sv[:, 0]
    smin = sv[:, -1] if m >= k else np.zeros_like(smax)
    return np.maximum(smax ** 2 - 1.0, 1.0 - smin ** 2)


def _support_batches(N: int, k: int, batch: int):
    combos = combinations(range(N), k)
    while True:
        chunk = list(islice(combos, batch))
        if not chunk:
            return
        yield np.array(chunk, dtype=np.int64).reshape(-1, k)


def rip_constant_exact(Phi, k: int, cap: int | None = None) -> RipEstimate:
    """
    Exact delta_k by enumerating every size-k support.

    Args:
        Phi: m x N matrix
        k: Sparsity order
        cap: Maximum number of supports (default settings.RIP_ENUMERATION_CAP)

    Returns:
        RipEstimate with an attaining witness support

    Raises:
        ResourceLimitError: If C(N, k) exceeds the cap; use the monte-carlo bound instead
    """
    if cap is None:
        cap = settings.RIP_ENUMERATION_CAP
    arr = _as_matrix(Phi)
    N = arr.shape[1]
    _check_order(k, N)
    count = math.comb(N, k)
    if count > cap:
        raise ResourceLimitError(
            f"C({N}, {k}) = {count} supports exceeds the enumeration cap {cap}; "
            "use the monte-carlo lower bound instead"
        )

    best = -np.inf
    witness: list[int] = []
    for supports in _support_batches(N, k, settings.RIP_BATCH_SIZE):
        deltas = support_deltas(arr, supports)
        i = int(np.argmax(deltas))
        if deltas[i] > best:
            best = float(deltas[i])
            witness = supports[i].tolist()
    logger.debug("Exact delta_%d = %.6g over %d supports", k, best, count)
    return RipEstimate(k=k, delta=max(best, 0.0), method=RipMethod.EXACT, witness=witness)


def rip_constant_lower_bound(Phi, k: int, trials: int, seed: int = 0) -> RipEstimate:
    """
    Monte-Carlo lower bound on delta_k from `trials` random supports.

    Supports are drawn sequentially from one stream, so a run with fewer
    trials sees a prefix of the supports of a longer run. When `trials`
    covers every support (and enumeration fits the cap) all supports are
    evaluated instead.

    Args:
        Phi: m x N matrix
        k: Sparsity order
        trials: Number of sampled supports
        seed: Seed of the support stream

    Returns:
        RipEstimate with method monte-carlo; delta never exceeds the exact delta_k
    """
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")
    arr = _as_matrix(Phi)
    N = arr.shape[1]
    _check_order(k, N)

    total = math.comb(N, k)
    if trials >= total and total <= settings.RIP_ENUMERATION_CAP:
        exact = rip_constant_exact(arr, k)
        return RipEstimate(
            k=k, delta=exact.delta, method=RipMethod.MONTE_CARLO, witness=exact.witness, trials=trials
        )

    rng = derive_rng(seed, "supports")
    best = -np.inf
    witness: list[int] = []
    remaining = trials
    while remaining > 0:
        batch = min(remaining, settings.RIP_BATCH_SIZE)
        supports = np.sort(np.argsort(rng.random((batch, N)), axis=1)[:, :k], axis=1)
        deltas = support_deltas(arr, supports)
        i = int(np.argmax(deltas))
        if deltas[i] > best:
            best = float(deltas[i])
            witness = supports[i].tolist()
        remaining -= batch
    return RipEstimate(k=k, delta=max(best, 0.0), method=RipMethod.MONTE_CARLO, witness=witness, trials=trials)


def rip_constant_upper_bound(Phi, k: int) -> RipEstimate:
    """
    Certified upper bound on delta_k without enumeration.

    Takes the smaller of two valid bounds: Gershgorin on every k x k
    principal Gram submatrix (row-wise diagonal deviation plus the k-1
    largest off-diagonal magnitudes), and the full-matrix constant delta_N,
    which dominates every delta_k.

    Args:
        Phi: m x N matrix
        k: Sparsity order

    Returns:
        RipEstimate with method upper-bound
    """
    arr = _as_matrix(Phi)
    N = arr.shape[1]
    _check_order(k, N)

    G = arr.T @ arr
    diag_dev = np.abs(np.diag(G) - 1.0)
    off = np.abs(G - np.diag(np.diag(G)))
    top = -np.sort(-off, axis=1)[:, : k - 1].sum(axis=1) if k > 1 else np.zeros(N)
    rows = diag_dev + top
    j = int(np.argmax(rows))
    gershgorin = float(rows[j])

    full = float(support_deltas(arr, np.arange(N)[None, :])[0])
    if full < gershgorin:
        return RipEstimate(k=k, delta=max(full, 0.0), method=RipMethod.UPPER_BOUND, witness=list(range(N)))
    neighbours = np.argsort(-off[j], kind="stable")[: k - 1].tolist()
    return RipEstimate(k=k, delta=gershgorin, method=RipMethod.UPPER_BOUND, witness=sorted([j] + neighbours))


def _index_set(indices, N: int, name: str) -> np.ndarray:
    arr = np.asarray(list(indices), dtype=np.int64)
    if arr.ndim != 1:
        raise DimensionError(f"{name} must be a flat index set")
    if arr.size and (arr.min() < 0 or arr.max() >= N):
        raise ParameterError(f"{name} has indices outside [0, {N})")
    if np.unique(arr).size != arr.size:
        raise ParameterError(f"{name} has repeated indices")
    return arr


def disjoint_block_coherence(Phi, J, L) -> float:
    """
    Spectral norm of the cross-Gram block Phi_J^* Phi_L.

    Args:
        Phi: m x N matrix
        J: Index set
        L: Index set disjoint from J

    Returns:
        ||Phi_J^* Phi_L||

    Raises:
        ParameterError: If J and L overlap
    """
    arr = _as_matrix(Phi)
    N = arr.shape[1]
    J_idx = _index_set(J, N, "J")
    L_idx = _index_set(L, N, "L")
    if np.intersect1d(J_idx, L_idx).size:
        raise ParameterError("J and L must be disjoint")
    if J_idx.size == 0 or L_idx.size == 0:
        return 0.0
    return spectral_norm(arr[:, J_idx].T @ arr[:, L_idx])


def max_disjoint_coherence(Phi, s: int) -> tuple[float, list[int], list[int]]:
    """
    Maximum coherence over all disjoint pairs of size-s index sets.

    Pairs with |J|, |L| < s are covered: their cross-Gram block is a
    submatrix of a size-s block and has no larger norm.

    Args:
        Phi: m x N matrix with N >= 2
        s: Set size (clipped to N // 2)

    Returns:
        Tuple of (max coherence, J, L)
    """
    arr = _as_matrix(Phi)
    N = arr.shape[1]
    if N < 2 or s < 1:
        raise ParameterError(f"Need N >= 2 and s >= 1, got N={N}, s={s}")
    s = min(s, N // 2)
    sets = np.array(list(combinations(range(N), s)), dtype=np.int64)
    n_sets = sets.shape[0]
    if n_sets * (n_sets - 1) // 2 > settings.RIP_ENUMERATION_CAP:
        raise ResourceLimitError(f"{n_sets} index sets give too many pairs to enumerate")

    G = arr.T @ arr
    first, second = np.triu_indices(n_sets, k=1)
    best, best_pair = 0.0, ([], [])
    batch = settings.RIP_BATCH_SIZE
    for start in range(0, first.size, batch):
        A = sets[first[start:start + batch]]
        B = sets[second[start:start + batch]]
        disjoint = ~np.any(A[:, :, None] == B[:, None, :], axis=(1, 2))
        A, B = A[disjoint], B[disjoint]
        if A.shape[0] == 0:
            continue
        blocks = G[A[:, :, None], B[:, None, :]]
        norms = np.linalg.svd(blocks, compute_uv=False)[:, 0]
        i = int(np.argmax(norms))
        if norms[i] > best:
            best = float(norms[i])
            best_pair = (A[i].tolist(), B[i].tolist())
    return best, best_pair[0], best_pair[1]
