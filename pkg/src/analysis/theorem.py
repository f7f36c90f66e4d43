"""Parameter formulas and tail bounds of the sign-randomized RIP-to-JL theorem."""

from dataclasses import dataclass
import math

from src.core.errors import ParameterError
from src.models.schemas import TheoremConditions


@dataclass(frozen=True)
class TheoremConstants:
    """Constants fixed by the proof."""

    tau: float = 0.55
    gamma: float = 0.1
    k_factor: int = 40
    s_factor: int = 20


DEFAULT_CONSTANTS = TheoremConstants()


def _check_eta(eta: float) -> None:
    if not 0.0 < eta < 1.0:
        raise ParameterError(f"eta must lie in (0, 1), got {eta}")


def _check_epsilon(epsilon: float) -> None:
    if not 0.0 < epsilon < 1.0:
        raise ParameterError(f"epsilon must lie in (0, 1), got {epsilon}")


def _log_term(p: int, eta: float) -> float:
    if p < 1:
        raise ParameterError(f"p must be >= 1, got {p}")
    _check_eta(eta)
    return math.log(4.0 * p / eta)


def min_sparsity_for_points(p: int, eta: float, constants: TheoremConstants = DEFAULT_CONSTANTS) -> tuple[int, int]:
    """
    Smallest block size and RIP order for p points at failure probability eta.

    Args:
        p: Number of points
        eta: Failure probability in (0, 1)
        constants: Proof constants

    Returns:
        Tuple (k, s) with s = ceil(20 ln(4p/eta)) and k = 2s
    """
    s = math.ceil(constants.s_factor * _log_term(p, eta))
    return 2 * s, s


def required_delta(epsilon: float) -> float:
    """RIP level epsilon/4 that the theorem needs."""
    _check_epsilon(epsilon)
    return epsilon / 4.0


def cross_term_delta_limit(epsilon: float, s: int, p: int, eta: float, gamma: float = DEFAULT_CONSTANTS.gamma) -> float:
    """Largest delta keeping the union bound on the cross term below eta/2."""
    _check_epsilon(epsilon)
    return epsilon / 4.0 * math.sqrt(8.0 * gamma ** 2 * s / _log_term(p, eta))


def chaos_term_delta_limit(epsilon: float, s: int, p: int, eta: float, tau: float = DEFAULT_CONSTANTS.tau) -> float:
    """Largest delta keeping the union bound on the chaos term below eta/2."""
    _check_epsilon(epsilon)
    log = _log_term(p, eta)
    return epsilon / 4.0 * min(
        math.sqrt(tau ** 2 * s / (4.0 * log)),
        (96.0 / 65.0) * tau * s / (16.0 * log),
    )


def theorem_conditions(
    epsilon: float, s: int, p: int, eta: float, constants: TheoremConstants = DEFAULT_CONSTANTS
) -> TheoremConditions:
    """
    Evaluate both delta conditions of the proof at delta = epsilon/4.

    Returns:
        TheoremConditions; `satisfied` is True when epsilon/4 is within both limits
    """
    if s < 1:
        raise ParameterError(f"s must be >= 1, got {s}")
    cross = cross_term_delta_limit(epsilon, s, p, eta, constants.gamma)
    chaos = chaos_term_delta_limit(epsilon, s, p, eta, constants.tau)
    needed = required_delta(epsilon)
    return TheoremConditions(
        epsilon=epsilon,
        s=s,
        p=p,
        eta=eta,
        cross_term_limit=cross,
        chaos_term_limit=chaos,
        required_delta=needed,
        satisfied=needed <= min(cross, chaos),
    )


def cross_term_tail_bound(s: int, gamma: float, epsilon: float, delta: float) -> float:
    """P(|X| >= gamma epsilon) <= 2 exp(-s gamma^2 epsilon^2 / (2 delta^2)) for one point."""
    if delta <= 0.0:
        return 0.0
    return 2.0 * math.exp(-s * gamma ** 2 * epsilon ** 2 / (2.0 * delta ** 2))


def chaos_term_tail_bound(s: int, tau: float, epsilon: float, delta: float) -> float:
    """P(|xi* C xi| >= tau epsilon) bound for one point."""
    if delta <= 0.0:
        return 0.0
    exponent = min(s * tau ** 2 * epsilon ** 2 / delta ** 2, 96.0 * tau * s * epsilon / (65.0 * delta))
    return 2.0 * math.exp(-exponent / 64.0)


def union_failure_bound(
    p: int, s: int, epsilon: float, delta: float, constants: TheoremConstants = DEFAULT_CONSTANTS
) -> float:
    """Union bound over p points of the cross and chaos failure probabilities."""
    if p < 1:
        raise ParameterError(f"p must be >= 1, got {p}")
    return p * (
        cross_term_tail_bound(s, constants.gamma, epsilon, delta)
        + chaos_term_tail_bound(s, constants.tau, epsilon, delta)
    )
