"""Single-point concentration of ||Phi D_xi x||^2 as m grows."""

from typing import Sequence
import logging

import numpy as np

from src.constructions.builders import build_operator, randomize_signs
from src.core.errors import ParameterError
from src.core.seeding import derive_seed
from src.harness.pointsets import generate_pointset
from src.models.schemas import ConcentrationReport, TrialConfig
from config.settings import get_settings

settings = get_settings()
logger = logging.getLogger(__name__)


def fit_decay_rate(epsilon: float, m_values: Sequence[int], probabilities: Sequence[float]) -> float | None:
    """
    Least-squares c in ln(P/2) = -c epsilon^2 m, over points with P > 0.

    Returns:
        Fitted c, or None when no probability is positive
    """
    ms = np.asarray(m_values, dtype=np.float64)
    ps = np.asarray(probabilities, dtype=np.float64)
    keep = ps > 0.0
    if not np.any(keep):
        return None
    design = (epsilon ** 2 * ms[keep])[:, None]
    target = -np.log(ps[keep] / 2.0)
    coef, *_ = np.linalg.lstsq(design, target, rcond=None)
    return float(coef[0])


def concentration_profile(
    cfg: TrialConfig,
    m_values: Sequence[int],
    trials: int,
    root_seed: int | None = None,
) -> ConcentrationReport:
    """
    P(| ||Phi D_xi x||^2 - ||x||^2 | >= epsilon ||x||^2) for one fixed x at each m.

    x is the first point of cfg.pointset drawn from cfg.data_seed; Phi and xi
    are redrawn per trial from (root_seed, trial index), the same streams
    for every m.

    Args:
        cfg: Config supplying N, epsilon, construction and the data seed
        m_values: Embedding dimensions to probe
        trials: Draws per m
        root_seed: Root of the per-trial seeds

    Returns:
        ConcentrationReport with the fitted decay rate
    """
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")
    if not m_values:
        raise ParameterError("m_values must be nonempty")
    if root_seed is None:
        root_seed = settings.DEFAULT_ROOT_SEED

    x = generate_pointset(cfg.pointset, 1, cfg.N, cfg.data_seed, cfg.support).points[0]
    energy = float(x @ x)
    probabilities = []
    for m in m_values:
        hits = 0
        for i in range(trials):
            base = build_operator(
                cfg.construction, m, cfg.N, derive_seed(root_seed, "trial-matrix", i), cfg.variant, cfg.replace
            )
            op = randomize_signs(base, seed=derive_seed(root_seed, "trial-signs", i))
            image = op.apply(x)
            if abs(float(image @ image) - energy) >= cfg.epsilon * energy:
                hits += 1
        probabilities.append(hits / trials)
        logger.info("m=%d: deviation probability %.4g", m, hits / trials)

    return ConcentrationReport(
        epsilon=cfg.epsilon,
        m_values=list(m_values),
        failure_probabilities=probabilities,
        trials=trials,
        decay_rate=fit_decay_rate(cfg.epsilon, m_values, probabilities),
    )
