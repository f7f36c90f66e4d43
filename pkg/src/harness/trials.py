"""Embedding trials and failure-rate estimation."""

from concurrent.futures import ProcessPoolExecutor
from typing import Literal
import logging
import time

from scipy.stats import binomtest

from src.analysis.distortion import distortion
from src.constructions.builders import build_operator, randomize_signs
from src.core.errors import ParameterError
from src.core.seeding import derive_seed
from src.harness.pointsets import generate_pointset
from src.models.schemas import SweepPoint, TrialConfig, TrialResult
from config.settings import get_settings

settings = get_settings()
logger = logging.getLogger(__name__)


def run_trial(cfg: TrialConfig) -> TrialResult:
    """
    One draw of (Phi, xi, E) and its worst-case distortion.

    Args:
        cfg: Trial configuration; the three seeds fix the outcome

    Returns:
        TrialResult with success iff max_distortion <= epsilon
    """
    start = time.perf_counter()
    base = build_operator(cfg.construction, cfg.m, cfg.N, cfg.matrix_seed, cfg.variant, cfg.replace)
    op = randomize_signs(base, seed=cfg.sign_seed)
    E = generate_pointset(cfg.pointset, cfg.p, cfg.N, cfg.data_seed, cfg.support)
    value = distortion(op, E, cfg.mode)
    return TrialResult(
        epsilon=cfg.epsilon,
        max_distortion=value,
        success=value <= cfg.epsilon,
        wall_time=time.perf_counter() - start,
    )


def trial_configs(
    cfg: TrialConfig, trials: int, root_seed: int, data_seed: int | None = None
) -> list[TrialConfig]:
    """
    Per-trial configs with seeds derived from (root_seed, trial index).

    A given data_seed keeps the point set fixed across trials, so only Phi
    and xi are redrawn.
    """
    return [
        cfg.model_copy(update={
            "matrix_seed": derive_seed(root_seed, "trial-matrix", i),
            "sign_seed": derive_seed(root_seed, "trial-signs", i),
            "data_seed": derive_seed(root_seed, "trial-data", i) if data_seed is None else data_seed,
        })
        for i in range(trials)
    ]


def run_trials(
    cfg: TrialConfig,
    trials: int,
    root_seed: int,
    jobs: int | None = None,
    data_seed: int | None = None,
) -> list[TrialResult]:
    """
    Run independent trials, in a process pool when jobs > 1.

    Results come back in trial-index order whatever the job count.
    """
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")
    if jobs is None:
        jobs = settings.JOBS
    configs = trial_configs(cfg, trials, root_seed, data_seed)
    if jobs <= 1:
        return [run_trial(c) for c in configs]
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(run_trial, configs, chunksize=max(1, trials // (4 * jobs))))


def clopper_pearson(failures: int, trials: int) -> tuple[float, float]:
    """Exact 95% binomial interval for the failure probability."""
    ci = binomtest(failures, trials).proportion_ci(confidence_level=0.95, method="exact")
    return float(ci.low), float(ci.high)


def failure_rate(
    cfg: TrialConfig,
    trials: int,
    root_seed: int | None = None,
    jobs: int | None = None,
    axis: Literal["m", "epsilon"] = "m",
    data_seed: int | None = None,
) -> SweepPoint:
    """
    Estimate the failure probability of a configuration.

    Args:
        cfg: Template config; its seeds are replaced per trial
        trials: Number of trials
        root_seed: Root of the per-trial seeds (default settings.DEFAULT_ROOT_SEED)
        jobs: Worker processes (default settings.JOBS)
        axis: Which config field is reported as the axis value
        data_seed: Fixed point-set seed; None draws a new point set per trial

    Returns:
        SweepPoint with failure count, rate and Clopper-Pearson interval
    """
    if root_seed is None:
        root_seed = settings.DEFAULT_ROOT_SEED
    results = run_trials(cfg, trials, root_seed, jobs, data_seed)
    failures = sum(not r.success for r in results)
    axis_value = cfg.m if axis == "m" else cfg.epsilon
    logger.info("%s=%s: %d/%d failures", axis, axis_value, failures, trials)
    return SweepPoint(
        axis_value=axis_value,
        failures=failures,
        trials=trials,
        rate=failures / trials,
        interval=clopper_pearson(failures, trials),
    )
