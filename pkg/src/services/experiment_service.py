"""Embedding, RIP estimation and sweeps behind the command-line surface."""

from typing import Literal, Sequence
import logging

import numpy as np

from src.analysis.distortion import distortion
from src.analysis.rip import rip_constant_exact, rip_constant_lower_bound, rip_constant_upper_bound
from src.constructions.builders import build_operator, randomize_signs
from src.constructions.operators import BatchMode, apply_batch, densify
from src.core.errors import ParameterError
from src.core.signs import SignPattern
from src.core.vectors import PointSet
from src.harness.search import minimal_m, scaling_exponent
from src.harness.trials import failure_rate
from src.models.schemas import RipEstimate, SweepReport, TrialConfig
from config.settings import get_settings

settings = get_settings()
logger = logging.getLogger(__name__)

RipMethodName = Literal["exact", "monte-carlo", "upper-bound"]


class ExperimentService:
    """Builds seeded operators and runs the embed, rip and sweep experiments."""

    def __init__(self, jobs: int | None = None):
        """
        Initialize experiment service.

        Args:
            jobs: Worker processes for trial batches (default settings.JOBS)
        """
        self.jobs = settings.JOBS if jobs is None else jobs

    def build(
        self,
        construction: str,
        m: int,
        N: int,
        matrix_seed: int,
        sign_seed: int | None,
        variant: str = "gaussian",
        replace: bool = True,
    ):
        """
        Seeded Phi D_xi; the identity construction keeps xi = 1 so it stays the identity.

        Args:
            construction: Construction name
            m: Output dimension
            N: Input dimension
            matrix_seed: Seed of Phi
            sign_seed: Seed of xi; None returns Phi without signs
            variant: Circulant generator distribution
            replace: Row sampling mode

        Returns:
            SignedOperator, or the bare operator when sign_seed is None
        """
        base = build_operator(construction, m, N, matrix_seed, variant, replace)
        if sign_seed is None:
            return base
        if construction == "identity":
            return randomize_signs(base, signs=SignPattern.forced(np.ones(N)))
        return randomize_signs(base, seed=sign_seed)

    def embed(
        self,
        points: np.ndarray,
        construction: str,
        m: int,
        matrix_seed: int,
        sign_seed: int,
        mode: BatchMode = "direct",
        variant: str = "gaussian",
        replace: bool = True,
    ) -> tuple[PointSet, float]:
        """
        Embed a point set and measure its distortion.

        Args:
            points: p x N array
            construction: Construction name
            m: Output dimension
            matrix_seed: Seed of Phi
            sign_seed: Seed of xi
            mode: "direct" or "pairwise"

        Returns:
            Tuple of (embedded points, max distortion)
        """
        E = PointSet(points)
        op = self.build(construction, m, E.dim, matrix_seed, sign_seed, variant, replace)
        embedded = apply_batch(op, E, mode)
        value = distortion(op, E, mode)
        logger.info("Embedded %d points from N=%d to m=%d, distortion %.6g", E.p, E.dim, m, value)
        return embedded, value

    def rip(self, Phi: np.ndarray, k: int, method: RipMethodName = "exact", trials: int = 1000,
            seed: int = 0) -> RipEstimate:
        """Estimate delta_k of a dense matrix with the chosen method."""
        if method == "exact":
            return rip_constant_exact(Phi, k)
        if method == "monte-carlo":
            return rip_constant_lower_bound(Phi, k, trials, seed)
        if method == "upper-bound":
            return rip_constant_upper_bound(Phi, k)
        raise ParameterError(f"Unknown RIP method: {method}")

    def generated_matrix(self, construction: str, m: int, N: int, matrix_seed: int,
                         variant: str = "gaussian", replace: bool = True) -> np.ndarray:
        """Dense matrix of a generated construction, without signs."""
        return densify(self.build(construction, m, N, matrix_seed, None, variant, replace))

    def sweep(
        self,
        template: TrialConfig,
        axis: Literal["m", "epsilon"],
        values: Sequence[float],
        trials: int,
        root_seed: int | None = None,
        fit: bool = False,
        m_range: tuple[int, int] | None = None,
        data_seed: int | None = None,
    ) -> SweepReport:
        """
        Failure rates along m or epsilon, optionally with the minimal-m scaling fit.

        For axis "epsilon" with fit, minimal m is searched at every epsilon
        with target success 1 - eta and the slope of ln(m*) against
        ln(epsilon) is appended.

        Args:
            template: Base trial config
            axis: Swept field
            values: Axis values
            trials: Trials per point
            root_seed: Root of the per-trial seeds
            fit: Also run minimal_m and the scaling fit (epsilon axis only)
            m_range: Search range for minimal_m (default (1, 4 N))
            data_seed: Fixed point-set seed for the failure rates; None redraws per trial

        Returns:
            SweepReport
        """
        if not values:
            raise ParameterError("Sweep needs at least one axis value")
        if fit and axis != "epsilon":
            raise ParameterError("The scaling fit needs the epsilon axis")

        records = []
        for value in values:
            update = {"m": int(value)} if axis == "m" else {"epsilon": float(value)}
            cfg = TrialConfig.model_validate({**template.model_dump(), **update})
            records.append(failure_rate(cfg, trials, root_seed, self.jobs, axis, data_seed))

        report = SweepReport(axis=axis, records=records)
        if fit:
            search_range = m_range or (1, 4 * template.N)
            thresholds = []
            for value in values:
                cfg = TrialConfig.model_validate({**template.model_dump(), "epsilon": float(value)})
                result = minimal_m(cfg, 1.0 - template.eta, search_range, trials, root_seed, self.jobs)
                thresholds.append(result.m)
            report.minimal_m = thresholds
            report.fit = scaling_exponent(values, thresholds)
        return report


def get_experiment_service(jobs: int | None = None) -> ExperimentService:
    """Get experiment service instance."""
    return ExperimentService(jobs)
