"""Verification suites: measured quantities checked against their bounds."""

from typing import Any, Callable
import logging

import numpy as np

from src.analysis.concentration import tail_check
from src.analysis.prop_c import expansion_terms, proof_term_exceedance, prop_c_check
from src.analysis.rip import max_disjoint_coherence, rip_constant_exact, rip_constant_upper_bound
from src.analysis.theorem import min_sparsity_for_points, theorem_conditions, union_failure_bound
from src.constructions.builders import build_subgaussian, randomize_signs
from src.core.errors import ParameterError
from src.core.seeding import derive_rng, derive_seed
from src.core.vectors import decreasing_arrangement
from src.harness.concentration import concentration_profile
from src.harness.null_space import null_space_experiment
from src.harness.pointsets import generate_pointset
from src.models.schemas import CheckRecord, TrialConfig, VerificationReport
from config.settings import get_settings

settings = get_settings()
logger = logging.getLogger(__name__)

SUITES = ("prop53", "prop54", "expansion", "tails", "theorem", "nullspace", "concentration")


def _report(suite: str, checks: list[CheckRecord], summary: dict[str, Any]) -> VerificationReport:
    violations = sum(not c.passed for c in checks)
    logger.info("Suite %s: %d checks, %d violations", suite, len(checks), violations)
    return VerificationReport(
        suite=suite,
        checks=checks,
        violations=violations,
        passed=violations == 0,
        summary=summary,
    )


class VerificationService:
    """Runs the named verification suites with seeded instances."""

    def __init__(self, seed: int | None = None):
        """
        Initialize verification service.

        Args:
            seed: Root seed of every instance (default settings.DEFAULT_ROOT_SEED)
        """
        self.seed = settings.DEFAULT_ROOT_SEED if seed is None else seed
        self._suites: dict[str, Callable[..., VerificationReport]] = {
            "prop53": self.verify_prop53,
            "prop54": self.verify_prop54,
            "expansion": self.verify_expansion,
            "tails": self.verify_tails,
            "theorem": self.verify_theorem,
            "nullspace": self.verify_nullspace,
            "concentration": self.verify_concentration,
        }

    def run(self, suite: str, **params) -> VerificationReport:
        """
        Run a suite by name.

        Args:
            suite: One of SUITES
            **params: Size overrides for the suite; None values fall back to settings

        Returns:
            VerificationReport
        """
        if suite not in self._suites:
            raise ParameterError(f"Unknown suite: {suite}. Choose from {', '.join(SUITES)}")
        params = {k: v for k, v in params.items() if v is not None}
        return self._suites[suite](**params)

    def _matrix(self, i: int, m: int, N: int) -> np.ndarray:
        return build_subgaussian(m, N, "gaussian", derive_seed(self.seed, "instances", i)).matrix

    def verify_prop53(self, matrices: int | None = None, m: int | None = None, n: int | None = None,
                      s: int | None = None) -> VerificationReport:
        """Disjoint-block coherence never exceeds the exact delta of order 2s."""
        matrices = matrices or settings.VERIFY_MATRICES
        m = m or settings.VERIFY_M
        N = n or settings.VERIFY_N
        s = s or settings.VERIFY_S

        checks = []
        for i in range(matrices):
            Phi = self._matrix(i, m, N)
            delta = rip_constant_exact(Phi, min(2 * s, N)).delta
            coherence, J, L = max_disjoint_coherence(Phi, s)
            checks.append(CheckRecord(
                name=f"coherence[{i}]",
                measured=coherence,
                bound=delta,
                passed=coherence <= delta + settings.INEQUALITY_TOL,
                detail=f"J={J} L={L}",
            ))
        return _report("prop53", checks, {"matrices": matrices, "m": m, "N": N, "s": s})

    def verify_prop54(self, matrices: int | None = None, vectors: int | None = None, m: int | None = None,
                      n: int | None = None, s: int | None = None) -> VerificationReport:
        """||C||, ||C||_F and ||v|| stay below delta/s, delta/sqrt(s), delta/sqrt(s)."""
        matrices = matrices or settings.VERIFY_MATRICES
        vectors = vectors or settings.VERIFY_VECTORS_PER_MATRIX
        m = m or settings.VERIFY_M
        N = n or settings.VERIFY_N
        s = s or settings.VERIFY_S

        checks = []
        names = ("norm_C", "frobenius_C", "norm_v")
        for i in range(matrices):
            Phi = self._matrix(i, m, N)
            delta = rip_constant_exact(Phi, min(2 * s, N)).delta
            rng = derive_rng(self.seed, "points", i)
            worst = np.zeros(3)
            failures = np.zeros(3, dtype=int)
            bounds = (delta / s, delta / np.sqrt(s), delta / np.sqrt(s))
            for _j in range(vectors):
                x = rng.standard_normal(N)
                x, _perm = decreasing_arrangement(x / np.linalg.norm(x))
                b = rng.integers(0, 2, size=s) * 2.0 - 1.0
                report = prop_c_check(Phi, x, s, b, delta=delta)
                measured = (report.norm_C_spectral, report.norm_C_frobenius, report.norm_v)
                worst = np.maximum(worst, measured)
                failures += [not ok for ok in report.passed]
            for name, value, bound, failed in zip(names, worst, bounds, failures):
                checks.append(CheckRecord(
                    name=f"{name}[{i}]",
                    measured=float(value),
                    bound=float(bound),
                    passed=failed == 0,
                    detail=f"{failed} of {vectors} vectors violate",
                ))
        return _report("prop54", checks, {"matrices": matrices, "vectors": vectors, "m": m, "N": N, "s": s})

    def verify_expansion(self, instances: int | None = None, m: int | None = None, n: int | None = None,
                         s: int | None = None) -> VerificationReport:
        """term1 + term2 + term3 reproduces ||Phi D_xi x||^2."""
        instances = instances or settings.VERIFY_INSTANCES
        m = m or settings.VERIFY_M
        N = n or settings.VERIFY_N
        s = s or settings.VERIFY_S

        residuals = []
        for i in range(instances):
            base = build_subgaussian(m, N, "gaussian", derive_seed(self.seed, "instances", i))
            op = randomize_signs(base, seed=derive_seed(self.seed, "trial-signs", i))
            x = derive_rng(self.seed, "points", i).standard_normal(N)
            terms = expansion_terms(op, x, s)
            residuals.append(terms.residual / max(1.0, terms.total))

        tol = settings.INEQUALITY_TOL
        worst = float(max(residuals))
        failed = sum(r > tol for r in residuals)
        checks = [CheckRecord(
            name="additivity",
            measured=worst,
            bound=tol,
            passed=failed == 0,
            detail=f"{failed} of {instances} instances exceed the tolerance",
        )]
        return _report("expansion", checks, {"instances": instances, "m": m, "N": N, "s": s})

    def verify_tails(self, trials: int | None = None, dim: int | None = None,
                     chaos_dim: int | None = None) -> VerificationReport:
        """Empirical Rademacher tails against the Hoeffding and chaos bounds."""
        trials = trials or settings.VERIFY_TAIL_TRIALS
        dim = dim or settings.VERIFY_TAIL_DIM
        chaos_dim = chaos_dim or settings.VERIFY_CHAOS_DIM
        rng = derive_rng(self.seed, "instances")
        grid = (0.5, 1.0, 2.0, 4.0)

        instances = {
            "ones": np.ones(dim),
            "gaussian": rng.standard_normal(dim),
        }
        upper = np.triu(rng.standard_normal((chaos_dim, chaos_dim)), k=1)
        X = upper + upper.T

        checks = []
        for label, x in instances.items():
            scale = float(np.linalg.norm(x))
            for factor in grid:
                result = tail_check("hoeffding", x, factor * scale, trials, derive_seed(self.seed, "tail", len(checks)))
                checks.append(self._tail_record(f"hoeffding-{label}", factor, result))
        fro = float(np.linalg.norm(X, "fro"))
        for factor in grid:
            result = tail_check("chaos", X, factor * fro, trials, derive_seed(self.seed, "tail", len(checks)))
            checks.append(self._tail_record("chaos", factor, result))
        return _report("tails", checks, {"trials": trials, "dim": dim, "chaos_dim": chaos_dim})

    @staticmethod
    def _tail_record(label: str, factor: float, result) -> CheckRecord:
        return CheckRecord(
            name=f"{label}@{factor:g}",
            measured=result.empirical_freq,
            bound=min(1.0, result.bound) + result.slack,
            passed=result.passed,
            detail=f"t={result.t:.6g} bound={result.bound:.6g}",
        )

    def verify_theorem(self, n: int | None = None, m: int | None = None, p: int | None = None,
                       eta: float | None = None, epsilon: float | None = None,
                       sign_trials: int | None = None) -> VerificationReport:
        """
        Proof hypotheses on a sampled matrix at s = ceil(20 ln(4p/eta)).

        delta is certified by rip_constant_upper_bound (order-2s enumeration
        is out of reach at these sizes) and must not exceed epsilon/4 or either
        proof-condition limit. The cross and chaos terms are then sampled and
        their exceedance of 0.2 delta and 0.55 delta, and of the epsilon-scaled
        events, must stay below eta.
        """
        N = n or settings.VERIFY_THEOREM_N
        m = m or settings.VERIFY_THEOREM_M
        p = p or settings.VERIFY_THEOREM_P
        eta = eta or settings.VERIFY_THEOREM_ETA
        epsilon = epsilon or settings.VERIFY_THEOREM_EPSILON
        sign_trials = sign_trials or settings.VERIFY_SIGN_TRIALS

        k, s = min_sparsity_for_points(p, eta)
        conditions = theorem_conditions(epsilon, s, p, eta)
        base = build_subgaussian(m, N, "gaussian", derive_seed(self.seed, "instances"))
        certificate = rip_constant_upper_bound(base.matrix, min(k, N))
        E = generate_pointset("gaussian-unit", p, N, derive_seed(self.seed, "points"))
        sign_seed = derive_seed(self.seed, "trial-signs")
        exceedance = proof_term_exceedance(
            base, E, s, certificate.delta, epsilon, eta, sign_trials, sign_seed, reference="delta"
        )
        epsilon_exceedance = proof_term_exceedance(
            base, E, s, certificate.delta, epsilon, eta, sign_trials, sign_seed, reference="epsilon"
        )

        delta = certificate.delta
        checks = [
            CheckRecord(
                name="certified-delta",
                measured=delta,
                bound=conditions.required_delta,
                passed=delta <= conditions.required_delta,
                detail=f"method={certificate.method.value}",
            ),
            CheckRecord(
                name="cross-term-condition",
                measured=delta,
                bound=conditions.cross_term_limit,
                passed=delta <= conditions.cross_term_limit,
                detail=f"epsilon/4={conditions.required_delta:.6g}",
            ),
            CheckRecord(
                name="chaos-term-condition",
                measured=delta,
                bound=conditions.chaos_term_limit,
                passed=delta <= conditions.chaos_term_limit,
                detail=f"epsilon/4={conditions.required_delta:.6g}",
            ),
        ]
        for name, report in (("proof-term-exceedance", exceedance),
                             ("proof-term-exceedance-epsilon", epsilon_exceedance)):
            checks.append(CheckRecord(
                name=name,
                measured=report.total_fraction,
                bound=eta + report.slack,
                passed=report.passed,
                detail=(f"cross={report.cross_fraction:.6g} > {report.cross_threshold:.6g} "
                        f"chaos={report.chaos_fraction:.6g} > {report.chaos_threshold:.6g}"),
            ))
        summary = {
            "N": N, "m": m, "p": p, "eta": eta, "epsilon": epsilon, "k": k, "s": s,
            "certified_delta": delta,
            "union_failure_bound": union_failure_bound(p, s, epsilon, delta),
            "draws": exceedance.draws,
        }
        return _report("theorem", checks, summary)

    def verify_nullspace(self, n: int | None = None, m: int | None = None,
                         sign_trials: int | None = None) -> VerificationReport:
        """A kernel vector of partial Hadamard is killed; sign randomization keeps its norm on average."""
        N = n or settings.VERIFY_NULLSPACE_N
        m = m or settings.VERIFY_NULLSPACE_M
        sign_trials = sign_trials or settings.VERIFY_INSTANCES
        report = null_space_experiment(N, m, sign_trials, seed=self.seed)
        checks = [
            CheckRecord(name="kernel-ratio", measured=report.kernel_ratio, bound=1e-9,
                        passed=report.kernel_ratio <= 1e-9),
            CheckRecord(name="mean-signed-ratio", measured=abs(report.mean_ratio - 1.0), bound=0.2,
                        passed=abs(report.mean_ratio - 1.0) <= 0.2, detail=f"mean={report.mean_ratio:.6g}"),
        ]
        return _report("nullspace", checks, report.model_dump())

    def verify_concentration(self, n: int | None = None, epsilon: float | None = None,
                             trials: int | None = None) -> VerificationReport:
        """Single-point deviation probability decays in m; the fitted rate is positive."""
        N = n or settings.VERIFY_CONCENTRATION_N
        epsilon = epsilon or settings.VERIFY_CONCENTRATION_EPSILON
        trials = trials or settings.VERIFY_CONCENTRATION_TRIALS
        m_values = [max(2, N // 2 ** j) for j in range(6, 1, -1)]
        cfg = TrialConfig(N=N, m=m_values[0], p=1, epsilon=epsilon, data_seed=derive_seed(self.seed, "points"))
        report = concentration_profile(cfg, m_values, trials, self.seed)

        probs = report.failure_probabilities
        checks = [
            CheckRecord(
                name="decay",
                measured=probs[-1],
                bound=probs[0],
                passed=probs[-1] <= probs[0],
                detail="probability at the largest m against the smallest m",
            ),
            CheckRecord(
                name="decay-rate",
                measured=report.decay_rate if report.decay_rate is not None else 0.0,
                bound=0.0,
                passed=report.decay_rate is None or report.decay_rate > 0.0,
                detail="fitted c in P ~ 2 exp(-c eps^2 m)",
            ),
        ]
        return _report("concentration", checks, report.model_dump())


def get_verification_service(seed: int | None = None) -> VerificationService:
    """Get verification service instance."""
    return VerificationService(seed)
