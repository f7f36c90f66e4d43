"""Desk-scale acceptance runs: oracles, inequality suites and statistical checks.

Run with `pytest -m slow`; the full module takes tens of minutes.
"""

import math

import numpy as np
import pytest

from src.analysis.rip import rip_constant_exact
from src.constructions.builders import build_operator
from src.constructions.operators import densify
from src.core.seeding import derive_rng
from src.harness.search import minimal_m, scaling_exponent
from src.harness.trials import failure_rate
from src.models.schemas import TrialConfig
from src.services.verification_service import get_verification_service
from src.transforms.fourier import circular_convolve, direct_circular_convolve
from src.transforms.hadamard import fwht, naive_hadamard_multiply
from config.settings import get_settings

settings = get_settings()

pytestmark = pytest.mark.slow

SCALING_EPSILONS = (0.2, 0.3, 0.45, 0.67, 0.99)


@pytest.fixture(scope="module")
def verification():
    """Сервіс перевірок з коренем seed за замовчуванням."""
    return get_verification_service()


class TestOracles:
    """Fast transforms and implicit operators against explicit products."""

    def test_transforms(self):
        """Тест: 100 випадкових входів для кожного N = 2..1024."""
        rng = derive_rng(0, "points")
        for j in range(1, 11):
            n = 2 ** j
            for _ in range(100):
                x = rng.standard_normal(n)
                c = rng.standard_normal(n)
                np.testing.assert_allclose(fwht(x), naive_hadamard_multiply(x), atol=1e-9)
                np.testing.assert_allclose(circular_convolve(c, x), direct_circular_convolve(c, x), atol=1e-9)

    @pytest.mark.parametrize("construction", ["gaussian", "rademacher", "hadamard", "fourier", "circulant"])
    def test_operators(self, construction):
        """Тест: apply = densify x для 50 екземплярів, N <= 128."""
        rng = derive_rng(1, "points")
        for i in range(50):
            op = build_operator(construction, 32, 128, seed=i)
            dense = densify(op)
            x = rng.standard_normal(128)
            np.testing.assert_allclose(op.apply(x), dense @ x, atol=1e-10)


class TestInequalitySuites:
    """Deterministic inequality suites at their default sizes."""

    def test_rip_monotone_on_gaussian_matrices(self):
        """Тест: delta_1 <= delta_2 <= delta_3 для 100 матриць 8 x 16."""
        for i in range(100):
            Phi = build_operator("gaussian", 8, 16, seed=i).matrix
            deltas = [rip_constant_exact(Phi, k).delta for k in (1, 2, 3)]
            assert deltas[0] <= deltas[1] + 1e-12
            assert deltas[1] <= deltas[2] + 1e-12

    @pytest.mark.parametrize("suite", ["prop53", "prop54", "expansion", "tails"])
    def test_suite_has_no_violations(self, verification, suite):
        """Тест: набір на розмірах за замовчуванням без порушень."""
        report = verification.run(suite)

        assert report.violations == 0, [c for c in report.checks if not c.passed][:5]

    def test_theorem_suite(self, verification):
        """Тест: умови теореми та частота поганих подій."""
        assert verification.run("theorem").passed

    def test_null_space(self, verification):
        """Тест: N = 1024, m = 512, 1000 шаблонів знаків."""
        report = verification.run("nullspace", n=1024, m=512, sign_trials=1000)

        assert report.passed
        assert 0.8 <= report.summary["mean_ratio"] <= 1.2


class TestStatistical:
    """Scaled-down statistical checks of the embedding guarantee."""

    def test_success_rate_at_desk_scale(self):
        """Тест: N = 1024, p = 100, epsilon = 0.5, m = 256: успіх >= 0.95 за 200 seed."""
        cfg = TrialConfig(N=1024, m=256, p=100, epsilon=0.5, construction="gaussian")

        point = failure_rate(cfg, 200, jobs=settings.JOBS)

        assert 1.0 - point.rate >= 0.95

    def test_epsilon_scaling(self):
        """Тест: відношення m*(0.25)/m*(0.5) у [2.5, 6], нахил у [-2.5, -1.5]."""
        # Arrange
        template = TrialConfig(N=1024, m=1, p=100, epsilon=0.5, eta=0.1)

        def threshold(epsilon: float) -> int:
            cfg = template.model_copy(update={"epsilon": epsilon})
            return minimal_m(cfg, 1.0 - template.eta, (1, 8192), trials=200, jobs=settings.JOBS).m

        # Act
        ratio = threshold(0.25) / threshold(0.5)
        fit = scaling_exponent(SCALING_EPSILONS, [threshold(e) for e in SCALING_EPSILONS])

        # Assert
        assert 2.5 <= ratio <= 6.0
        assert -2.5 <= fit.slope <= -1.5
        assert math.isfinite(fit.stderr)
