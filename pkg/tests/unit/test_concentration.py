"""Unit tests for Hoeffding and Rademacher-chaos tail bounds."""

import math

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from src.analysis.concentration import chaos_bound, hoeffding_bound, tail_check
from src.core.errors import DimensionError, ParameterError

X_PAIR = np.array([[0.0, 1.0], [1.0, 0.0]])


class TestHoeffdingBound:
    """Tests for hoeffding_bound."""

    def test_unit_norm_at_threshold_of_one(self):
        """Тест: ||x|| = 1, t^2 = 2 ln 2 дає рівно 1."""
        assert hoeffding_bound([0.6, 0.8], math.sqrt(2 * math.log(2))) == pytest.approx(1.0)

    def test_single_coefficient(self):
        """Тест: x = (1), t = 2 дає 2 e^-2."""
        assert hoeffding_bound([1.0], 2.0) == pytest.approx(0.2707, abs=1e-4)

    def test_zero_vector_rejected(self):
        """Тест: нульовий вектор відхиляється."""
        with pytest.raises(ParameterError):
            hoeffding_bound([0.0, 0.0], 1.0)

    def test_non_positive_t_rejected(self):
        """Тест: t <= 0 відхиляється."""
        with pytest.raises(ParameterError):
            hoeffding_bound([1.0], 0.0)

    @hyp_settings(max_examples=50, deadline=None)
    @given(c=st.floats(min_value=0.1, max_value=10.0), t=st.floats(min_value=0.1, max_value=5.0))
    def test_scale_invariance(self, c, t):
        """Тест: bound(c x, c t) = bound(x, t)."""
        x = np.array([0.3, -1.2, 0.5])

        assert hoeffding_bound(c * x, c * t) == pytest.approx(hoeffding_bound(x, t), rel=1e-9)


class TestChaosBound:
    """Tests for chaos_bound."""

    def test_pair_matrix(self):
        """Тест: x12 = x21 = 1, t = 1 дає 2 exp(-1/128)."""
        assert chaos_bound(X_PAIR, 1.0) == pytest.approx(2.0 * math.exp(-1.0 / 128.0))

    def test_zero_matrix_gives_zero(self):
        """Тест: нульова матриця дає нульову оцінку."""
        assert chaos_bound(np.zeros((3, 3)), 1.0) == 0.0

    def test_nonzero_diagonal_rejected(self):
        """Тест: ненульова діагональ відхиляється."""
        with pytest.raises(ParameterError):
            chaos_bound(np.eye(2), 1.0)

    def test_non_square_rejected(self):
        """Тест: неквадратна матриця відхиляється."""
        with pytest.raises(DimensionError):
            chaos_bound(np.zeros((2, 3)), 1.0)

    @pytest.mark.parametrize("c", [0.5, 2.0, 7.0])
    def test_homogeneity(self, c):
        """Тест: bound(c X, c t) = bound(X, t)."""
        X = np.random.default_rng(0).standard_normal((6, 6))
        X = X + X.T
        np.fill_diagonal(X, 0.0)

        assert chaos_bound(c * X, c * 1.5) == pytest.approx(chaos_bound(X, 1.5))


class TestTailCheck:
    """Tests for tail_check."""

    def test_chaos_above_range_never_hit(self):
        """Тест: 2 xi1 xi2 = ±2, тож при t = 3 частота нульова."""
        result = tail_check("chaos", X_PAIR, 3.0, trials=1000, seed=0)

        assert result.empirical_freq == 0.0
        assert result.passed

    def test_chaos_at_attained_value(self):
        """Тест: при t = 2 кожна вибірка дає |stat| >= t."""
        result = tail_check("chaos", X_PAIR, 2.0, trials=1000, seed=0)

        assert result.empirical_freq == 1.0
        assert result.passed

    def test_hoeffding_frequency_below_bound(self):
        """Тест: емпірична частота сум Радемахера не перевищує оцінку."""
        x = np.ones(64) / 8.0

        result = tail_check("hoeffding", x, 2.0, trials=20000, seed=3)

        assert result.passed
        assert result.empirical_freq <= result.bound + result.slack

    def test_same_seed_same_frequency(self):
        """Тест: однаковий seed дає однакову частоту."""
        x = np.random.default_rng(1).standard_normal(16)

        a = tail_check("hoeffding", x, 1.0, trials=2000, seed=9)
        b = tail_check("hoeffding", x, 1.0, trials=2000, seed=9)

        assert a.empirical_freq == b.empirical_freq

    def test_too_few_trials(self):
        """Тест: менше 1000 випробувань відхиляється."""
        with pytest.raises(ParameterError):
            tail_check("hoeffding", [1.0], 0.5, trials=999)

    def test_unknown_kind(self):
        """Тест: невідомий тип хвоста відхиляється."""
        with pytest.raises(ParameterError):
            tail_check("gaussian", [1.0], 0.5, trials=1000)
