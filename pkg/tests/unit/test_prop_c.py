"""Unit tests for the coupling matrix, cross vector and three-term expansion."""

import numpy as np
import pytest

from src.analysis.prop_c import expansion_terms, proof_term_exceedance, prop_c_check, prop_c_quantities
from src.analysis.rip import rip_constant_exact
from src.constructions.builders import build_explicit, build_operator, build_subgaussian, randomize_signs
from src.core.errors import DimensionError, ParameterError
from src.core.seeding import derive_rng
from src.core.vectors import PointSet


def random_decreasing_unit(N: int, seed: int) -> np.ndarray:
    """Unit vector sorted by decreasing magnitude."""
    x = derive_rng(seed, "points").standard_normal(N)
    x /= np.linalg.norm(x)
    return x[np.argsort(-np.abs(x), kind="stable")]


@pytest.fixture
def gaussian_20x40():
    """Гаусова матриця 20 x 40."""
    return build_subgaussian(20, 40, seed=0).matrix


class TestPropCQuantities:
    """Tests for prop_c_quantities."""

    def test_two_blocks_give_zero_coupling(self):
        """Тест: N <= 2s означає, що C = 0."""
        Phi = np.random.default_rng(0).standard_normal((3, 4))
        x = random_decreasing_unit(4, 1)

        C, v = prop_c_quantities(Phi, x, 2, [1, -1])

        assert np.all(C == 0.0)
        assert v.shape == (4,)
        assert np.all(v[:2] == 0.0)

    def test_orthonormal_columns(self):
        """Тест: для ортонормованих стовпців C = 0 та v = 0."""
        x = random_decreasing_unit(8, 2)

        C, v = prop_c_quantities(np.eye(8), x, 2, [1, 1])

        np.testing.assert_allclose(C, 0.0, atol=1e-15)
        np.testing.assert_allclose(v, 0.0, atol=1e-15)

    def test_mass_on_first_block_only(self, gaussian_20x40):
        """Тест: x з носієм у першому блоці дає C = 0 та v = 0."""
        x = np.zeros(40)
        x[:2] = [0.8, 0.6]

        C, v = prop_c_quantities(gaussian_20x40, x, 2, [1, -1])

        assert np.all(C == 0.0)
        assert np.all(v == 0.0)

    def test_coupling_is_symmetric_and_block_off_diagonal(self, gaussian_20x40):
        """Тест: C симетрична, а блоки на діагоналі та перший блок нульові."""
        x = random_decreasing_unit(40, 3)

        C, _ = prop_c_quantities(gaussian_20x40, x, 4, [1, -1, 1, 1])

        np.testing.assert_allclose(C, C.T)
        assert np.all(C[:4] == 0.0) and np.all(C[:, :4] == 0.0)
        assert np.all(C[4:8, 4:8] == 0.0)

    def test_rejects_unsorted_vector(self):
        """Тест: вектор не у спадному порядку відхиляється."""
        with pytest.raises(ParameterError):
            prop_c_quantities(np.eye(3), [0.1, 0.5, 0.2], 1, [1])

    def test_rejects_norm_above_one(self):
        """Тест: ||x|| > 1 відхиляється."""
        with pytest.raises(ParameterError):
            prop_c_quantities(np.eye(3), [2.0, 1.0, 0.5], 1, [1])

    def test_rejects_wrong_sign_length(self):
        """Тест: b довжини, відмінної від s, відхиляється."""
        with pytest.raises(DimensionError):
            prop_c_quantities(np.eye(4), [0.5, 0.5, 0.5, 0.5], 2, [1])


class TestPropCCheck:
    """Tests for prop_c_check against exact RIP constants."""

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_bounds_hold_with_exact_delta(self, gaussian_20x40, seed):
        """Тест: ||C|| <= delta/s, ||C||_F <= delta/sqrt(s), ||v|| <= delta/sqrt(s)."""
        # Arrange
        x = random_decreasing_unit(40, 10 + seed)
        b = derive_rng(seed, "signs").integers(0, 2, size=2) * 2.0 - 1.0

        # Act
        report = prop_c_check(gaussian_20x40, x, 2, b)

        # Assert
        assert report.delta == pytest.approx(rip_constant_exact(gaussian_20x40, 4).delta)
        assert report.all_passed
        assert report.bounds[0] == pytest.approx(report.delta / 2)

    def test_explicit_delta_is_used(self, gaussian_20x40):
        """Тест: переданий delta використовується без перерахунку."""
        x = random_decreasing_unit(40, 5)

        report = prop_c_check(gaussian_20x40, x, 2, [1, 1], delta=0.0)

        assert report.delta == 0.0
        assert report.bounds == (0.0, 0.0, 0.0)


class TestExpansionTerms:
    """Tests for expansion_terms."""

    @pytest.mark.parametrize("construction,m", [("gaussian", 20), ("hadamard", 16), ("circulant", 20)])
    def test_terms_add_up(self, construction, m):
        """Тест: term1 + term2 + term3 = ||Phi D_xi x||^2."""
        # Arrange
        N = 32 if construction == "hadamard" else 40
        op = randomize_signs(build_operator(construction, m, N, seed=3), seed=4)
        x = derive_rng(5, "points").standard_normal(N)

        # Act
        terms = expansion_terms(op, x, 2)

        # Assert
        assert terms.residual <= 1e-10 * max(1.0, terms.total)

    def test_single_block_has_no_cross_terms(self):
        """Тест: s >= N дає лише перший доданок."""
        op = randomize_signs(build_subgaussian(5, 6, seed=0), seed=1)

        terms = expansion_terms(op, np.arange(1.0, 7.0), 10)

        assert terms.term2 == 0.0 and terms.term3 == 0.0
        assert terms.term1 == pytest.approx(terms.total)

    def test_identity_keeps_energy(self):
        """Тест: для тотожного Phi лише term1 ненульовий."""
        op = randomize_signs(build_explicit(np.eye(6)), seed=2)
        x = np.array([3.0, -1.0, 2.0, 0.5, 0.0, 1.0])

        terms = expansion_terms(op, x, 2)

        assert terms.term1 == pytest.approx(float(x @ x))
        assert terms.term2 == pytest.approx(0.0, abs=1e-12)
        assert terms.term3 == pytest.approx(0.0, abs=1e-12)


class TestProofTermExceedance:
    """Tests for proof_term_exceedance."""

    def test_identity_never_exceeds(self):
        """Тест: для тотожного Phi перехресні доданки нульові."""
        op = build_explicit(np.eye(16))
        samples = PointSet(derive_rng(0, "points").standard_normal((4, 16)))

        report = proof_term_exceedance(op, samples, s=2, delta=0.0, epsilon=0.5, sign_trials=50)

        assert report.passed
        assert report.total_fraction == 0.0
        assert report.draws == 200

    def test_tiny_m_exceeds(self):
        """Тест: m = 2 для N = 16 часто перевищує пороги."""
        op = build_subgaussian(2, 16, seed=0)
        samples = PointSet(derive_rng(1, "points").standard_normal((5, 16)))

        report = proof_term_exceedance(op, samples, s=2, delta=1.0, epsilon=0.5, sign_trials=100,
                                       reference="epsilon")

        assert report.total_fraction > 0.0
        assert report.cross_threshold == pytest.approx(0.1)
        assert report.chaos_threshold == pytest.approx(0.275)

    def test_delta_thresholds(self):
        """Тест: за замовчуванням пороги 0.2 delta та 0.55 delta."""
        # Arrange
        op = build_subgaussian(2, 16, seed=0)
        samples = PointSet(derive_rng(1, "points").standard_normal((5, 16)))

        # Act
        small = proof_term_exceedance(op, samples, s=2, delta=0.5, epsilon=0.5, sign_trials=100)
        huge = proof_term_exceedance(op, samples, s=2, delta=1e6, epsilon=0.5, sign_trials=100)

        # Assert
        assert small.reference == "delta"
        assert small.cross_threshold == pytest.approx(0.1)
        assert small.chaos_threshold == pytest.approx(0.275)
        assert huge.total_fraction == 0.0
        assert small.total_fraction >= huge.total_fraction

    def test_unknown_reference(self):
        """Тест: невідома шкала порогів дає ParameterError."""
        with pytest.raises(ParameterError):
            proof_term_exceedance(build_explicit(np.eye(4)), PointSet(np.ones((1, 4))), 1, 0.0, 0.5,
                                  reference="kappa")

    def test_zero_samples_rejected(self):
        """Тест: лише нульові точки дають ParameterError."""
        with pytest.raises(ParameterError):
            proof_term_exceedance(build_explicit(np.eye(4)), PointSet(np.zeros((2, 4))), 1, 0.0, 0.5)

    def test_epsilon_range(self):
        """Тест: epsilon поза (0, 1) відхиляється."""
        with pytest.raises(ParameterError):
            proof_term_exceedance(build_explicit(np.eye(4)), PointSet(np.ones((1, 4))), 1, 0.0, 1.0)
