"""Unit tests for core vectors, blocks, signs and seeding."""

import numpy as np
import pytest

from src.core.blocks import block_partition
from src.core.errors import DimensionError, EmbeddingError, NumericError, ParameterError, SearchRangeError
from src.core.seeding import PURPOSES, derive_rng, derive_seed
from src.core.signs import SignPattern, apply_sign_diagonal
from src.core.vectors import Permutation, PointSet, as_vector, decreasing_arrangement, is_decreasing


class TestAsVector:
    """Tests for as_vector validation."""

    def test_rejects_empty_vector(self):
        """Тест: порожній вектор дає DimensionError."""
        with pytest.raises(DimensionError):
            as_vector([])

    def test_rejects_non_finite_entries(self):
        """Тест: NaN та Inf відхиляються."""
        with pytest.raises(NumericError):
            as_vector([1.0, np.nan])
        with pytest.raises(NumericError):
            as_vector([np.inf])

    def test_rejects_matrix(self):
        """Тест: двовимірний вхід не є вектором."""
        with pytest.raises(DimensionError):
            as_vector([[1.0, 2.0]])

    def test_errors_are_value_errors(self):
        """Тест: ієрархія помилок походить від ValueError."""
        assert issubclass(EmbeddingError, ValueError)
        assert issubclass(DimensionError, EmbeddingError)


class TestDecreasingArrangement:
    """Tests for decreasing_arrangement."""

    def test_example_ordering(self):
        """Тест: x = (0.1, -3, 2) впорядковується за спаданням модуля."""
        # Act
        y, perm = decreasing_arrangement([0.1, -3.0, 2.0])

        # Assert
        assert y.tolist() == [-3.0, 2.0, 0.1]
        assert perm.one_based() == [2, 3, 1]

    def test_ties_keep_original_order(self):
        """Тест: рівні модулі зберігають початковий порядок."""
        y, perm = decreasing_arrangement([1.0, -1.0, 1.0])

        assert y.tolist() == [1.0, -1.0, 1.0]
        assert perm.order.tolist() == [0, 1, 2]

    def test_already_sorted_gives_identity(self):
        """Тест: вже впорядкований вектор дає тотожну перестановку."""
        _, perm = decreasing_arrangement([5.0, 4.0, -3.0, 0.0])

        assert perm.order.tolist() == [0, 1, 2, 3]

    def test_arrangement_is_decreasing_and_inverse_restores(self):
        """Тест: результат спадний, а обернена перестановка відновлює x."""
        # Arrange
        x = np.random.default_rng(0).standard_normal(50)

        # Act
        y, perm = decreasing_arrangement(x)

        # Assert
        assert is_decreasing(y)
        np.testing.assert_array_equal(perm.inverse().apply(y), x)

    def test_arrangement_is_idempotent_and_keeps_norm(self):
        """Тест: повторне впорядкування нічого не змінює, норма зберігається."""
        # Arrange
        x = np.random.default_rng(1).standard_normal(30)

        # Act
        y, _ = decreasing_arrangement(x)
        z, perm = decreasing_arrangement(y)

        # Assert
        np.testing.assert_array_equal(z, y)
        assert perm.order.tolist() == list(range(30))
        assert np.linalg.norm(y) == pytest.approx(np.linalg.norm(x))

    def test_permutation_rejects_duplicates(self):
        """Тест: перестановка з повтором індексу недійсна."""
        with pytest.raises(DimensionError):
            Permutation(np.array([0, 0, 1]))


class TestBlockPartition:
    """Tests for block_partition."""

    def test_uneven_last_block(self):
        """Тест: N=10, s=3 дає блоки 1..3, 4..6, 7..9, 10..10."""
        blocks = block_partition(10, 3)

        assert blocks.R == 4
        assert blocks.one_based() == [(1, 3), (4, 6), (7, 9), (10, 10)]

    def test_exact_division(self):
        """Тест: N=4, s=2 дає два блоки."""
        blocks = block_partition(4, 2)

        assert blocks.R == 2
        assert blocks.lengths() == [2, 2]

    def test_block_larger_than_dimension(self):
        """Тест: s > N дає один блок."""
        blocks = block_partition(3, 5)

        assert blocks.R == 1
        assert blocks.rest == (3, 3)

    def test_rejects_non_positive_block_size(self):
        """Тест: s = 0 дає ParameterError."""
        with pytest.raises(ParameterError):
            block_partition(4, 0)

    def test_labels_cover_every_index(self):
        """Тест: мітки блоків покривають усі координати по порядку."""
        labels = block_partition(7, 3).labels()

        assert labels.tolist() == [0, 0, 0, 1, 1, 1, 2]


class TestSigns:
    """Tests for SignPattern and D_xi."""

    def test_sign_diagonal_example(self):
        """Тест: D_xi x для x=(1,2,3), xi=(1,-1,1)."""
        result = apply_sign_diagonal([1.0, 2.0, 3.0], SignPattern.forced([1, -1, 1]))

        assert result.tolist() == [1.0, -2.0, 3.0]

    def test_sign_diagonal_is_an_involution(self):
        """Тест: подвійне застосування D_xi повертає x."""
        x = np.random.default_rng(1).standard_normal(16)
        xi = SignPattern.from_seed(16, 7)

        np.testing.assert_array_equal(apply_sign_diagonal(apply_sign_diagonal(x, xi), xi), x)

    def test_length_mismatch(self):
        """Тест: різні довжини x та xi дають DimensionError."""
        with pytest.raises(DimensionError):
            apply_sign_diagonal([1.0, 2.0], SignPattern.forced([1, 1, 1]))

    def test_rejects_non_sign_entries(self):
        """Тест: значення, відмінні від ±1, відхиляються."""
        with pytest.raises(ParameterError):
            SignPattern.forced([1, 0, -1])

    def test_same_seed_same_signs(self):
        """Тест: однаковий seed дає однакові знаки."""
        a = SignPattern.from_seed(32, 11)
        b = SignPattern.from_seed(32, 11)

        np.testing.assert_array_equal(a.signs, b.signs)
        assert set(np.unique(a.signs)) <= {-1.0, 1.0}


class TestSeeding:
    """Tests for derive_rng / derive_seed."""

    def test_purposes_give_independent_streams(self):
        """Тест: різні цілі з одним seed дають різні потоки."""
        a = derive_rng(5, "matrix").standard_normal(8)
        b = derive_rng(5, "signs").standard_normal(8)

        assert not np.array_equal(a, b)

    def test_counters_are_reproducible(self):
        """Тест: (seed, ціль, лічильник) відтворює той самий дочірній seed."""
        assert derive_seed(3, "trial-matrix", 4) == derive_seed(3, "trial-matrix", 4)
        assert derive_seed(3, "trial-matrix", 4) != derive_seed(3, "trial-matrix", 5)

    def test_unknown_purpose(self):
        """Тест: невідома ціль відхиляється."""
        with pytest.raises(KeyError):
            derive_rng(0, "unknown")

    def test_purpose_codes_are_unique(self):
        """Тест: коди цілей унікальні."""
        assert len(set(PURPOSES.values())) == len(PURPOSES)


class TestPointSet:
    """Tests for PointSet."""

    def test_from_vectors_rejects_ragged(self):
        """Тест: точки різної розмірності відхиляються."""
        with pytest.raises(DimensionError):
            PointSet.from_vectors([[1.0, 2.0], [1.0]])

    def test_points_are_read_only(self):
        """Тест: масив точок незмінний."""
        E = PointSet(np.eye(3))

        with pytest.raises(ValueError):
            E.points[0, 0] = 5.0
        assert E.p == 3 and E.dim == 3


class TestSearchRangeError:
    """Tests for SearchRangeError."""

    def test_carries_history(self):
        """Тест: помилка пошуку зберігає історію проб."""
        err = SearchRangeError("out of range", history=[1, 2])

        assert err.history == [1, 2]
        assert isinstance(err, EmbeddingError)
