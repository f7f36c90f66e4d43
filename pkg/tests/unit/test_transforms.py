"""Unit tests for the Walsh-Hadamard and Fourier transforms."""

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st
from hypothesis.extra.numpy import arrays

from src.core.errors import DimensionError, ParameterError
from src.transforms.fourier import circular_convolve, dft, direct_circular_convolve, idft
from src.transforms.hadamard import fwht, is_power_of_two, naive_hadamard_multiply

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)


class TestFwht:
    """Tests for fwht."""

    def test_length_two(self):
        """Тест: fwht((1, 0)) = (1, 1)."""
        assert fwht([1.0, 0.0]).tolist() == [1.0, 1.0]

    def test_constant_vector(self):
        """Тест: fwht((1, 1, 1, 1)) = (4, 0, 0, 0)."""
        assert fwht([1.0, 1.0, 1.0, 1.0]).tolist() == [4.0, 0.0, 0.0, 0.0]

    def test_rejects_non_power_of_two(self):
        """Тест: довжина 3 дає ParameterError."""
        with pytest.raises(ParameterError):
            fwht([1.0, 2.0, 3.0])

    def test_rejects_empty(self):
        """Тест: порожній вхід дає DimensionError."""
        with pytest.raises(DimensionError):
            fwht([])

    @pytest.mark.parametrize("n", [2 ** j for j in range(1, 11)])
    def test_matches_naive_multiply(self, n):
        """Тест: швидке перетворення збігається з множенням на матрицю Адамара."""
        # Arrange
        rng = np.random.default_rng(n)
        x = rng.standard_normal(n)

        # Act & Assert
        np.testing.assert_allclose(fwht(x), naive_hadamard_multiply(x), atol=1e-9)

    def test_columns_transform_independently(self):
        """Тест: N x k вхід перетворюється по стовпцях."""
        X = np.random.default_rng(3).standard_normal((16, 5))

        result = fwht(X)

        for j in range(5):
            np.testing.assert_allclose(result[:, j], fwht(X[:, j]), atol=1e-12)

    @hyp_settings(max_examples=50, deadline=None)
    @given(x=arrays(np.float64, (32,), elements=finite))
    def test_applying_twice_scales_by_n(self, x):
        """Тест: H H x = N x."""
        np.testing.assert_allclose(fwht(fwht(x)), 32 * x, atol=1e-6)

    def test_power_of_two_helper(self):
        """Тест: перевірка степеня двійки."""
        assert is_power_of_two(1) and is_power_of_two(1024)
        assert not is_power_of_two(0) and not is_power_of_two(12)


class TestDft:
    """Tests for dft / idft."""

    def test_delta_transforms_to_ones(self):
        """Тест: dft((1, 0, 0, 0)) = (1, 1, 1, 1)."""
        np.testing.assert_allclose(dft([1.0, 0.0, 0.0, 0.0]), np.ones(4), atol=1e-12)

    def test_constant_transforms_to_spike(self):
        """Тест: dft((1, 1)) = (2, 0)."""
        np.testing.assert_allclose(dft([1.0, 1.0]), [2.0, 0.0], atol=1e-12)

    def test_fast_path_needs_power_of_two(self):
        """Тест: швидкий шлях для N=6 відхиляється."""
        with pytest.raises(ParameterError):
            dft(np.ones(6), method="fast")

    def test_naive_path_for_any_length(self):
        """Тест: N=6 обчислюється наївним шляхом і збігається з numpy."""
        x = np.random.default_rng(6).standard_normal(6)

        np.testing.assert_allclose(dft(x), np.fft.fft(x), atol=1e-10)

    @pytest.mark.parametrize("n", [2, 5, 8, 12, 64])
    def test_round_trip(self, n):
        """Тест: idft(dft(x)) = x."""
        x = np.random.default_rng(n).standard_normal(n)

        np.testing.assert_allclose(idft(dft(x)).real, x, atol=1e-10)

    @pytest.mark.parametrize("n", [8, 12, 64])
    def test_parseval(self, n):
        """Тест: сума |X_f|^2 дорівнює N ||x||^2."""
        x = np.random.default_rng(n + 1).standard_normal(n)

        spectrum = dft(x)

        assert np.sum(np.abs(spectrum) ** 2) == pytest.approx(n * float(x @ x), rel=1e-12)

    def test_fast_and_naive_agree(self):
        """Тест: швидкий та наївний шляхи збігаються."""
        x = np.random.default_rng(9).standard_normal(64)

        np.testing.assert_allclose(dft(x, method="fast"), dft(x, method="naive"), atol=1e-9)


class TestCircularConvolve:
    """Tests for circular_convolve."""

    def test_delta_kernel_is_identity(self):
        """Тест: згортка з дельтою повертає x."""
        np.testing.assert_allclose(circular_convolve([1.0, 0.0, 0.0], [3.0, 4.0, 5.0]), [3.0, 4.0, 5.0], atol=1e-12)

    def test_shift_kernel_rotates(self):
        """Тест: c = (0, 1, 0) зсуває x = (3, 4, 5) у (5, 3, 4)."""
        np.testing.assert_allclose(circular_convolve([0.0, 1.0, 0.0], [3.0, 4.0, 5.0]), [5.0, 3.0, 4.0], atol=1e-12)

    def test_length_mismatch(self):
        """Тест: різні довжини дають DimensionError."""
        with pytest.raises(DimensionError):
            circular_convolve([1.0, 0.0], [1.0, 2.0, 3.0])

    @pytest.mark.parametrize("n", [2, 3, 16, 100, 1024])
    def test_matches_direct_product(self, n):
        """Тест: швидка згортка збігається з множенням на циркулянт."""
        rng = np.random.default_rng(100 + n)
        c = rng.standard_normal(n)
        x = rng.standard_normal(n)

        np.testing.assert_allclose(circular_convolve(c, x), direct_circular_convolve(c, x), atol=1e-9)

    @hyp_settings(max_examples=30, deadline=None)
    @given(c=arrays(np.float64, (8,), elements=finite), x=arrays(np.float64, (8,), elements=finite))
    def test_convolution_commutes(self, c, x):
        """Тест: c * x = x * c."""
        np.testing.assert_allclose(circular_convolve(c, x), circular_convolve(x, c), atol=1e-6)
