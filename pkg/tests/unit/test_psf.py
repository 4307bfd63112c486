"""Tests for the psf module."""

import math
from collections import abc

import numpy as np
import pytest

from guided_deconv.core import exceptions
from guided_deconv.imaging import psf

BENCHMARK_KERNELS = [
    psf.psf_radial,
    psf.psf_boxcar,
    psf.psf_binomial,
    psf.psf_gaussian,
]


def test_radial_raw_weights() -> None:
    """Test the center and corner of the raw radial weights."""
    weights = psf.radial_weights()

    assert weights.shape == (15, 15)
    assert weights[7, 7] == 1.0
    assert weights[14, 14] == pytest.approx(1.0 / 99.0)
    assert weights[0, 0] == pytest.approx(1.0 / 99.0)


def test_radial_is_normalized_raw_weights() -> None:
    """Test that the radial kernel is the raw weights over their sum."""
    raw = psf.radial_weights()

    kernel = psf.psf_radial()

    np.testing.assert_allclose(kernel.weights, raw / raw.sum(), rtol=1e-14)


def test_boxcar_is_uniform() -> None:
    """Test that every boxcar weight is 1/81."""
    kernel = psf.psf_boxcar()

    assert (kernel.size_x, kernel.size_y) == (9, 9)
    np.testing.assert_allclose(kernel.weights, 1.0 / 81.0, rtol=1e-15)
    assert kernel.weights[4, 4] == kernel.weights[0, 0]


def test_binomial_weights() -> None:
    """Test the center and corner of the binomial kernel."""
    kernel = psf.psf_binomial()

    assert kernel.weights[2, 2] == 36.0 / 256.0
    assert kernel.weights[0, 0] == 1.0 / 256.0


def test_gaussian_shape() -> None:
    """Test the support, peak and decay of the Gaussian kernel."""
    kernel = psf.psf_gaussian()
    center = kernel.center[1], kernel.center[0]
    expected_ratio = math.exp(-1.0 / (2 * 1.6**2))

    actual_ratio = kernel.weights[center[0], center[1] + 1] / kernel.weights[center]

    assert (kernel.size_x, kernel.size_y) == (25, 25)
    assert kernel.weights[center] == kernel.weights.max()
    assert actual_ratio == pytest.approx(expected_ratio, rel=1e-12)
    assert actual_ratio == pytest.approx(0.8226, abs=1e-4)


def test_gaussian_rejects_even_size() -> None:
    """Test that an even Gaussian support is rejected."""
    with pytest.raises(exceptions.InputError):
        psf.psf_gaussian(size=24)


def test_gaussian_rejects_nonpositive_sigma() -> None:
    """Test that sigma must be positive."""
    with pytest.raises(exceptions.InputError):
        psf.psf_gaussian(sigma=0.0)


@pytest.mark.parametrize("builder", BENCHMARK_KERNELS)
def test_benchmark_kernels_unit_sum(builder: abc.Callable[[], psf.Kernel]) -> None:
    """Test that the benchmark kernels sum to one."""
    kernel = builder()

    assert kernel.weights.sum() == pytest.approx(1.0, abs=1e-12)
    assert psf.kernel_l1(kernel) == pytest.approx(1.0, abs=1e-12)
    assert np.all(kernel.weights >= 0)


@pytest.mark.parametrize("builder", BENCHMARK_KERNELS)
def test_benchmark_kernels_symmetric(builder: abc.Callable[[], psf.Kernel]) -> None:
    """Test point and transpose symmetry of the benchmark kernels."""
    weights = builder().weights

    np.testing.assert_allclose(weights, weights[::-1, ::-1], rtol=0, atol=1e-15)
    np.testing.assert_allclose(weights, weights.T, rtol=0, atol=1e-15)


def test_kernel_l1_unnormalized_boxcar() -> None:
    """Test the l1 norm of a 9x9 kernel of ones."""
    assert psf.kernel_l1(psf.Kernel(np.ones((9, 9)))) == 81.0


def test_kernel_l1_unnormalized_radial() -> None:
    """Test the l1 norm of the raw radial weights against a loop."""
    expected = 0.0
    for i in range(-7, 8):
        for j in range(-7, 8):
            expected += 1.0 / (1 + i * i + j * j)

    actual = psf.kernel_l1(psf.Kernel(psf.radial_weights()))

    assert actual == pytest.approx(expected, rel=1e-12)


def test_kernel_rejects_even_support() -> None:
    """Test that kernels need odd support."""
    with pytest.raises(exceptions.InputError):
        psf.Kernel(np.ones((3, 4)))


def test_kernel_center() -> None:
    """Test the anchor of a rectangular kernel."""
    assert psf.Kernel(np.ones((3, 5))).center == (2, 1)


def test_normalize_zero_sum() -> None:
    """Test that zero-sum kernels cannot be normalized."""
    with pytest.raises(exceptions.InputError):
        psf.Kernel(np.array([[1.0, 0.0, -1.0]])).normalized()
