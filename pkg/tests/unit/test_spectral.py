"""Tests for the spectral module."""

from collections import abc

import numpy as np
import pytest

from guided_deconv.core import exceptions
from guided_deconv.imaging import image, psf
from guided_deconv.restoration import spectral

LAMBDAS = (1e-4, 1e-2, 1.0, 1e2)


def _convolve_loop(img: image.Image, kernel: psf.Kernel) -> np.ndarray:
    """Direct circular convolution, the spatial-domain oracle."""
    height, width = img.data.shape
    center_x, center_y = kernel.center
    output = np.zeros((height, width))
    for row in range(height):
        for col in range(width):
            for ky in range(kernel.size_y):
                for kx in range(kernel.size_x):
                    dy, dx = ky - center_y, kx - center_x
                    output[row, col] += (
                        kernel.weights[ky, kx]
                        * img.data[(row - dy) % height, (col - dx) % width]
                    )
    return output


def _convolution_matrix(kernel: psf.Kernel, width: int, height: int) -> np.ndarray:
    """Dense circulant matrix of the circular convolution."""
    n_pixels = width * height
    matrix = np.zeros((n_pixels, n_pixels))
    for index in range(n_pixels):
        basis = np.zeros(n_pixels)
        basis[index] = 1.0
        response = _convolve_loop(image.Image(basis.reshape(height, width)), kernel)
        matrix[:, index] = response.ravel()
    return matrix


def _difference_matrices(width: int, height: int) -> tuple[np.ndarray, np.ndarray]:
    """Dense periodic forward difference matrices along x and y."""
    n_pixels = width * height
    diff_x = np.zeros((n_pixels, n_pixels))
    diff_y = np.zeros((n_pixels, n_pixels))
    for row in range(height):
        for col in range(width):
            index = row * width + col
            diff_x[index, index] = -1.0
            diff_x[index, row * width + (col + 1) % width] += 1.0
            diff_y[index, index] = -1.0
            diff_y[index, ((row + 1) % height) * width + col] += 1.0
    return diff_x, diff_y


def test_fft2_constant() -> None:
    """Test that a constant image only has a DC coefficient."""
    spectrum = spectral.fft2(image.Image.constant(0.25, 6, 4))
    expected = np.zeros((4, 6), dtype=complex)
    expected[0, 0] = 0.25 * 24

    np.testing.assert_allclose(spectrum.values, expected, atol=1e-12)


def test_fft2_impulse() -> None:
    """Test that an impulse at the origin has a flat spectrum."""
    data = np.zeros((8, 8))
    data[0, 0] = 1.0

    spectrum = spectral.fft2(image.Image(data))

    np.testing.assert_allclose(spectrum.values, np.ones((8, 8)), atol=1e-12)


@pytest.mark.parametrize(("width", "height"), [(16, 16), (12, 10), (7, 9)])
def test_fft_round_trip(
    random_image: abc.Callable[[int, int], image.Image],
    width: int,
    height: int,
) -> None:
    """Test that the inverse transform undoes the forward transform."""
    img = random_image(width, height)

    actual = spectral.ifft2_real(spectral.fft2(img))

    np.testing.assert_allclose(actual.data, img.data, rtol=0, atol=1e-10)


def test_fft2_conjugate_symmetry(
    random_image: abc.Callable[[int, int], image.Image],
) -> None:
    """Test conjugate symmetry of the spectrum of a real image."""
    values = spectral.fft2(random_image(10, 6)).values
    mirrored = np.roll(values[::-1, ::-1], shift=(1, 1), axis=(0, 1))

    np.testing.assert_allclose(values, np.conj(mirrored), atol=1e-9)


def test_ifft2_real_rejects_complex_images() -> None:
    """Test that a spectrum of a complex image is not silently truncated."""
    values = np.zeros((4, 4), dtype=complex)
    values[0, 1] = 16.0

    with pytest.raises(exceptions.InternalError):
        spectral.ifft2_real(spectral.Spectrum(values))


def test_psf_to_otf_identity() -> None:
    """Test that the identity kernel has a flat transfer function."""
    otf = spectral.psf_to_otf(psf.identity(), 8, 6)

    np.testing.assert_allclose(otf.values, np.ones((6, 8)), atol=1e-15)


def test_psf_to_otf_unit_dc() -> None:
    """Test that a unit-sum kernel has unit DC gain."""
    otf = spectral.psf_to_otf(psf.psf_boxcar(), 256, 256)

    assert otf.values[0, 0] == pytest.approx(1.0, abs=1e-10)


def test_psf_to_otf_matches_spatial_convolution(
    random_image: abc.Callable[[int, int], image.Image],
    random_kernel: abc.Callable[[int], psf.Kernel],
) -> None:
    """Test that multiplying by the OTF is circular convolution."""
    img = random_image(8, 8)
    kernel = random_kernel(3)
    otf = spectral.psf_to_otf(kernel, 8, 8)

    actual = spectral.ifft2_real(
        spectral.Spectrum(otf.values * spectral.fft2(img).values),
    )

    np.testing.assert_allclose(actual.data, _convolve_loop(img, kernel), atol=1e-10)


def test_psf_to_otf_kernel_too_large() -> None:
    """Test that a kernel larger than the grid is rejected."""
    with pytest.raises(exceptions.InputError):
        spectral.psf_to_otf(psf.psf_boxcar(), 8, 8)


def test_gradient_spectrum_values() -> None:
    """Test the gradient response at DC and at the horizontal Nyquist."""
    grad = spectral.gradient_spectrum(8, 6)

    assert grad.values[0, 0] == 0.0
    assert grad.values[0, 4] == pytest.approx(4.0, abs=1e-15)
    assert grad.values.min() >= 0.0
    assert grad.values.max() <= 8.0 + 1e-15


def test_gradient_spectrum_matches_difference_kernels() -> None:
    """Test the gradient response against OTFs of difference kernels."""
    forward_x = psf.Kernel(np.array([[1.0, -1.0, 0.0]]))
    forward_y = psf.Kernel(np.array([[1.0], [-1.0], [0.0]]))
    expected = (
        np.abs(spectral.psf_to_otf(forward_x, 10, 6).values) ** 2
        + np.abs(spectral.psf_to_otf(forward_y, 10, 6).values) ** 2
    )

    actual = spectral.gradient_spectrum(10, 6)

    np.testing.assert_allclose(actual.values, expected, rtol=0, atol=1e-12)


def test_circular_convolve_identity(
    random_image: abc.Callable[[int, int], image.Image],
) -> None:
    """Test that the identity kernel leaves the image unchanged."""
    img = random_image(9, 7)

    actual = spectral.circular_convolve(img, psf.identity())

    np.testing.assert_allclose(actual.data, img.data, atol=1e-12)


def test_circular_convolve_constant() -> None:
    """Test that a unit-sum blur preserves constants."""
    img = image.Image.constant(0.6, 32, 32)

    actual = spectral.circular_convolve(img, psf.psf_radial())

    np.testing.assert_allclose(actual.data, 0.6, atol=1e-12)


@pytest.mark.parametrize(("width", "height"), [(8, 8), (9, 6)])
def test_circular_convolve_matches_loop(
    random_image: abc.Callable[[int, int], image.Image],
    random_kernel: abc.Callable[[int], psf.Kernel],
    width: int,
    height: int,
) -> None:
    """Test the FFT convolution against a wrapped spatial loop."""
    img = random_image(width, height)
    kernel = random_kernel(3)

    actual = spectral.circular_convolve(img, kernel)

    np.testing.assert_allclose(actual.data, _convolve_loop(img, kernel), atol=1e-10)


def test_deblur_guidance_large_lambda(
    random_image: abc.Callable[[int, int], image.Image],
) -> None:
    """Test that heavy regularization returns the pre-estimate off DC."""
    y = random_image(16, 16)
    estimate = random_image(16, 16)
    otf = spectral.psf_to_otf(psf.psf_binomial(), 16, 16)

    actual = spectral.deblur_guidance(
        spectral.fft2(y),
        otf,
        spectral.gradient_spectrum(16, 16),
        spectral.fft2(estimate),
        1e12,
    )

    centered_actual = actual.data - actual.data.mean()
    centered_estimate = estimate.data - estimate.data.mean()
    np.testing.assert_allclose(centered_actual, centered_estimate, atol=1e-4)


def test_deblur_guidance_identity_without_regularization(
    random_image: abc.Callable[[int, int], image.Image],
) -> None:
    """Test that λ=0 with no blur returns the observation."""
    y = random_image(8, 8)

    actual = spectral.deblur_guidance(
        spectral.fft2(y),
        spectral.psf_to_otf(psf.identity(), 8, 8),
        spectral.gradient_spectrum(8, 8),
        spectral.fft2(random_image(8, 8)),
        0.0,
    )

    np.testing.assert_allclose(actual.data, y.data, atol=1e-10)


def test_deblur_guidance_infinite_lambda(
    random_image: abc.Callable[[int, int], image.Image],
) -> None:
    """Test the λ→∞ limit: u_E off DC and the deblurred mean at DC."""
    y = random_image(8, 8)
    estimate = random_image(8, 8)

    actual = spectral.deblur_guidance(
        spectral.fft2(y),
        spectral.psf_to_otf(psf.psf_binomial(), 8, 8),
        spectral.gradient_spectrum(8, 8),
        spectral.fft2(estimate),
        np.inf,
    )

    expected = estimate.data - estimate.data.mean() + y.data.mean()
    np.testing.assert_allclose(actual.data, expected, atol=1e-12)


@pytest.mark.parametrize("instance", range(10))
def test_deblur_guidance_matches_dense_solve(
    random_image: abc.Callable[[int, int], image.Image],
    random_kernel: abc.Callable[[int], psf.Kernel],
    instance: int,
) -> None:
    """Test against the normal equations of the gradient-regularized cost."""
    y = random_image(8, 8)
    estimate = random_image(8, 8)
    kernel = random_kernel(3)
    lambda_value = 10.0 ** (instance - 5)
    blur = _convolution_matrix(kernel, 8, 8)
    diff_x, diff_y = _difference_matrices(8, 8)
    laplacian = diff_x.T @ diff_x + diff_y.T @ diff_y
    system = blur.T @ blur + lambda_value * laplacian
    rhs = blur.T @ y.data.ravel() + lambda_value * laplacian @ estimate.data.ravel()
    expected = np.linalg.solve(system, rhs).reshape(8, 8)

    actual = spectral.deblur_guidance(
        spectral.fft2(y),
        spectral.psf_to_otf(kernel, 8, 8),
        spectral.gradient_spectrum(8, 8),
        spectral.fft2(estimate),
        lambda_value,
    )

    np.testing.assert_allclose(actual.data, expected, rtol=0, atol=1e-8)


def test_deblur_input_identity_without_regularization(
    random_image: abc.Callable[[int, int], image.Image],
) -> None:
    """Test that λ=0 with no blur returns the observation."""
    y = random_image(8, 8)

    actual = spectral.deblur_input(
        spectral.fft2(y),
        spectral.psf_to_otf(psf.identity(), 8, 8),
        spectral.fft2(random_image(8, 8)),
        0.0,
    )

    np.testing.assert_allclose(actual.data, y.data, atol=1e-10)


def test_deblur_input_large_lambda(
    random_image: abc.Callable[[int, int], image.Image],
) -> None:
    """Test that heavy regularization returns the pre-estimate."""
    y = random_image(16, 16)
    estimate = random_image(16, 16)

    actual = spectral.deblur_input(
        spectral.fft2(y),
        spectral.psf_to_otf(psf.psf_binomial(), 16, 16),
        spectral.fft2(estimate),
        1e12,
    )

    np.testing.assert_allclose(actual.data, estimate.data, atol=1e-4)


@pytest.mark.parametrize("instance", range(10))
def test_deblur_input_matches_dense_solve(
    random_image: abc.Callable[[int, int], image.Image],
    random_kernel: abc.Callable[[int], psf.Kernel],
    instance: int,
) -> None:
    """Test against the normal equations of the Tikhonov cost."""
    y = random_image(8, 8)
    estimate = random_image(8, 8)
    kernel = random_kernel(3)
    lambda_value = 10.0 ** (instance - 5)
    blur = _convolution_matrix(kernel, 8, 8)
    system = blur.T @ blur + lambda_value * np.eye(64)
    rhs = blur.T @ y.data.ravel() + lambda_value * estimate.data.ravel()
    expected = np.linalg.solve(system, rhs).reshape(8, 8)

    actual = spectral.deblur_input(
        spectral.fft2(y),
        spectral.psf_to_otf(kernel, 8, 8),
        spectral.fft2(estimate),
        lambda_value,
    )

    np.testing.assert_allclose(actual.data, expected, rtol=0, atol=1e-8)


def test_deblur_singularity() -> None:
    """Test that λ=0 with a vanishing transfer function is an error."""
    y = image.Image.constant(0.5, 4, 4)

    with pytest.raises(exceptions.SingularityError):
        spectral.deblur_input(
            spectral.fft2(y),
            spectral.psf_to_otf(psf.Kernel(np.zeros((1, 1))), 4, 4),
            spectral.fft2(y),
            0.0,
        )


def test_deblur_rejects_negative_lambda(
    random_image: abc.Callable[[int, int], image.Image],
) -> None:
    """Test that negative weights are rejected."""
    fft_y = spectral.fft2(random_image(4, 4))

    with pytest.raises(exceptions.InputError):
        spectral.deblur_input(fft_y, fft_y, fft_y, -1.0)


@pytest.mark.parametrize("lambda_value", LAMBDAS)
def test_tikhonov_residual_parseval_and_bound(
    random_image: abc.Callable[[int, int], image.Image],
    random_kernel: abc.Callable[[int], psf.Kernel],
    lambda_value: float,
) -> None:
    """Test the Fourier residual identity and that it never exceeds u_E's."""
    y = random_image(16, 16)
    estimate = random_image(16, 16)
    kernel = random_kernel(5)
    otf = spectral.psf_to_otf(kernel, 16, 16)
    fft_y = spectral.fft2(y)
    fft_estimate = spectral.fft2(estimate)
    solution = spectral.deblur_input(fft_y, otf, fft_estimate, lambda_value)
    spectral_residual = np.sum(
        np.abs(
            lambda_value
            * (otf.values * fft_estimate.values - fft_y.values)
            / (np.abs(otf.values) ** 2 + lambda_value),
        )
        ** 2,
    ) / (16 * 16)

    spatial_residual = image.sq_distance(
        spectral.circular_convolve(solution, kernel),
        y,
    )
    estimate_residual = image.sq_distance(
        spectral.circular_convolve(estimate, kernel),
        y,
    )

    assert spatial_residual == pytest.approx(spectral_residual, rel=1e-8)
    assert spatial_residual <= estimate_residual + 1e-12
