"""Fourier-domain plumbing and the two regularized deblurring solutions.

Conventions: the forward transform is unnormalized and the inverse carries the
1/(W·H) factor, so Parseval reads ‖x‖² = ‖F(x)‖² / (W·H). All convolutions are
circular.
"""

import dataclasses
import logging
import math

import numpy as np
from numpy import typing as npt

from guided_deconv.core import config, exceptions, utils
from guided_deconv.imaging import image, psf

settings = config.get_settings()
LOGGER_NAME = settings.LOGGER_NAME

logger = logging.getLogger(LOGGER_NAME)


@dataclasses.dataclass(frozen=True, eq=False)
class Spectrum:
    """Complex DFT coefficients laid out like the image, shape (height, width)."""

    values: npt.NDArray[np.complex128]

    def __post_init__(self) -> None:
        """Freezes a private copy of the coefficients."""
        values = np.array(self.values, dtype=np.complex128)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def width(self) -> int:
        """The number of columns."""
        return int(self.values.shape[1])

    @property
    def height(self) -> int:
        """The number of rows."""
        return int(self.values.shape[0])


@dataclasses.dataclass(frozen=True, eq=False)
class GradientSpectrum:
    """The squared magnitude response |F(∂x)|² + |F(∂y)|² on an image grid."""

    values: npt.NDArray[np.float64]

    def __post_init__(self) -> None:
        """Freezes a private copy of the response."""
        object.__setattr__(self, "values", utils.frozen_copy(self.values))


def fft2(img: image.Image) -> Spectrum:
    """Unnormalized forward 2D DFT of an image."""
    return Spectrum(np.fft.fft2(img.data))


def ifft2_real(spectrum: Spectrum) -> image.Image:
    """Inverse 2D DFT of a spectrum that belongs to a real image.

    Args:
        spectrum: The spectrum to invert.

    Returns:
        The real part of the inverse transform.

    Raises:
        InternalError: If the imaginary residue is not negligible, which means
            the spectrum was not conjugate symmetric.
    """
    inverse = np.fft.ifft2(spectrum.values)
    residue = float(np.max(np.abs(inverse.imag)))
    scale = max(1.0, float(np.max(np.abs(inverse.real))))
    if residue >= settings.IMAG_RESIDUE_TOL * scale:
        msg = f"Inverse transform has imaginary residue {residue:.3e}."
        raise exceptions.InternalError(msg)
    return image.Image(inverse.real)


def psf_to_otf(kernel: psf.Kernel, width: int, height: int) -> Spectrum:
    """Embeds a kernel in a width x height grid and transforms it.

    The kernel is zero padded and circularly shifted so that its center lands
    on index (0, 0).

    Args:
        kernel: The point spread function.
        width: The number of grid columns.
        height: The number of grid rows.

    Returns:
        The optical transfer function.

    Raises:
        InputError: If the kernel does not fit in the grid.
    """
    if kernel.size_x > width or kernel.size_y > height:
        msg = (
            f"Kernel of size {kernel.size_x}x{kernel.size_y} does not fit a "
            f"{width}x{height} grid."
        )
        raise exceptions.InputError(msg)
    padded = np.zeros((height, width), dtype=np.float64)
    padded[: kernel.size_y, : kernel.size_x] = kernel.weights
    center_x, center_y = kernel.center
    padded = np.roll(padded, shift=(-center_y, -center_x), axis=(0, 1))
    return Spectrum(np.fft.fft2(padded))


def gradient_spectrum(width: int, height: int) -> GradientSpectrum:
    """Squared magnitude response of periodic forward differences.

    Args:
        width: The number of grid columns.
        height: The number of grid rows.

    Returns:
        2 − 2cos(2πu/W) + 2 − 2cos(2πv/H) at every frequency (v, u).
    """
    response_x = 2.0 - 2.0 * np.cos(2.0 * np.pi * np.arange(width) / width)
    response_y = 2.0 - 2.0 * np.cos(2.0 * np.pi * np.arange(height) / height)
    values = response_y[:, np.newaxis] + response_x[np.newaxis, :]
    return GradientSpectrum(values)


def circular_convolve(img: image.Image, kernel: psf.Kernel) -> image.Image:
    """Convolves an image with a kernel under periodic boundaries."""
    otf = psf_to_otf(kernel, img.width, img.height)
    return ifft2_real(Spectrum(otf.values * fft2(img).values))


def deblur_guidance(  # noqa: PLR0913
    fft_y: Spectrum,
    otf: Spectrum,
    grad: GradientSpectrum,
    fft_estimate: Spectrum,
    lambda_value: float,
) -> image.Image:
    """Gradient-regularized deblurring towards a pre-estimate.

    Minimizes λ‖∇u − ∇u_E‖² + ‖h∗u − y‖² in closed form:
    F(u) = (F(h)*·F(y) + λ|F(∇)|²·F(u_E)) / (|F(h)|² + λ|F(∇)|²).

    Args:
        fft_y: Spectrum of the observation.
        otf: Optical transfer function of the blur.
        grad: Gradient operator response.
        fft_estimate: Spectrum of the pre-estimate.
        lambda_value: Nonnegative regularization weight, or math.inf.

    Returns:
        The guidance image.

    Raises:
        SingularityError: If a denominator vanishes.
    """
    return _regularized_solve(fft_y, otf, grad.values, fft_estimate, lambda_value)


def deblur_input(
    fft_y: Spectrum,
    otf: Spectrum,
    fft_estimate: Spectrum,
    lambda_value: float,
) -> image.Image:
    """Tikhonov deblurring towards a pre-estimate.

    Minimizes λ‖u − u_E‖² + ‖h∗u − y‖² in closed form:
    F(u) = (F(h)*·F(y) + λ·F(u_E)) / (|F(h)|² + λ).

    Args:
        fft_y: Spectrum of the observation.
        otf: Optical transfer function of the blur.
        fft_estimate: Spectrum of the pre-estimate.
        lambda_value: Nonnegative regularization weight, or math.inf.

    Returns:
        The filtering input image.

    Raises:
        SingularityError: If a denominator vanishes.
    """
    weight = np.ones(otf.values.shape, dtype=np.float64)
    return _regularized_solve(fft_y, otf, weight, fft_estimate, lambda_value)


def _regularized_solve(
    fft_y: Spectrum,
    otf: Spectrum,
    weight: npt.NDArray[np.float64],
    fft_estimate: Spectrum,
    lambda_value: float,
) -> image.Image:
    """Evaluates (H*Y + λ·G·E) / (|H|² + λ·G) and inverts it."""
    utils.require_same_shape(
        fft_y=fft_y.values,
        otf=otf.values,
        weight=weight,
        fft_estimate=fft_estimate.values,
    )
    if lambda_value < 0 or math.isnan(lambda_value):
        msg = f"The regularization weight must be nonnegative, got {lambda_value}."
        raise exceptions.InputError(msg)

    otf_power = np.abs(otf.values) ** 2
    data_term = np.conj(otf.values) * fft_y.values
    if math.isinf(lambda_value):
        unregularized = weight == 0
        if np.any(otf_power[unregularized] == 0):
            msg = "Unregularized frequency with a zero transfer function."
            raise exceptions.SingularityError(msg)
        solution = np.array(fft_estimate.values)
        solution[unregularized] = (
            data_term[unregularized] / otf_power[unregularized]
        )
        return ifft2_real(Spectrum(solution))

    denominator = otf_power + lambda_value * weight
    if np.any(denominator == 0):
        msg = (
            "Zero denominator in the Fourier-domain solution; a positive "
            "regularization weight is required for this blur."
        )
        raise exceptions.SingularityError(msg)
    numerator = data_term + lambda_value * weight * fft_estimate.values
    return ifft2_real(Spectrum(numerator / denominator))
