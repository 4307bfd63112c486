"""Synthetic degradation y = h ∗ u + noise with reproducible noise."""

import logging

import numpy as np

from guided_deconv.bench import settings as bench_settings
from guided_deconv.core import config, exceptions
from guided_deconv.imaging import image, psf
from guided_deconv.restoration import spectral

settings = config.get_settings()
LOGGER_NAME = settings.LOGGER_NAME

logger = logging.getLogger(LOGGER_NAME)


def gaussian_noise(width: int, height: int, sigma: float, seed: int) -> image.Image:
    """White Gaussian noise from a seeded PCG64 generator.

    Args:
        width: The number of columns.
        height: The number of rows.
        sigma: The standard deviation.
        seed: The generator seed.

    Returns:
        The noise realization.
    """
    if seed < 0:
        msg = f"Seed must be non-negative, got {seed}."
        raise exceptions.InputError(msg)
    generator = np.random.Generator(np.random.PCG64(seed))
    return image.Image(sigma * generator.standard_normal((height, width)))


def blur_and_add_noise(
    original: image.Image,
    kernel: psf.Kernel,
    sigma: float,
    seed: int,
) -> image.Image:
    """Blurs circularly and adds white Gaussian noise; the result is not clamped.

    Args:
        original: The clean image.
        kernel: The blur kernel.
        sigma: Noise standard deviation on the [0, 1] scale.
        seed: The noise seed.

    Returns:
        The degraded image.
    """
    blurred = spectral.circular_convolve(original, kernel)
    if sigma == 0:
        return blurred
    noise = gaussian_noise(original.width, original.height, sigma, seed)
    return image.Image(blurred.data + noise.data)


def degrade(
    original: image.Image,
    setting: bench_settings.TestSetting,
    seed: int,
    gaussian_size: int | None = None,
) -> image.Image:
    """Applies one of the benchmark degradations.

    Args:
        original: The clean image.
        setting: The benchmark setting.
        seed: The noise seed.
        gaussian_size: Support of the Gaussian kernel of setting 5.

    Returns:
        The degraded image.
    """
    logger.debug("Degrading with setting %d and seed %d.", setting.id, seed)
    return blur_and_add_noise(
        original,
        setting.kernel(gaussian_size),
        setting.noise.sigma,
        seed,
    )
