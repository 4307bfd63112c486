"""Quality metrics for restored images.

All metrics are computed on unquantized [0, 1] images over the full frame.
Perfect reconstructions are reported as math.inf.
"""

import logging
import math

import numpy as np

from guided_deconv.core import config
from guided_deconv.imaging import image

settings = config.get_settings()
LOGGER_NAME = settings.LOGGER_NAME

logger = logging.getLogger(LOGGER_NAME)

HIGH_FREQUENCY_CUTOFF = 0.25


def mse(first: image.Image, second: image.Image) -> float:
    """Mean squared error between two images."""
    return image.sq_distance(first, second) / first.n_pixels


def psnr(first: image.Image, second: image.Image) -> float:
    """Peak signal-to-noise ratio in dB for a peak value of 1."""
    error = mse(first, second)
    if error == 0:
        return math.inf
    return 10.0 * math.log10(1.0 / error)


def isnr(
    original: image.Image,
    degraded: image.Image,
    restored: image.Image,
) -> float:
    """Improvement in signal-to-noise ratio of a restoration, in dB.

    Args:
        original: The clean image.
        degraded: The observation.
        restored: The restoration of the observation.

    Returns:
        10·log10(‖degraded − original‖² / ‖restored − original‖²).
    """
    degraded_error = image.sq_distance(degraded, original)
    restored_error = image.sq_distance(restored, original)
    if restored_error == 0:
        return math.inf
    if degraded_error == 0:
        return -math.inf
    return 10.0 * math.log10(degraded_error / restored_error)


def high_frequency_energy(
    img: image.Image,
    cutoff: float = HIGH_FREQUENCY_CUTOFF,
) -> float:
    """Spectral energy at frequencies of at least cutoff cycles per pixel.

    A frequency belongs to the band when its larger normalized component,
    horizontal or vertical, reaches the cutoff. The default keeps the upper
    half of the frequency range.

    Args:
        img: The image.
        cutoff: The band edge in cycles per pixel, at most 0.5.

    Returns:
        The sum of |F(img)|² over the band.
    """
    freq_y = np.abs(np.fft.fftfreq(img.height))[:, np.newaxis]
    freq_x = np.abs(np.fft.fftfreq(img.width))[np.newaxis, :]
    band = np.maximum(freq_y, freq_x) >= cutoff
    power = np.abs(np.fft.fft2(img.data)) ** 2
    return float(np.sum(power[band]))


def format_db(value: float) -> str:
    """Formats a dB value, writing infinities as 'inf' and '-inf'."""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.4f}"
