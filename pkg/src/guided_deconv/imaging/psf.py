"""Point spread functions of the standard deconvolution benchmark."""

import dataclasses
import logging

import numpy as np
from numpy import typing as npt

from guided_deconv.core import config, exceptions, utils

settings = config.get_settings()
LOGGER_NAME = settings.LOGGER_NAME

logger = logging.getLogger(LOGGER_NAME)

RADIAL_HALF_WIDTH = 7
BOXCAR_SIZE = 9
BINOMIAL_TAPS = (1.0, 4.0, 6.0, 4.0, 1.0)
DEFAULT_GAUSSIAN_SIGMA = 1.6


@dataclasses.dataclass(frozen=True, eq=False)
class Kernel:
    """An immutable blur kernel with odd support, anchored at its center.

    Attributes:
        weights: The weights with shape (size_y, size_x).
    """

    weights: npt.NDArray[np.float64]

    def __post_init__(self) -> None:
        """Validates the support and freezes a private copy of the weights."""
        weights = utils.frozen_copy(self.weights)
        if weights.ndim != 2:  # noqa: PLR2004
            msg = f"A kernel must be a 2D array, got shape {weights.shape}."
            raise exceptions.InputError(msg)
        utils.require_odd(weights.shape[1], "Kernel size_x")
        utils.require_odd(weights.shape[0], "Kernel size_y")
        if not np.all(np.isfinite(weights)):
            msg = "Kernel weights must be finite."
            raise exceptions.InputError(msg)
        object.__setattr__(self, "weights", weights)

    @property
    def size_x(self) -> int:
        """The number of columns."""
        return int(self.weights.shape[1])

    @property
    def size_y(self) -> int:
        """The number of rows."""
        return int(self.weights.shape[0])

    @property
    def center(self) -> tuple[int, int]:
        """The (x, y) index of the anchor."""
        return (self.size_x - 1) // 2, (self.size_y - 1) // 2

    def normalized(self) -> "Kernel":
        """Returns the kernel scaled to unit sum.

        Raises:
            InputError: If the weights sum to zero.
        """
        total = float(np.sum(self.weights))
        if total == 0:
            msg = "Cannot normalize a kernel whose weights sum to zero."
            raise exceptions.InputError(msg)
        return Kernel(self.weights / total)


def identity() -> Kernel:
    """The 1x1 kernel that leaves images unchanged."""
    return Kernel(np.ones((1, 1)))


def radial_weights() -> npt.NDArray[np.float64]:
    """Raw weights 1/(1+i²+j²) for i, j in [-7, 7], before normalization."""
    offsets = np.arange(-RADIAL_HALF_WIDTH, RADIAL_HALF_WIDTH + 1, dtype=np.float64)
    i, j = np.meshgrid(offsets, offsets, indexing="ij")
    return 1.0 / (1.0 + i**2 + j**2)


def psf_radial() -> Kernel:
    """The 15x15 radially decaying kernel, normalized to unit sum."""
    return Kernel(radial_weights()).normalized()


def psf_boxcar() -> Kernel:
    """The 9x9 uniform kernel."""
    return Kernel(np.full((BOXCAR_SIZE, BOXCAR_SIZE), 1.0 / BOXCAR_SIZE**2))


def psf_binomial() -> Kernel:
    """The 5x5 separable binomial kernel [1 4 6 4 1]ᵀ[1 4 6 4 1]/256."""
    taps = np.asarray(BINOMIAL_TAPS)
    return Kernel(np.outer(taps, taps) / 256.0)


def psf_gaussian(
    sigma: float = DEFAULT_GAUSSIAN_SIGMA,
    size: int | None = None,
) -> Kernel:
    """A truncated isotropic Gaussian kernel, normalized to unit sum.

    Args:
        sigma: The standard deviation in pixels.
        size: The odd side length of the support. Defaults to the
            GAUSSIAN_PSF_SIZE setting.

    Returns:
        The Gaussian kernel.
    """
    if size is None:
        size = settings.GAUSSIAN_PSF_SIZE
    utils.require_odd(size, "Gaussian kernel size")
    if sigma <= 0:
        msg = f"Gaussian sigma must be positive, got {sigma}."
        raise exceptions.InputError(msg)
    half = (size - 1) // 2
    offsets = np.arange(-half, half + 1, dtype=np.float64)
    i, j = np.meshgrid(offsets, offsets, indexing="ij")
    weights = np.exp(-(i**2 + j**2) / (2.0 * sigma**2))
    return Kernel(weights).normalized()


def kernel_l1(kernel: Kernel) -> float:
    """The l1 norm of the kernel weights.

    Args:
        kernel: The kernel.

    Returns:
        The sum of absolute weights.
    """
    return float(np.sum(np.abs(kernel.weights)))
