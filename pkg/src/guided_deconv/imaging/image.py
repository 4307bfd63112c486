"""Image container, noise model and basic image statistics.

Images hold double precision intensities in the nominal range [0, 1]. Values
may leave that range inside the restoration; they are only clamped when
written to disk.
"""

import dataclasses
import logging

import numpy as np
import pydantic
from numpy import typing as npt

from guided_deconv.core import config, exceptions, utils

settings = config.get_settings()
LOGGER_NAME = settings.LOGGER_NAME

logger = logging.getLogger(LOGGER_NAME)


@dataclasses.dataclass(frozen=True, eq=False)
class Image:
    """An immutable grayscale raster.

    Attributes:
        data: Intensities with shape (height, width), row-major.
    """

    data: npt.NDArray[np.float64]

    def __post_init__(self) -> None:
        """Validates the raster and freezes a private copy of it."""
        data = utils.frozen_copy(self.data)
        if data.ndim != 2 or data.size == 0:  # noqa: PLR2004
            msg = f"An image must be a non-empty 2D array, got shape {data.shape}."
            raise exceptions.InputError(msg)
        if not np.all(np.isfinite(data)):
            msg = "An image may not contain NaN or infinite values."
            raise exceptions.InputError(msg)
        object.__setattr__(self, "data", data)

    @property
    def width(self) -> int:
        """The number of columns."""
        return int(self.data.shape[1])

    @property
    def height(self) -> int:
        """The number of rows."""
        return int(self.data.shape[0])

    @property
    def n_pixels(self) -> int:
        """The number of pixels, written N² in the discrepancy formulas."""
        return int(self.data.size)

    @classmethod
    def constant(cls, value: float, width: int, height: int) -> "Image":
        """Creates an image with a single intensity.

        Args:
            value: The intensity.
            width: The number of columns.
            height: The number of rows.

        Returns:
            The constant image.
        """
        return cls(np.full((height, width), value, dtype=np.float64))

    @classmethod
    def zeros_like(cls, other: "Image") -> "Image":
        """Creates an all-zero image with the dimensions of another image."""
        return cls(np.zeros_like(other.data))

    def clamped(self) -> "Image":
        """Returns a copy with every value clamped to [0, 1]."""
        return Image(np.clip(self.data, 0.0, 1.0))


class NoiseModel(pydantic.BaseModel):
    """Additive white Gaussian noise level.

    Benchmark noise levels are quoted as variances of 8-bit intensities; all
    formulas use the standard deviation on the [0, 1] working scale.

    Attributes:
        sigma255: The noise standard deviation on the [0, 255] scale.
    """

    model_config = pydantic.ConfigDict(frozen=True)

    sigma255: float = pydantic.Field(ge=0.0)

    @pydantic.computed_field  # type: ignore[prop-decorator]
    @property
    def sigma(self) -> float:
        """The noise standard deviation on the [0, 1] working scale."""
        return self.sigma255 / 255.0

    @classmethod
    def from_variance255(cls, variance255: float) -> "NoiseModel":
        """Creates a noise model from a variance on the [0, 255] scale.

        Args:
            variance255: The noise variance for 8-bit intensities.

        Returns:
            The noise model.
        """
        if variance255 < 0:
            msg = f"Noise variance must be nonnegative, got {variance255}."
            raise exceptions.InputError(msg)
        return cls(sigma255=float(np.sqrt(variance255)))


def image_mean(img: Image) -> float:
    """Arithmetic mean of all pixels.

    Args:
        img: The image.

    Returns:
        The mean intensity.
    """
    return float(np.sum(img.data) / img.n_pixels)


def sq_norm(img: Image) -> float:
    """Sum of squared intensities.

    Args:
        img: The image.

    Returns:
        The squared Euclidean norm.
    """
    return float(np.sum(np.square(img.data)))


def sq_distance(first: Image, second: Image) -> float:
    """Sum of squared pixel differences.

    Args:
        first: The first image.
        second: The second image.

    Returns:
        The squared Euclidean distance between the images.
    """
    utils.require_same_shape(first=first.data, second=second.data)
    return float(np.sum(np.square(first.data - second.data)))


def centered_sq_norm(img: Image) -> float:
    """Squared norm of the image after subtracting its mean."""
    return sq_distance(img, Image.constant(image_mean(img), img.width, img.height))
