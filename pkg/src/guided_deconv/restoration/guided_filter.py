"""Edge-preserving guided filter with constant-time box means.

Windows near the border are clipped to the image and every average divides by
the number of pixels actually inside the window, so constant images pass
through unchanged.
"""

import dataclasses
import logging

import numpy as np
import pydantic
from numpy import typing as npt

from guided_deconv.core import config, exceptions, utils
from guided_deconv.imaging import image

settings = config.get_settings()
LOGGER_NAME = settings.LOGGER_NAME

logger = logging.getLogger(LOGGER_NAME)


class GuidedFilterParams(pydantic.BaseModel):
    """Parameters of the guided filter.

    Attributes:
        w: Odd side length of the square window.
        epsilon: Regularization added to the local guidance variance.
    """

    model_config = pydantic.ConfigDict(frozen=True)

    w: int = pydantic.Field(default_factory=lambda: settings.DEFAULT_WINDOW, ge=1)
    epsilon: float = pydantic.Field(
        default_factory=lambda: settings.DEFAULT_EPSILON,
        gt=0.0,
    )

    @pydantic.field_validator("w")
    @classmethod
    def _window_is_odd(cls, value: int) -> int:
        if value % 2 == 0:
            msg = f"The window size must be odd, got {value}."
            raise ValueError(msg)
        return value


@dataclasses.dataclass(frozen=True, eq=False)
class LocalLinearCoeffs:
    """Per-window statistics and the local linear model u = a·u_I + b.

    Attributes:
        a: Slope per window center.
        b: Offset per window center.
        mean_I: Windowed mean of the guidance.
        var_I: Windowed variance of the guidance, clamped at zero.
        mean_p: Windowed mean of the filtering input.
        corr_Ip: Windowed mean of the guidance-input product.
    """

    a: npt.NDArray[np.float64]
    b: npt.NDArray[np.float64]
    mean_I: npt.NDArray[np.float64]  # noqa: N815
    var_I: npt.NDArray[np.float64]  # noqa: N815
    mean_p: npt.NDArray[np.float64]
    corr_Ip: npt.NDArray[np.float64]  # noqa: N815


def box_mean(img: image.Image, w: int) -> image.Image:
    """Mean over the w x w window centered at every pixel.

    The cost does not depend on w: each axis is summed with a cumulative sum.

    Args:
        img: The image to average.
        w: The odd window side length.

    Returns:
        The windowed means.

    Raises:
        InputError: If w is even or larger than the image.
    """
    _check_window(w, img.width, img.height)
    return image.Image(_box_mean_array(img.data, w))


def local_linear_coeffs(
    guidance: image.Image,
    filtering_input: image.Image,
    params: GuidedFilterParams,
) -> LocalLinearCoeffs:
    """Computes the local linear model of every window.

    Args:
        guidance: The guidance image u_I.
        filtering_input: The image u_p to be filtered.
        params: The filter parameters.

    Returns:
        The per-window coefficients and statistics.
    """
    utils.require_same_shape(
        guidance=guidance.data,
        filtering_input=filtering_input.data,
    )
    _check_window(params.w, guidance.width, guidance.height)
    guide = guidance.data
    source = filtering_input.data

    mean_I = _box_mean_array(guide, params.w)
    mean_p = _box_mean_array(source, params.w)
    corr_Ip = _box_mean_array(guide * source, params.w)
    var_I = _box_mean_array(guide * guide, params.w) - mean_I * mean_I
    var_I[var_I < 0] = 0.0

    a = (corr_Ip - mean_I * mean_p) / (var_I + params.epsilon)
    b = mean_p - a * mean_I
    return LocalLinearCoeffs(
        a=a,
        b=b,
        mean_I=mean_I,
        var_I=var_I,
        mean_p=mean_p,
        corr_Ip=corr_Ip,
    )


def guided_filter(
    guidance: image.Image,
    filtering_input: image.Image,
    params: GuidedFilterParams,
) -> image.Image:
    """Filters an image under the structure of a guidance image.

    Args:
        guidance: The guidance image u_I.
        filtering_input: The image u_p to be filtered.
        params: The filter parameters.

    Returns:
        ā·u_I + b̄, the window-averaged local linear model.
    """
    coeffs = local_linear_coeffs(guidance, filtering_input, params)
    mean_a = _box_mean_array(coeffs.a, params.w)
    mean_b = _box_mean_array(coeffs.b, params.w)
    return image.Image(mean_a * guidance.data + mean_b)


def _check_window(w: int, width: int, height: int) -> None:
    utils.require_odd(w, "Window size")
    if w > min(width, height):
        msg = f"Window size {w} exceeds the image dimensions {width}x{height}."
        raise exceptions.InputError(msg)


def _box_mean_array(data: npt.NDArray[np.float64], w: int) -> npt.NDArray[np.float64]:
    sums = _clipped_window_sum(_clipped_window_sum(data, w, axis=0), w, axis=1)
    counts_y = _clipped_window_count(data.shape[0], w)
    counts_x = _clipped_window_count(data.shape[1], w)
    return sums / np.outer(counts_y, counts_x)


def _clipped_window_sum(
    data: npt.NDArray[np.float64],
    w: int,
    axis: int,
) -> npt.NDArray[np.float64]:
    """Sums every run of w samples along an axis, clipping runs at the edges."""
    radius = w // 2
    length = data.shape[axis]
    cumulative = np.cumsum(data, axis=axis)
    zero_shape = list(data.shape)
    zero_shape[axis] = 1
    cumulative = np.concatenate((np.zeros(zero_shape), cumulative), axis=axis)
    index = np.arange(length)
    upper = np.minimum(index + radius + 1, length)
    lower = np.maximum(index - radius, 0)
    return np.take(cumulative, upper, axis=axis) - np.take(cumulative, lower, axis=axis)


def _clipped_window_count(length: int, w: int) -> npt.NDArray[np.float64]:
    radius = w // 2
    index = np.arange(length)
    upper = np.minimum(index + radius + 1, length)
    lower = np.maximum(index - radius, 0)
    return (upper - lower).astype(np.float64)
