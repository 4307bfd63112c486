"""Utility functions for the guided_deconv package."""

import logging

import numpy as np
from numpy import typing as npt

from guided_deconv.core import config, exceptions

settings = config.get_settings()
LOGGER_NAME = settings.LOGGER_NAME

logger = logging.getLogger(LOGGER_NAME)


def require_same_shape(**arrays: npt.NDArray[np.generic]) -> tuple[int, ...]:
    """Checks that all named arrays share one shape.

    Args:
        **arrays: The arrays to compare, keyed by the name used in the error.

    Returns:
        The common shape.

    Raises:
        InputError: If any two shapes differ.
    """
    shapes = {name: array.shape for name, array in arrays.items()}
    unique_shapes = set(shapes.values())
    if len(unique_shapes) > 1:
        msg = f"Dimension mismatch: {shapes}."
        raise exceptions.InputError(msg)
    return next(iter(unique_shapes))


def require_odd(value: int, name: str) -> None:
    """Checks that an integer size parameter is odd and positive.

    Args:
        value: The value to check.
        name: The name of the parameter, used in the error message.

    Raises:
        InputError: If the value is even or not positive.
    """
    if value < 1 or value % 2 == 0:
        msg = f"{name} must be a positive odd integer, got {value}."
        raise exceptions.InputError(msg)


def frozen_copy(array: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """Returns a read-only float64 copy of an array.

    Args:
        array: The array to copy.

    Returns:
        The read-only copy.
    """
    copy = np.array(array, dtype=np.float64)
    copy.setflags(write=False)
    return copy
