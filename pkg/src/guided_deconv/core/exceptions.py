"""Exceptions for guided_deconv."""

import logging
from typing import Any

from guided_deconv.core import config

settings = config.get_settings()
LOGGER_NAME = settings.LOGGER_NAME

logger = logging.getLogger(LOGGER_NAME)


class _AbstractError(Exception):
    """Base exception for all exceptions raised by guided_deconv."""

    def __init__(self, *args: Any, **kwargs: Any) -> None:  # noqa: ANN401
        """Initialize a new instance of the AbstractException class.

        Args:
            *args: Variable length argument list.
            **kwargs: Arbitrary keyword arguments.
        """
        super().__init__(*args, **kwargs)
        logger.error(*args, **kwargs)


class InputError(_AbstractError):
    """Raised for invalid inputs such as mismatched dimensions or bad files."""


class ImageFormatError(InputError):
    """Raised when an image file cannot be read or has an unsupported format."""


class NumericalError(_AbstractError):
    """Base exception for numerical failures of the restoration."""


class SingularityError(NumericalError):
    """Raised when a Fourier-domain solver meets a zero denominator."""


class BracketError(NumericalError):
    """Raised when the discrepancy equation cannot be bracketed.

    Attributes:
        lower_residual: The residual at the lower end of the final bracket.
        upper_residual: The residual at the upper end of the final bracket.
        target: The discrepancy target.
    """

    def __init__(
        self,
        message: str,
        lower_residual: float,
        upper_residual: float,
        target: float,
    ) -> None:
        """Initialize a new instance of the BracketError class.

        Args:
            message: The error message.
            lower_residual: The residual at the lower end of the bracket.
            upper_residual: The residual at the upper end of the bracket.
            target: The discrepancy target.
        """
        super().__init__(message)
        self.lower_residual = lower_residual
        self.upper_residual = upper_residual
        self.target = target


class InternalError(_AbstractError):
    """Base exception for all internal exceptions raised by guided_deconv."""
