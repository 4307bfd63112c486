"""Reading and writing 8-bit grayscale PGM and PNG images."""

import hashlib
import logging
import pathlib

import numpy as np
from PIL import Image as PILImage
from PIL import UnidentifiedImageError

from guided_deconv.core import config, exceptions
from guided_deconv.imaging import image

settings = config.get_settings()
LOGGER_NAME = settings.LOGGER_NAME

logger = logging.getLogger(LOGGER_NAME)

SUPPORTED_FORMATS = {"PPM", "PNG"}
SUFFIX_TO_FORMAT = {".pgm": "PPM", ".png": "PNG"}
MAX_VALUE = 255.0


def load_image(path: str | pathlib.Path) -> image.Image:
    """Loads an 8-bit grayscale PGM (P5) or PNG image.

    Args:
        path: The path to the image file.

    Returns:
        The image with intensities v/255.

    Raises:
        ImageFormatError: If the file cannot be read, is not PGM/PNG, or is
            not 8-bit grayscale.
    """
    logger.debug("Loading image %s.", path)
    try:
        with PILImage.open(path) as pil_image:
            if pil_image.format not in SUPPORTED_FORMATS:
                msg = f"{path}: unsupported image format {pil_image.format}."
                raise exceptions.ImageFormatError(msg)
            if pil_image.mode != "L":
                msg = (
                    f"{path}: expected 8-bit grayscale, got mode {pil_image.mode}."
                )
                raise exceptions.ImageFormatError(msg)
            pixels = np.asarray(pil_image, dtype=np.float64)
    except (OSError, UnidentifiedImageError) as error:
        msg = f"{path}: cannot read image ({error})."
        raise exceptions.ImageFormatError(msg) from error
    return image.Image(pixels / MAX_VALUE)


def save_image(img: image.Image, path: str | pathlib.Path) -> None:
    """Saves an image as 8-bit grayscale.

    Values are clamped to [0, 1] and quantized to round(255·v). The format
    follows the file suffix, .pgm or .png.

    Args:
        img: The image to save.
        path: The destination path.

    Raises:
        InputError: If the suffix is unsupported or the path is unwritable.
    """
    suffix = pathlib.Path(path).suffix.lower()
    if suffix not in SUFFIX_TO_FORMAT:
        msg = f"{path}: unsupported suffix {suffix!r}, use .pgm or .png."
        raise exceptions.InputError(msg)
    quantized = np.round(img.clamped().data * MAX_VALUE).astype(np.uint8)
    logger.debug("Saving image %s.", path)
    try:
        PILImage.fromarray(quantized, mode="L").save(
            path,
            format=SUFFIX_TO_FORMAT[suffix],
        )
    except OSError as error:
        msg = f"{path}: cannot write image ({error})."
        raise exceptions.InputError(msg) from error


def file_sha256(path: str | pathlib.Path) -> str:
    """Hex SHA-256 digest of a file, used to identify test image variants.

    Raises:
        InputError: If the file cannot be read.
    """
    try:
        content = pathlib.Path(path).read_bytes()
    except OSError as error:
        msg = f"{path}: cannot read file ({error})."
        raise exceptions.InputError(msg) from error
    return hashlib.sha256(content).hexdigest()
