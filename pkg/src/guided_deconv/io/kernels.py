"""Plain-text kernel files.

The first line holds "size_x size_y"; each following line holds one row of
decimal weights separated by whitespace.
"""

import logging
import pathlib

import numpy as np

from guided_deconv.core import config, exceptions
from guided_deconv.imaging import psf

settings = config.get_settings()
LOGGER_NAME = settings.LOGGER_NAME

logger = logging.getLogger(LOGGER_NAME)


def dump_kernel(kernel: psf.Kernel, path: str | pathlib.Path) -> None:
    """Writes a kernel to a text file with round-trip precision.

    Args:
        kernel: The kernel to write.
        path: The destination path.
    """
    logger.debug("Writing kernel to %s.", path)
    lines = [f"{kernel.size_x} {kernel.size_y}"]
    lines.extend(
        " ".join(f"{weight:.17g}" for weight in row) for row in kernel.weights
    )
    pathlib.Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_kernel(path: str | pathlib.Path) -> psf.Kernel:
    """Reads a kernel from a text file.

    Args:
        path: The path to the kernel file.

    Returns:
        The kernel, as stored (not normalized).

    Raises:
        InputError: If the file is missing or malformed.
    """
    logger.debug("Reading kernel from %s.", path)
    try:
        text = pathlib.Path(path).read_text(encoding="utf-8")
    except OSError as error:
        msg = f"{path}: cannot read kernel file ({error})."
        raise exceptions.InputError(msg) from error

    lines = [line.split() for line in text.splitlines() if line.strip()]
    if not lines:
        msg = f"{path}: empty kernel file."
        raise exceptions.InputError(msg)
    try:
        size_x, size_y = (int(value) for value in lines[0])
        rows = [[float(value) for value in line] for line in lines[1:]]
    except ValueError as error:
        msg = f"{path}: malformed kernel file ({error})."
        raise exceptions.InputError(msg) from error

    if len(rows) != size_y or any(len(row) != size_x for row in rows):
        msg = f"{path}: weights do not match the declared size {size_x}x{size_y}."
        raise exceptions.InputError(msg)
    return psf.Kernel(np.asarray(rows, dtype=np.float64))
