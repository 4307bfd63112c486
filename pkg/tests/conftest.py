"""Pytest configuration file."""

import pathlib
from collections import abc

import numpy as np
import pytest

from guided_deconv.imaging import image, psf
from guided_deconv.io import images


@pytest.fixture
def rng() -> np.random.Generator:
    """Returns a seeded random generator."""
    return np.random.default_rng(1993)


@pytest.fixture
def random_image(
    rng: np.random.Generator,
) -> abc.Callable[[int, int], image.Image]:
    """Returns a factory of uniformly random images."""

    def _make(width: int, height: int) -> image.Image:
        return image.Image(rng.uniform(0.0, 1.0, size=(height, width)))

    return _make


@pytest.fixture
def random_kernel(
    rng: np.random.Generator,
) -> abc.Callable[[int], psf.Kernel]:
    """Returns a factory of random nonnegative unit-sum square kernels."""

    def _make(size: int) -> psf.Kernel:
        return psf.Kernel(rng.uniform(0.1, 1.0, size=(size, size))).normalized()

    return _make


@pytest.fixture
def blocks_image() -> image.Image:
    """A 32x32 piecewise constant image with strong edges."""
    data = np.full((32, 32), 0.2)
    data[8:24, 8:24] = 0.8
    data[12:20, 2:6] = 0.5
    return image.Image(data)


@pytest.fixture
def smooth_image() -> image.Image:
    """A 32x32 smooth image made of a few low frequencies."""
    rows, cols = np.mgrid[0:32, 0:32] / 32.0
    data = (
        0.5
        + 0.2 * np.sin(2 * np.pi * rows)
        + 0.15 * np.cos(2 * np.pi * 2 * cols)
        + 0.1 * np.sin(2 * np.pi * (rows + cols))
    )
    return image.Image(data)


@pytest.fixture
def image_file(tmp_path: pathlib.Path, blocks_image: image.Image) -> pathlib.Path:
    """Writes the blocks image as a PGM file and returns its path."""
    path = tmp_path / "blocks.pgm"
    images.save_image(blocks_image, path)
    return path
