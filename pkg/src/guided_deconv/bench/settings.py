"""The five standard degradations and the published reference scores."""

import enum
import logging
from collections import abc

import pydantic

from guided_deconv.core import config, exceptions
from guided_deconv.imaging import image, psf

settings = config.get_settings()
LOGGER_NAME = settings.LOGGER_NAME

logger = logging.getLogger(LOGGER_NAME)


class KernelKind(enum.StrEnum):
    """The blur kernels used by the benchmark."""

    RADIAL = "radial"
    BOXCAR = "boxcar"
    BINOMIAL = "binomial"
    GAUSSIAN = "gaussian"


class TestSetting(pydantic.BaseModel):
    """One benchmark degradation: a blur kernel and a noise variance.

    Attributes:
        id: The setting number, 1 to 5.
        kernel_kind: The blur kernel.
        sigma255_sq: The noise variance on the [0, 255] scale.
    """

    __test__ = False
    model_config = pydantic.ConfigDict(frozen=True)

    id: int = pydantic.Field(ge=1, le=5)
    kernel_kind: KernelKind
    sigma255_sq: float = pydantic.Field(ge=0.0)

    @property
    def noise(self) -> image.NoiseModel:
        """The noise model of this setting."""
        return image.NoiseModel.from_variance255(self.sigma255_sq)

    def kernel(self, gaussian_size: int | None = None) -> psf.Kernel:
        """Builds the normalized blur kernel of this setting.

        Args:
            gaussian_size: Support of the Gaussian kernel; defaults to the
                GAUSSIAN_PSF_SIZE setting. Ignored for other kernels.

        Returns:
            The kernel.
        """
        builders: dict[KernelKind, abc.Callable[[], psf.Kernel]] = {
            KernelKind.RADIAL: psf.psf_radial,
            KernelKind.BOXCAR: psf.psf_boxcar,
            KernelKind.BINOMIAL: psf.psf_binomial,
            KernelKind.GAUSSIAN: lambda: psf.psf_gaussian(size=gaussian_size),
        }
        return builders[self.kernel_kind]()


TEST_SETTINGS: dict[int, TestSetting] = {
    1: TestSetting(id=1, kernel_kind=KernelKind.RADIAL, sigma255_sq=2.0),
    2: TestSetting(id=2, kernel_kind=KernelKind.RADIAL, sigma255_sq=8.0),
    3: TestSetting(id=3, kernel_kind=KernelKind.BOXCAR, sigma255_sq=0.308),
    4: TestSetting(id=4, kernel_kind=KernelKind.BINOMIAL, sigma255_sq=49.0),
    5: TestSetting(id=5, kernel_kind=KernelKind.GAUSSIAN, sigma255_sq=4.0),
}

METHODS = ("ForWaRD", "TVS", "SV-GSM", "L0-AbS", "ours")

# ISNR in dB per method, for settings 1 to 5.
REFERENCE_SCORES: dict[str, dict[str, tuple[float, ...]]] = {
    "cameraman": {
        "ForWaRD": (6.76, 5.08, 7.40, 2.40, 3.14),
        "TVS": (7.41, 5.24, 8.56, 2.57, 3.36),
        "SV-GSM": (7.45, 5.55, 7.33, 2.73, 3.25),
        "L0-AbS": (7.70, 5.55, 9.10, 2.93, 3.49),
        "ours": (8.16, 6.09, 9.53, 3.36, 3.95),
    },
    "house": {
        "ForWaRD": (7.35, 6.03, 9.56, 3.19, 3.85),
        "TVS": (7.98, 6.57, 10.39, 4.49, 4.57),
        "SV-GSM": (8.64, 7.03, 9.04, 4.30, 4.11),
        "L0-AbS": (8.40, 7.12, 10.74, 4.55, 4.80),
        "ours": (8.83, 7.46, 11.11, 4.84, 5.34),
    },
}


def get_setting(setting_id: int) -> TestSetting:
    """Looks up a benchmark setting.

    Args:
        setting_id: The setting number, 1 to 5.

    Returns:
        The setting.

    Raises:
        InputError: If the number is not a known setting.
    """
    if setting_id not in TEST_SETTINGS:
        msg = f"Unknown test setting {setting_id}; choose from 1 to 5."
        raise exceptions.InputError(msg)
    return TEST_SETTINGS[setting_id]


def reference_scores(image_name: str, setting_id: int) -> dict[str, float] | None:
    """Published ISNR of every method for one image and setting.

    Args:
        image_name: The image name, matched case-insensitively.
        setting_id: The setting number, 1 to 5.

    Returns:
        ISNR per method, or None for images without published scores.
    """
    table = REFERENCE_SCORES.get(image_name.lower())
    if table is None:
        return None
    get_setting(setting_id)
    return {method: scores[setting_id - 1] for method, scores in table.items()}
