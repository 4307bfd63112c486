"""The iterative guided-filter deconvolution.

Every iteration selects λ from the discrepancy principle, computes a
gradient-regularized guidance image and a Tikhonov filtering input from the
current pre-estimate, and filters the latter under the former. The filtered
image becomes the next pre-estimate.
"""

import dataclasses
import logging
import time

import pydantic

from guided_deconv.core import config, exceptions, utils
from guided_deconv.imaging import image, psf
from guided_deconv.restoration import guided_filter, metrics, regparam, spectral

settings = config.get_settings()
LOGGER_NAME = settings.LOGGER_NAME

logger = logging.getLogger(LOGGER_NAME)


class RestorationParams(pydantic.BaseModel):
    """Parameters of a restoration.

    Attributes:
        sigma: Noise standard deviation on the [0, 1] scale.
        w: Guided filter window side length.
        epsilon: Guided filter regularization.
        max_iter: Number of iterations.
        rho_override: Fixed discrepancy fraction; computed from the
            observation when None.
        early_stop: Stop when the relative change of the estimate drops
            below the EARLY_STOP_TOL setting.
        warm_start: Start from the observation instead of zero.
    """

    model_config = pydantic.ConfigDict(frozen=True)

    sigma: float = pydantic.Field(gt=0.0)
    w: int = pydantic.Field(default_factory=lambda: settings.DEFAULT_WINDOW, ge=1)
    epsilon: float = pydantic.Field(
        default_factory=lambda: settings.DEFAULT_EPSILON,
        gt=0.0,
    )
    max_iter: int = pydantic.Field(
        default_factory=lambda: settings.DEFAULT_MAX_ITER,
        ge=1,
    )
    rho_override: float | None = pydantic.Field(default=None, gt=0.0, le=1.0)
    early_stop: bool = False
    warm_start: bool = False

    @pydantic.field_validator("w")
    @classmethod
    def _window_is_odd(cls, value: int) -> int:
        if value % 2 == 0:
            msg = f"The window size must be odd, got {value}."
            raise ValueError(msg)
        return value

    @property
    def filter_params(self) -> guided_filter.GuidedFilterParams:
        """The guided filter parameters."""
        return guided_filter.GuidedFilterParams(w=self.w, epsilon=self.epsilon)


@dataclasses.dataclass(frozen=True)
class IterationRecord:
    """Diagnostics of one iteration.

    Attributes:
        k: The iteration index, starting at 0.
        lambda_value: The selected weight, math.inf when deblurring was skipped.
        residual: The data residual of the filtering input.
        isnr: ISNR of the filtered estimate in dB, when a reference is known.
        seconds: Wall time of the iteration.
        hf_energy_input: High-frequency energy of the filtering input.
        hf_energy_guidance: High-frequency energy of the guidance image.
    """

    k: int
    lambda_value: float
    residual: float
    isnr: float | None
    seconds: float
    hf_energy_input: float
    hf_energy_guidance: float


@dataclasses.dataclass
class RestorationTrace:
    """Per-iteration records of a restoration.

    Attributes:
        rho: The discrepancy fraction used in every iteration.
        records: One record per completed iteration.
    """

    rho: float
    records: list[IterationRecord] = dataclasses.field(default_factory=list)

    def __len__(self) -> int:
        """The number of completed iterations."""
        return len(self.records)

    @property
    def mean_seconds_per_iteration(self) -> float:
        """Average wall time of an iteration."""
        if not self.records:
            return 0.0
        return sum(record.seconds for record in self.records) / len(self.records)


def deconvolve(
    y: image.Image,
    kernel: psf.Kernel,
    params: RestorationParams,
    reference: image.Image | None = None,
) -> tuple[image.Image, RestorationTrace]:
    """Restores a blurred and noisy observation.

    Args:
        y: The observation.
        kernel: The normalized blur kernel.
        params: The restoration parameters.
        reference: The clean image, only used for ISNR in the trace.

    Returns:
        The restored image and the iteration trace.
    """
    if reference is not None:
        utils.require_same_shape(y=y.data, reference=reference.data)
    utils.require_odd(params.w, "Window size")
    if params.w > min(y.width, y.height):
        msg = f"Window size {params.w} exceeds the image dimensions."
        raise exceptions.InputError(msg)

    otf = spectral.psf_to_otf(kernel, y.width, y.height)
    grad = spectral.gradient_spectrum(y.width, y.height)
    fft_y = spectral.fft2(y)
    filter_params = params.filter_params

    if params.rho_override is not None:
        rho = params.rho_override
    else:
        rho = regparam.compute_rho(y, kernel, params.sigma)
    logger.info("Restoring %dx%d image with rho=%.4f.", y.width, y.height, rho)

    trace = RestorationTrace(rho=rho)
    estimate = y if params.warm_start else image.Image.zeros_like(y)
    for k in range(params.max_iter):
        start = time.perf_counter()
        ctx = regparam.DiscrepancyContext.from_images(
            y,
            estimate,
            otf,
            params.sigma,
            rho,
            fft_y=fft_y,
        )
        selection = regparam.select_lambda(ctx, estimate, y, kernel)
        if selection.is_infinite:
            guidance = filtering_input = estimate
        else:
            guidance = spectral.deblur_guidance(
                fft_y,
                otf,
                grad,
                ctx.fft_estimate,
                selection.lambda_value,
            )
            filtering_input = spectral.deblur_input(
                fft_y,
                otf,
                ctx.fft_estimate,
                selection.lambda_value,
            )
        restored = guided_filter.guided_filter(guidance, filtering_input, filter_params)
        elapsed = time.perf_counter() - start

        isnr = None if reference is None else metrics.isnr(reference, y, restored)
        trace.records.append(
            IterationRecord(
                k=k,
                lambda_value=selection.lambda_value,
                residual=selection.residual,
                isnr=isnr,
                seconds=elapsed,
                hf_energy_input=metrics.high_frequency_energy(filtering_input),
                hf_energy_guidance=metrics.high_frequency_energy(guidance),
            ),
        )
        logger.debug(
            "Iteration %d: lambda=%.6g residual=%.6g isnr=%s",
            k,
            selection.lambda_value,
            selection.residual,
            "n/a" if isnr is None else f"{isnr:.3f}",
        )

        converged = params.early_stop and _has_converged(estimate, restored)
        estimate = restored
        if converged:
            logger.info("Early stop after %d iterations.", k + 1)
            break

    return estimate, trace


def _has_converged(previous: image.Image, current: image.Image) -> bool:
    reference_energy = image.sq_norm(previous)
    if reference_energy == 0:
        return False
    change = image.sq_distance(current, previous) / reference_energy
    return change < settings.EARLY_STOP_TOL
