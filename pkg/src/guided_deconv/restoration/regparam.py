"""Automatic choice of the regularization weight by the discrepancy principle.

The Tikhonov solution u_p(λ) is accepted when its data residual
‖h∗u_p − y‖² equals ρ·N²·σ². The residual is evaluated in the Fourier domain
and grows monotonically with λ, so the crossing is found by bisection on
log10(λ). When the pre-estimate already satisfies the bound, no deblurring is
needed and λ is infinite.
"""

import dataclasses
import logging
import math

import numpy as np
import pywt
from numpy import typing as npt

from guided_deconv.core import config, exceptions, utils
from guided_deconv.imaging import image, psf
from guided_deconv.restoration import spectral

settings = config.get_settings()
LOGGER_NAME = settings.LOGGER_NAME

logger = logging.getLogger(LOGGER_NAME)

MAD_TO_SIGMA = 0.6745


@dataclasses.dataclass(frozen=True)
class RegSelection:
    """Outcome of one regularization weight selection.

    Attributes:
        lambda_value: The selected weight, math.inf when the pre-estimate is
            accepted as is.
        residual: The data residual achieved at lambda_value.
        target: The discrepancy target ρ·N²·σ².
        iterations: The number of bisection steps taken.
    """

    lambda_value: float
    residual: float
    target: float
    iterations: int

    @property
    def is_infinite(self) -> bool:
        """Whether the pre-estimate was accepted without deblurring."""
        return math.isinf(self.lambda_value)


@dataclasses.dataclass(frozen=True, eq=False)
class DiscrepancyContext:
    """Everything the residual functional needs for one iteration.

    Attributes:
        fft_y: Spectrum of the observation.
        fft_estimate: Spectrum of the pre-estimate u_E.
        otf: Optical transfer function of the blur.
        sigma: Noise standard deviation on the [0, 1] scale.
        n_pixels: Number of pixels N².
        rho: Fraction of the noise budget used as target, in (0, 1].
    """

    fft_y: spectral.Spectrum
    fft_estimate: spectral.Spectrum
    otf: spectral.Spectrum
    sigma: float
    n_pixels: int
    rho: float
    otf_power: npt.NDArray[np.float64] = dataclasses.field(init=False, repr=False)
    misfit_power: npt.NDArray[np.float64] = dataclasses.field(
        init=False,
        repr=False,
    )

    def __post_init__(self) -> None:
        """Validates the context and caches the frequency-wise terms."""
        utils.require_same_shape(
            fft_y=self.fft_y.values,
            fft_estimate=self.fft_estimate.values,
            otf=self.otf.values,
        )
        if self.n_pixels != self.fft_y.values.size:
            msg = f"n_pixels={self.n_pixels} does not match the spectra."
            raise exceptions.InputError(msg)
        if self.sigma <= 0:
            msg = f"The noise level must be positive, got sigma={self.sigma}."
            raise exceptions.InputError(msg)
        if not 0 < self.rho <= 1:
            msg = f"rho must lie in (0, 1], got {self.rho}."
            raise exceptions.InputError(msg)
        otf_power = np.abs(self.otf.values) ** 2
        misfit = self.otf.values * self.fft_estimate.values - self.fft_y.values
        object.__setattr__(self, "otf_power", otf_power)
        object.__setattr__(self, "misfit_power", np.abs(misfit) ** 2)

    @classmethod
    def from_images(  # noqa: PLR0913
        cls,
        y: image.Image,
        estimate: image.Image,
        otf: spectral.Spectrum,
        sigma: float,
        rho: float,
        fft_y: spectral.Spectrum | None = None,
    ) -> "DiscrepancyContext":
        """Builds a context from the observation and the pre-estimate.

        Args:
            y: The observation.
            estimate: The pre-estimate u_E.
            otf: Optical transfer function of the blur.
            sigma: Noise standard deviation on the [0, 1] scale.
            rho: Fraction of the noise budget.
            fft_y: Precomputed spectrum of y, if available.

        Returns:
            The context.
        """
        return cls(
            fft_y=fft_y if fft_y is not None else spectral.fft2(y),
            fft_estimate=spectral.fft2(estimate),
            otf=otf,
            sigma=sigma,
            n_pixels=y.n_pixels,
            rho=rho,
        )

    @property
    def target(self) -> float:
        """The discrepancy target ρ·N²·σ²."""
        return self.rho * self.n_pixels * self.sigma**2

    @property
    def estimate_residual(self) -> float:
        """‖h∗u_E − y‖², the residual reached as λ grows without bound."""
        return float(np.sum(self.misfit_power) / self.n_pixels)


def compute_rho(y: image.Image, kernel: psf.Kernel, sigma: float) -> float:
    """Fraction of the noise budget to use as discrepancy target.

    ρ = sqrt(1 − (‖y − μ(y)‖² − N²σ²) / (‖h‖₁²‖y‖²)), with the radicand
    clamped to [RHO_MIN², 1]. Smooth observations get a larger ρ.

    Args:
        y: The observation.
        kernel: The normalized blur kernel.
        sigma: Noise standard deviation on the [0, 1] scale.

    Returns:
        ρ in (0, 1].
    """
    rho_min = settings.RHO_MIN
    noise_energy = y.n_pixels * sigma**2
    denominator = psf.kernel_l1(kernel) ** 2 * image.sq_norm(y)
    if denominator == 0:
        logger.warning("Observation has zero energy; using rho=1.")
        return 1.0
    radicand = 1.0 - (image.centered_sq_norm(y) - noise_energy) / denominator
    clamped = min(max(radicand, rho_min**2), 1.0)
    if clamped != radicand:
        logger.warning("Clamped rho radicand %.6g to %.6g.", radicand, clamped)
    return math.sqrt(clamped)


def residual_at(ctx: DiscrepancyContext, lambda_value: float) -> float:
    """Data residual ‖h∗u_p − y‖² of the Tikhonov solution at λ.

    By Parseval, (1/N²)·Σ |λ(F(h)F(u_E) − F(y)) / (|F(h)|² + λ)|².

    Args:
        ctx: The discrepancy context.
        lambda_value: A positive regularization weight.

    Returns:
        The squared residual in the spatial domain.
    """
    if lambda_value <= 0:
        msg = f"The regularization weight must be positive, got {lambda_value}."
        raise exceptions.InputError(msg)
    shrink = lambda_value / (ctx.otf_power + lambda_value)
    return float(np.sum(ctx.misfit_power * shrink**2) / ctx.n_pixels)


def select_lambda(
    ctx: DiscrepancyContext,
    estimate: image.Image,
    y: image.Image,
    kernel: psf.Kernel,
) -> RegSelection:
    """Selects λ so that the Tikhonov residual meets the discrepancy target.

    Args:
        ctx: The discrepancy context, built from estimate and y.
        estimate: The pre-estimate u_E.
        y: The observation.
        kernel: The blur kernel.

    Returns:
        The selection; infinite when u_E already satisfies the bound.

    Raises:
        InputError: If the images or the kernel do not fit the context.
        BracketError: If the target cannot be bracketed.
    """
    utils.require_same_shape(
        estimate=estimate.data,
        y=y.data,
        spectrum=ctx.fft_y.values,
    )
    if kernel.size_x > y.width or kernel.size_y > y.height:
        msg = f"Kernel of size {kernel.size_x}x{kernel.size_y} exceeds the image."
        raise exceptions.InputError(msg)
    target = ctx.target
    estimate_residual = ctx.estimate_residual
    if estimate_residual <= target:
        logger.debug("Pre-estimate satisfies the discrepancy bound; lambda=inf.")
        return RegSelection(
            lambda_value=math.inf,
            residual=estimate_residual,
            target=target,
            iterations=0,
        )

    log_lower, log_upper = _bracket(ctx, target)
    rel_tol = settings.BISECTION_REL_TOL
    log_mid = 0.5 * (log_lower + log_upper)
    residual = residual_at(ctx, 10.0**log_mid)
    steps = 1
    while abs(residual - target) > rel_tol * target:
        if steps >= settings.BISECTION_MAX_STEPS:
            logger.warning(
                "Bisection stopped after %d steps at residual %.6g (target %.6g).",
                steps,
                residual,
                target,
            )
            break
        if residual < target:
            log_lower = log_mid
        else:
            log_upper = log_mid
        log_mid = 0.5 * (log_lower + log_upper)
        residual = residual_at(ctx, 10.0**log_mid)
        steps += 1

    logger.debug("Selected lambda=%.6g after %d bisection steps.", 10.0**log_mid, steps)
    return RegSelection(
        lambda_value=10.0**log_mid,
        residual=residual,
        target=target,
        iterations=steps,
    )


def estimate_noise_sigma(y: image.Image) -> float:
    """Estimates the noise level from the finest Haar diagonal details.

    Uses the median absolute deviation of the diagonal detail coefficients.
    This is a convenience for observations of unknown noise level and is not
    part of the restoration itself.

    Args:
        y: The observation.

    Returns:
        The estimated standard deviation on the [0, 1] scale.
    """
    _, (_, _, diagonal) = pywt.dwt2(y.data, "haar")
    return float(np.median(np.abs(diagonal)) / MAD_TO_SIGMA)


def _bracket(ctx: DiscrepancyContext, target: float) -> tuple[float, float]:
    """Finds log10(λ) bounds whose residuals straddle the target."""
    log_lower = -settings.BISECTION_LOG_BRACKET
    log_upper = settings.BISECTION_LOG_BRACKET
    lower_residual = residual_at(ctx, 10.0**log_lower)
    upper_residual = residual_at(ctx, 10.0**log_upper)
    for _ in range(settings.BISECTION_MAX_EXPANSIONS):
        if lower_residual <= target <= upper_residual:
            break
        if lower_residual > target:
            log_lower -= 2.0
            lower_residual = residual_at(ctx, 10.0**log_lower)
        if upper_residual < target:
            log_upper += 2.0
            upper_residual = residual_at(ctx, 10.0**log_upper)
    if not lower_residual <= target <= upper_residual:
        msg = (
            f"Cannot bracket the discrepancy target {target:.6g}: residual is "
            f"{lower_residual:.6g} at lambda=1e{log_lower:g} and "
            f"{upper_residual:.6g} at lambda=1e{log_upper:g}. Check sigma and rho."
        )
        raise exceptions.BracketError(msg, lower_residual, upper_residual, target)
    return log_lower, log_upper
