"""Implementations of the command line subcommands."""

import argparse
import logging
from typing import TypeVar

import pydantic

from guided_deconv.bench import benchmark, degradation
from guided_deconv.bench import settings as bench_settings
from guided_deconv.core import cli, config, exceptions
from guided_deconv.imaging import image
from guided_deconv.io import images, kernels, reports, run_config
from guided_deconv.plotting import trace_plots
from guided_deconv.restoration import metrics, pipeline, regparam

settings = config.get_settings()
LOGGER_NAME = settings.LOGGER_NAME

logger = logging.getLogger(LOGGER_NAME)

DEFAULT_SEED = 0
# Benchmark runs need a placeholder; every setting replaces it.
PLACEHOLDER_SIGMA = 1.0

T = TypeVar("T")


def run(argv: list[str] | None = None) -> int:
    """Parses the arguments and runs the requested subcommand.

    Args:
        argv: The arguments; defaults to sys.argv.

    Returns:
        The exit code: 0 on success, 1 on input errors, 2 on numerical
        failures.
    """
    args = cli.parse_args(argv)
    config.initialize_logger(logging_level=args.verbosity)
    handlers = {
        "degrade": run_degrade,
        "restore": run_restore,
        "evaluate": run_evaluate,
        "bench": run_bench,
        "trace": run_trace,
    }
    try:
        file_config = _load_run_config(args)
        handlers[args.command](args, file_config)
    except (exceptions.NumericalError, exceptions.InternalError):
        return cli.EXIT_NUMERICAL
    except (exceptions.InputError, pydantic.ValidationError):
        return cli.EXIT_USAGE
    return cli.EXIT_SUCCESS


def run_degrade(args: argparse.Namespace, file_config: run_config.RunConfig) -> None:
    """Writes a benchmark degradation of an image."""
    seed = _resolve_seed(args, file_config)
    gaussian_size = _resolve_gaussian_size(args, file_config)
    setting = bench_settings.get_setting(args.test)
    original = images.load_image(args.input)
    degraded = degradation.degrade(original, setting, seed, gaussian_size)
    images.save_image(degraded, args.out)
    logger.info(
        "Wrote test %d degradation with seed %d to %s.",
        args.test,
        seed,
        args.out,
    )


def run_restore(args: argparse.Namespace, file_config: run_config.RunConfig) -> None:
    """Restores an image and optionally writes its trace."""
    observation = images.load_image(args.input)
    if args.psf_file is not None:
        kernel = kernels.load_kernel(args.psf_file).normalized()
    else:
        gaussian_size = _resolve_gaussian_size(args, file_config)
        kernel = bench_settings.get_setting(args.psf_test).kernel(gaussian_size)

    if args.sigma255 is not None:
        sigma = image.NoiseModel(sigma255=args.sigma255).sigma
    else:
        sigma = regparam.estimate_noise_sigma(observation)
        logger.info("Estimated noise sigma255=%.4f from the observation.", sigma * 255)

    reference = None if args.reference is None else images.load_image(args.reference)
    params = resolve_params(args, file_config, sigma)
    restored, trace = pipeline.deconvolve(observation, kernel, params, reference)
    images.save_image(restored, args.out)
    if args.trace is not None:
        reports.write_trace_csv(trace, args.trace)
    logger.info("Wrote restoration to %s.", args.out)


def run_evaluate(args: argparse.Namespace, _: run_config.RunConfig) -> None:
    """Prints the quality metrics of a restoration."""
    original = images.load_image(args.orig)
    degraded = images.load_image(args.degraded)
    restored = images.load_image(args.restored)
    print(f"mse={metrics.mse(original, restored):.6g}")  # noqa: T201
    print(f"psnr={metrics.format_db(metrics.psnr(original, restored))}")  # noqa: T201
    isnr = metrics.isnr(original, degraded, restored)
    print(f"isnr={metrics.format_db(isnr)}")  # noqa: T201


def run_bench(args: argparse.Namespace, file_config: run_config.RunConfig) -> None:
    """Runs the benchmark and writes its report."""
    seeds = args.seeds
    if seeds is None:
        seeds = [_resolve_seed(args, file_config)]
    report = benchmark.run_benchmark(
        args.images,
        args.tests,
        seeds,
        resolve_params(args, file_config, PLACEHOLDER_SIGMA),
        gaussian_size=_resolve_gaussian_size(args, file_config),
        max_workers=args.workers,
    )
    report.write(args.report)
    logger.info("Wrote benchmark report with seeds %s to %s.", seeds, args.report)


def run_trace(args: argparse.Namespace, file_config: run_config.RunConfig) -> None:
    """Writes the λ trace of one benchmark run."""
    seed = _resolve_seed(args, file_config)
    trace = benchmark.emit_lambda_trace(
        args.input,
        args.test,
        seed,
        resolve_params(args, file_config, PLACEHOLDER_SIGMA),
        args.out,
        gaussian_size=_resolve_gaussian_size(args, file_config),
    )
    if args.plot is not None:
        title = f"{args.input.stem}, test {args.test}, seed {seed}"
        trace_plots.write_trace_plot(trace, title, args.plot)
    logger.info("Wrote trace with seed %d to %s.", seed, args.out)


def resolve_params(
    args: argparse.Namespace,
    file_config: run_config.RunConfig,
    sigma: float,
) -> pipeline.RestorationParams:
    """Combines flags, configuration file and settings into parameters.

    Flags override the configuration file, which overrides the settings.

    Args:
        args: The parsed arguments.
        file_config: The run configuration file values.
        sigma: The noise standard deviation on the [0, 1] scale.

    Returns:
        The restoration parameters.
    """
    values = {
        "w": _first_set(args.w, file_config.w, settings.DEFAULT_WINDOW),
        "epsilon": _first_set(
            args.epsilon,
            file_config.epsilon,
            settings.DEFAULT_EPSILON,
        ),
        "max_iter": _first_set(
            args.max_iter,
            file_config.max_iter,
            settings.DEFAULT_MAX_ITER,
        ),
        "rho_override": _first_set(args.rho, file_config.rho, None),
    }
    try:
        return pipeline.RestorationParams(
            sigma=sigma,
            warm_start=args.warm_start,
            early_stop=args.early_stop,
            **values,
        )
    except ValueError as error:
        msg = f"Invalid restoration parameters ({error})."
        raise exceptions.InputError(msg) from error


def _load_run_config(args: argparse.Namespace) -> run_config.RunConfig:
    if args.config is None:
        return run_config.RunConfig()
    return run_config.RunConfig.from_file(args.config)


def _resolve_seed(args: argparse.Namespace, file_config: run_config.RunConfig) -> int:
    seed = _first_set(getattr(args, "seed", None), file_config.seed, DEFAULT_SEED)
    return int(seed or 0)


def _resolve_gaussian_size(
    args: argparse.Namespace,
    file_config: run_config.RunConfig,
) -> int:
    size = _first_set(
        args.psf_size_gaussian,
        file_config.psf_size_gaussian,
        settings.GAUSSIAN_PSF_SIZE,
    )
    return int(size or settings.GAUSSIAN_PSF_SIZE)


def _first_set(*values: T | None) -> T | None:
    """Returns the first value that is not None."""
    return next((value for value in values if value is not None), None)

