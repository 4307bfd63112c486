"""Command line interface for guided_deconv."""

import argparse
import logging
import pathlib
import sys
from typing import Any, NoReturn

from guided_deconv.core import config

settings = config.get_settings()
LOGGER_NAME = settings.LOGGER_NAME
logger = logging.getLogger(LOGGER_NAME)

EXIT_SUCCESS = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2


class _ArgumentParser(argparse.ArgumentParser):
    """Argument parser that exits with the usage error code."""

    def error(self, message: str) -> NoReturn:
        """Prints the usage and exits with EXIT_USAGE."""
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    """Parse command line arguments.

    Args:
        argv: The arguments to parse; defaults to sys.argv.

    Returns:
        argparse.Namespace: The parsed command line arguments.
    """
    parser = _ArgumentParser(
        description=(
            "Guided-filter regularized image deconvolution and its benchmark."
        ),
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument(
        "-v",
        "--verbosity",
        help="Logging verbosity, uses Python's logging module's logging levels.",
        type=int,
        default=20,
        choices=[10, 20, 30, 40, 50],
    )
    parser.add_argument(
        "--config",
        help="Run configuration file with key=value lines.",
        type=pathlib.Path,
        default=None,
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    degrade = subparsers.add_parser(
        "degrade",
        help="Blur an image and add seeded noise.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    degrade.add_argument("--in", dest="input", type=pathlib.Path, required=True)
    degrade.add_argument("--out", type=pathlib.Path, required=True)
    degrade.add_argument("--test", type=int, choices=range(1, 6), required=True)
    degrade.add_argument("--seed", type=int, default=None)
    _add_gaussian_size_argument(degrade)

    restore = subparsers.add_parser(
        "restore",
        help="Restore a degraded image.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    restore.add_argument("--in", dest="input", type=pathlib.Path, required=True)
    restore.add_argument("--out", type=pathlib.Path, required=True)
    psf_source = restore.add_mutually_exclusive_group(required=True)
    psf_source.add_argument("--psf-test", type=int, choices=range(1, 6))
    psf_source.add_argument("--psf-file", type=pathlib.Path)
    restore.add_argument(
        "--sigma255",
        type=float,
        default=None,
        help="Noise standard deviation for 8-bit intensities; estimated if omitted.",
    )
    restore.add_argument(
        "--trace",
        type=pathlib.Path,
        default=None,
        help="Write the per-iteration trace as CSV.",
    )
    restore.add_argument(
        "--reference",
        type=pathlib.Path,
        default=None,
        help="Clean image used for ISNR in the trace.",
    )
    _add_gaussian_size_argument(restore)
    _add_restoration_arguments(restore)

    evaluate = subparsers.add_parser(
        "evaluate",
        help="Print MSE, PSNR and ISNR of a restoration.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    evaluate.add_argument("--orig", type=pathlib.Path, required=True)
    evaluate.add_argument("--degraded", type=pathlib.Path, required=True)
    evaluate.add_argument("--restored", type=pathlib.Path, required=True)

    bench = subparsers.add_parser(
        "bench",
        help="Run the benchmark and write an ISNR report.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    bench.add_argument("--images", type=pathlib.Path, nargs="+", required=True)
    bench.add_argument(
        "--tests",
        type=int,
        nargs="+",
        choices=range(1, 6),
        default=[1, 2, 3, 4, 5],
    )
    bench.add_argument("--seeds", type=int, nargs="+", default=None)
    bench.add_argument("--report", type=pathlib.Path, required=True)
    bench.add_argument(
        "--workers",
        type=int,
        default=1,
        help="Number of concurrent runs.",
    )
    _add_gaussian_size_argument(bench)
    _add_restoration_arguments(bench)

    trace = subparsers.add_parser(
        "trace",
        help="Write the λ trace of one benchmark run.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    trace.add_argument("--in", dest="input", type=pathlib.Path, required=True)
    trace.add_argument("--test", type=int, choices=range(1, 6), required=True)
    trace.add_argument("--seed", type=int, default=None)
    trace.add_argument("--out", type=pathlib.Path, required=True)
    trace.add_argument(
        "--plot",
        type=pathlib.Path,
        default=None,
        help="Also write the trace as an HTML plot.",
    )
    _add_gaussian_size_argument(trace)
    _add_restoration_arguments(trace)

    args = parser.parse_args(argv)
    logger.debug("Parsed arguments:")
    for arg in vars(args):
        logger.debug("  %s = %s", arg, _add_string_quotation(getattr(args, arg)))
    return args


def _add_restoration_arguments(parser: argparse.ArgumentParser) -> None:
    """Adds the restoration parameter flags; unset flags defer to the config."""
    parser.add_argument("--w", type=int, default=None, help="Guided filter window.")
    parser.add_argument(
        "--epsilon",
        type=float,
        default=None,
        help="Guided filter regularization.",
    )
    parser.add_argument(
        "--max-iter",
        type=int,
        default=None,
        help="Number of iterations.",
    )
    parser.add_argument(
        "--rho",
        type=float,
        default=None,
        help="Fixed discrepancy fraction; computed from the image if omitted.",
    )
    parser.add_argument(
        "--warm-start",
        action="store_true",
        help="Start from the observation instead of zero.",
    )
    parser.add_argument(
        "--early-stop",
        action="store_true",
        help="Stop once the estimate no longer changes.",
    )


def _add_gaussian_size_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--psf-size-gaussian",
        type=int,
        default=None,
        help="Support of the Gaussian kernel of test 5.",
    )


def _add_string_quotation(to_print: Any) -> str:  # noqa: ANN401
    """Adds quotation marks around a string or pathlib.Path object.

    Args:
        to_print: The object to add quotation marks to.

    Returns:
        Any: The object with quotation marks added, if it is a string or
            pathlib.Path object. Otherwise, the original object is returned.
    """
    if isinstance(to_print, str | pathlib.Path):
        return f'"{to_print}"'
    return str(to_print)
