"""CSV exports of restoration traces and benchmark results."""

import logging
import math
import pathlib

import polars as pl

from guided_deconv.core import config
from guided_deconv.restoration import pipeline

settings = config.get_settings()
LOGGER_NAME = settings.LOGGER_NAME

logger = logging.getLogger(LOGGER_NAME)

TRACE_COLUMNS = ("iter", "lambda", "residual", "isnr")
FULL_PRECISION_COLUMNS = ("final_lambda", "rho")


def format_number(value: float | None) -> str:
    """Formats a float for CSV output; infinities become 'inf', None is empty."""
    if value is None:
        return ""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.10g}"


def trace_to_dataframe(trace: pipeline.RestorationTrace) -> pl.DataFrame:
    """Converts a restoration trace to a table of formatted values.

    Args:
        trace: The trace.

    Returns:
        A dataframe with columns iter, lambda, residual and isnr.
    """
    return pl.DataFrame(
        {
            "iter": [record.k for record in trace.records],
            "lambda": [format_number(record.lambda_value) for record in trace.records],
            "residual": [format_number(record.residual) for record in trace.records],
            "isnr": [
                None if record.isnr is None else format_number(record.isnr)
                for record in trace.records
            ],
        },
        schema={
            "iter": pl.Int64,
            "lambda": pl.Utf8,
            "residual": pl.Utf8,
            "isnr": pl.Utf8,
        },
    )


def write_trace_csv(
    trace: pipeline.RestorationTrace,
    path: str | pathlib.Path,
) -> None:
    """Writes a restoration trace as CSV.

    Args:
        trace: The trace.
        path: The destination path.
    """
    logger.debug("Writing trace to %s.", path)
    trace_to_dataframe(trace).write_csv(path)


def write_dataframe_csv(dataframe: pl.DataFrame, path: str | pathlib.Path) -> None:
    """Writes a report table as CSV with fixed float precision.

    The regularization weight and the discrepancy fraction are written with
    ten significant digits.

    Args:
        dataframe: The table.
        path: The destination path.
    """
    logger.debug("Writing report to %s.", path)
    exact = [name for name in FULL_PRECISION_COLUMNS if name in dataframe.columns]
    dataframe.with_columns(
        [
            pl.col(name).map_elements(format_number, return_dtype=pl.Utf8)
            for name in exact
        ],
    ).write_csv(path, float_precision=4)
