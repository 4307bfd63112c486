"""Module for plotting restoration traces."""

import logging
import math
import pathlib

from plotly import graph_objects

from guided_deconv.core import config
from guided_deconv.restoration import pipeline

settings = config.get_settings()
LOGGER_NAME = settings.LOGGER_NAME

logger = logging.getLogger(LOGGER_NAME)


def build_trace_plot(
    trace: pipeline.RestorationTrace,
    title: str,
) -> graph_objects.Figure:
    """Builds a plot of λ, and ISNR when known, per iteration.

    Args:
        trace: The restoration trace.
        title: The title of the plot.

    Returns:
        The plot. λ uses a logarithmic axis; iterations that skipped
        deblurring (infinite λ) are left as gaps.
    """
    logger.debug("Building trace plot.")
    iterations = [record.k for record in trace.records]
    lambdas = [
        None if math.isinf(record.lambda_value) else record.lambda_value
        for record in trace.records
    ]

    figure = graph_objects.Figure()
    figure.add_trace(
        graph_objects.Scatter(
            x=iterations,
            y=lambdas,
            mode="lines+markers",
            name="λ",
            line_color="blue",
        ),
    )
    isnr_values = [record.isnr for record in trace.records]
    has_isnr = any(value is not None for value in isnr_values)
    if has_isnr:
        figure.add_trace(
            graph_objects.Scatter(
                x=iterations,
                y=isnr_values,
                mode="lines",
                name="ISNR (dB)",
                line_color="black",
                yaxis="y2",
            ),
        )

    layout: dict[str, object] = {
        "title": title,
        "xaxis": {"title": "Iteration"},
        "yaxis": {"title": "λ", "type": "log"},
        "legend": {
            "orientation": "h",
            "yanchor": "bottom",
            "y": 1.02,
            "xanchor": "right",
            "x": 1,
        },
    }
    if has_isnr:
        layout["yaxis2"] = {"title": "ISNR (dB)", "overlaying": "y", "side": "right"}
    figure.update_layout(layout)
    return figure


def write_trace_plot(
    trace: pipeline.RestorationTrace,
    title: str,
    path: str | pathlib.Path,
) -> None:
    """Writes the trace plot as a standalone HTML file.

    Args:
        trace: The restoration trace.
        title: The title of the plot.
        path: The destination path.
    """
    logger.debug("Writing trace plot to %s.", path)
    build_trace_plot(trace, title).write_html(path)
