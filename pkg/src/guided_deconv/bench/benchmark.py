"""Benchmark harness: degrade, restore and score standard test images.

Runs are independent and may execute concurrently; results are sorted before
the report is assembled so that report files are byte-stable. Wall times are
kept out of the main report for the same reason.
"""

import dataclasses
import logging
import math
import pathlib
from collections import abc
from concurrent import futures

import polars as pl

from guided_deconv.bench import degradation
from guided_deconv.bench import settings as bench_settings
from guided_deconv.core import config, exceptions
from guided_deconv.io import images, reports
from guided_deconv.restoration import metrics, pipeline

settings = config.get_settings()
LOGGER_NAME = settings.LOGGER_NAME

logger = logging.getLogger(LOGGER_NAME)


@dataclasses.dataclass(frozen=True)
class RunResult:
    """Outcome of one (image, setting, seed) run.

    Attributes:
        image: The image name, taken from the file stem.
        image_sha256: SHA-256 digest of the clean image file.
        setting: The setting number.
        seed: The noise seed.
        isnr: The final ISNR in dB.
        rho: The discrepancy fraction.
        final_lambda: The regularization weight of the last iteration.
        n_infinite: Number of iterations that skipped deblurring.
        seconds_per_iteration: Mean wall time of an iteration.
    """

    image: str
    image_sha256: str
    setting: int
    seed: int
    isnr: float
    rho: float
    final_lambda: float
    n_infinite: int
    seconds_per_iteration: float


@dataclasses.dataclass(frozen=True)
class BenchmarkReport:
    """Tables produced by a benchmark.

    Attributes:
        runs: One row per run, with the group statistics and references.
        summary: One row per (image, setting).
        timing: Mean wall time per iteration per (image, setting).
    """

    runs: pl.DataFrame
    summary: pl.DataFrame
    timing: pl.DataFrame

    def write(self, path: str | pathlib.Path) -> None:
        """Writes the report to path and its summary and timing alongside.

        Args:
            path: The path of the per-run report; the summary and timing
                tables get the suffixes _summary and _timing.
        """
        report_path = pathlib.Path(path)
        stem = report_path.with_suffix("")
        reports.write_dataframe_csv(self.runs, report_path)
        reports.write_dataframe_csv(
            self.summary,
            stem.with_name(f"{stem.name}_summary.csv"),
        )
        reports.write_dataframe_csv(
            self.timing,
            stem.with_name(f"{stem.name}_timing.csv"),
        )


def params_for_setting(
    params: pipeline.RestorationParams,
    setting: bench_settings.TestSetting,
) -> pipeline.RestorationParams:
    """Returns the restoration parameters with the noise level of a setting."""
    return params.model_copy(update={"sigma": setting.noise.sigma})


def run_single(
    image_path: str | pathlib.Path,
    setting_id: int,
    seed: int,
    params: pipeline.RestorationParams,
    gaussian_size: int | None = None,
) -> tuple[RunResult, pipeline.RestorationTrace]:
    """Degrades one image, restores it and scores the restoration.

    Args:
        image_path: The clean image.
        setting_id: The benchmark setting.
        seed: The noise seed.
        params: The restoration parameters; sigma is replaced by the noise
            level of the setting.
        gaussian_size: Support of the Gaussian kernel of setting 5.

    Returns:
        The run result and the restoration trace.
    """
    setting = bench_settings.get_setting(setting_id)
    original = images.load_image(image_path)
    digest = images.file_sha256(image_path)
    observation = degradation.degrade(original, setting, seed, gaussian_size)
    restored, trace = pipeline.deconvolve(
        observation,
        setting.kernel(gaussian_size),
        params_for_setting(params, setting),
        reference=original,
    )
    isnr = metrics.isnr(original, observation, restored)
    name = pathlib.Path(image_path).stem.lower()
    logger.info(
        "%s (sha256 %s), setting %d, seed %d: ISNR %s dB.",
        name,
        digest,
        setting_id,
        seed,
        metrics.format_db(isnr),
    )
    result = RunResult(
        image=name,
        image_sha256=digest,
        setting=setting_id,
        seed=seed,
        isnr=isnr,
        rho=trace.rho,
        final_lambda=trace.records[-1].lambda_value,
        n_infinite=sum(math.isinf(record.lambda_value) for record in trace.records),
        seconds_per_iteration=trace.mean_seconds_per_iteration,
    )
    return result, trace


def run_benchmark(  # noqa: PLR0913
    image_paths: abc.Sequence[str | pathlib.Path],
    setting_ids: abc.Sequence[int],
    seeds: abc.Sequence[int],
    params: pipeline.RestorationParams,
    gaussian_size: int | None = None,
    max_workers: int = 1,
) -> BenchmarkReport:
    """Runs every (image, setting, seed) combination.

    Args:
        image_paths: The clean images.
        setting_ids: The benchmark settings.
        seeds: The noise seeds.
        params: The restoration parameters; sigma is replaced per setting.
        gaussian_size: Support of the Gaussian kernel of setting 5.
        max_workers: Number of concurrent runs.

    Returns:
        The benchmark report.

    Raises:
        InputError: If an image is missing or a setting is unknown.
    """
    for setting_id in setting_ids:
        bench_settings.get_setting(setting_id)
    for image_path in image_paths:
        if not pathlib.Path(image_path).is_file():
            msg = f"Benchmark image {image_path} does not exist."
            raise exceptions.InputError(msg)

    jobs = [
        (image_path, setting_id, seed)
        for image_path in image_paths
        for setting_id in setting_ids
        for seed in seeds
    ]
    logger.info("Running %d benchmark jobs with seeds %s.", len(jobs), list(seeds))
    with futures.ThreadPoolExecutor(max_workers=max_workers) as executor:
        pending = [
            executor.submit(run_single, path, setting_id, seed, params, gaussian_size)
            for path, setting_id, seed in jobs
        ]
        results = [future.result()[0] for future in pending]

    return build_report(results)


def build_report(results: abc.Sequence[RunResult]) -> BenchmarkReport:
    """Assembles the report tables from run results.

    Args:
        results: The run results, in any order.

    Returns:
        The report.
    """
    runs = pl.DataFrame(
        [dataclasses.asdict(result) for result in results],
        schema={
            "image": pl.Utf8,
            "image_sha256": pl.Utf8,
            "setting": pl.Int64,
            "seed": pl.Int64,
            "isnr": pl.Float64,
            "rho": pl.Float64,
            "final_lambda": pl.Float64,
            "n_infinite": pl.Int64,
            "seconds_per_iteration": pl.Float64,
        },
    ).sort(["image", "setting", "seed"])

    keys = ["image", "setting"]
    timing = (
        runs.group_by(keys)
        .agg(_seed_list(), pl.col("seconds_per_iteration").mean())
        .with_columns(pl.col("seeds").list.join(" "))
        .sort(keys)
    )
    summary = (
        runs.group_by(keys)
        .agg(
            pl.col("image_sha256").first(),
            pl.col("seed").count().alias("n_seeds"),
            _seed_list(),
            pl.col("isnr").mean().alias("isnr_mean"),
            pl.col("isnr").std(ddof=0).alias("isnr_std"),
        )
        .with_columns(pl.col("seeds").list.join(" "))
        .sort(keys)
        .join(_reference_table(runs), on=keys, how="left")
        .with_columns(
            (pl.col("isnr_mean") - pl.col("ref_ours")).alias("delta_vs_reference"),
            (pl.col("isnr_mean") > pl.col("ref_L0-AbS")).alias("beats_l0_abs"),
        )
        .sort(keys)
    )
    runs = (
        runs.drop("seconds_per_iteration")
        .join(
            summary.select([*keys, "isnr_mean", "isnr_std", "ref_ours", "ref_L0-AbS"]),
            on=keys,
            how="left",
        )
        .sort(["image", "setting", "seed"])
    )
    return BenchmarkReport(runs=runs, summary=summary, timing=timing)


def _seed_list() -> pl.Expr:
    """The sorted seeds of a group as strings, for joining into one column."""
    return pl.col("seed").sort().cast(pl.Utf8).alias("seeds")


def emit_lambda_trace(  # noqa: PLR0913
    image_path: str | pathlib.Path,
    setting_id: int,
    seed: int,
    params: pipeline.RestorationParams,
    output_path: str | pathlib.Path,
    gaussian_size: int | None = None,
) -> pipeline.RestorationTrace:
    """Restores one degraded image and writes its λ trace as CSV.

    Args:
        image_path: The clean image.
        setting_id: The benchmark setting.
        seed: The noise seed.
        params: The restoration parameters; sigma is replaced by the noise
            level of the setting.
        output_path: Where to write the trace CSV.
        gaussian_size: Support of the Gaussian kernel of setting 5.

    Returns:
        The trace.
    """
    _, trace = run_single(image_path, setting_id, seed, params, gaussian_size)
    reports.write_trace_csv(trace, output_path)
    return trace


def _reference_table(runs: pl.DataFrame) -> pl.DataFrame:
    """Published scores for every (image, setting) present in the runs."""
    rows = []
    for image_name, setting_id in runs.select("image", "setting").unique().rows():
        scores = bench_settings.reference_scores(image_name, setting_id) or {}
        row: dict[str, str | int | float | None] = {
            "image": image_name,
            "setting": setting_id,
        }
        row.update(
            {f"ref_{method}": scores.get(method) for method in bench_settings.METHODS},
        )
        rows.append(row)
    schema: dict[str, type[pl.DataType]] = {"image": pl.Utf8, "setting": pl.Int64}
    schema.update({f"ref_{method}": pl.Float64 for method in bench_settings.METHODS})
    return pl.DataFrame(rows, schema=schema)
