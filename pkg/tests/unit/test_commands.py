"""Tests for the command line subcommands."""

import argparse
import pathlib

import pytest
from pytest_mock import plugin

from guided_deconv.core import cli, commands, exceptions
from guided_deconv.imaging import psf
from guided_deconv.io import images, kernels, run_config


@pytest.fixture
def degraded_file(image_file: pathlib.Path, tmp_path: pathlib.Path) -> pathlib.Path:
    """The blocks image degraded with test 4 and seed 0."""
    path = tmp_path / "degraded.pgm"
    exit_code = commands.run(
        ["degrade", "--in", str(image_file), "--out", str(path), "--test", "4"],
    )
    assert exit_code == cli.EXIT_SUCCESS
    return path


def _namespace(**overrides: object) -> argparse.Namespace:
    values = {
        "w": None,
        "epsilon": None,
        "max_iter": None,
        "rho": None,
        "warm_start": False,
        "early_stop": False,
    }
    values.update(overrides)
    return argparse.Namespace(**values)


def test_degrade_is_reproducible(
    image_file: pathlib.Path,
    degraded_file: pathlib.Path,
    tmp_path: pathlib.Path,
) -> None:
    """Test that the same seed writes the same file."""
    again = tmp_path / "again.pgm"

    exit_code = commands.run(
        ["degrade", "--in", str(image_file), "--out", str(again), "--test", "4"],
    )

    assert exit_code == cli.EXIT_SUCCESS
    assert again.read_bytes() == degraded_file.read_bytes()


def test_restore_with_trace(
    image_file: pathlib.Path,
    degraded_file: pathlib.Path,
    tmp_path: pathlib.Path,
) -> None:
    """Test a restoration with a trace and a reference image."""
    out = tmp_path / "restored.png"
    trace = tmp_path / "trace.csv"

    exit_code = commands.run(
        [
            "restore",
            "--in",
            str(degraded_file),
            "--out",
            str(out),
            "--psf-test",
            "4",
            "--sigma255",
            "7",
            "--max-iter",
            "3",
            "--trace",
            str(trace),
            "--reference",
            str(image_file),
        ],
    )

    assert exit_code == cli.EXIT_SUCCESS
    assert images.load_image(out).width == 32
    lines = trace.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 4
    assert all(line.split(",")[3] for line in lines[1:])


def test_restore_with_kernel_file_and_estimated_noise(
    degraded_file: pathlib.Path,
    tmp_path: pathlib.Path,
) -> None:
    """Test a restoration from a kernel file without a noise level."""
    kernel_path = tmp_path / "kernel.txt"
    kernels.dump_kernel(psf.Kernel(psf.radial_weights()), kernel_path)
    out = tmp_path / "restored.pgm"

    exit_code = commands.run(
        [
            "restore",
            "--in",
            str(degraded_file),
            "--out",
            str(out),
            "--psf-file",
            str(kernel_path),
            "--max-iter",
            "2",
        ],
    )

    assert exit_code == cli.EXIT_SUCCESS
    assert out.is_file()


def test_evaluate_prints_metrics(
    image_file: pathlib.Path,
    degraded_file: pathlib.Path,
    capsys: pytest.CaptureFixture[str],
) -> None:
    """Test that evaluate prints the three metrics."""
    exit_code = commands.run(
        [
            "evaluate",
            "--orig",
            str(image_file),
            "--degraded",
            str(degraded_file),
            "--restored",
            str(image_file),
        ],
    )

    output = capsys.readouterr().out.splitlines()
    assert exit_code == cli.EXIT_SUCCESS
    assert output == ["mse=0", "psnr=inf", "isnr=inf"]


def test_bench_and_trace(image_file: pathlib.Path, tmp_path: pathlib.Path) -> None:
    """Test the bench and trace subcommands."""
    report = tmp_path / "report.csv"
    trace = tmp_path / "trace.csv"
    plot = tmp_path / "trace.html"

    bench_code = commands.run(
        [
            "bench",
            "--images",
            str(image_file),
            "--tests",
            "1",
            "--seeds",
            "0",
            "1",
            "--report",
            str(report),
            "--max-iter",
            "2",
        ],
    )
    trace_code = commands.run(
        [
            "trace",
            "--in",
            str(image_file),
            "--test",
            "1",
            "--out",
            str(trace),
            "--plot",
            str(plot),
            "--max-iter",
            "2",
        ],
    )

    assert (bench_code, trace_code) == (cli.EXIT_SUCCESS, cli.EXIT_SUCCESS)
    assert len(report.read_text(encoding="utf-8").splitlines()) == 3
    assert (tmp_path / "report_summary.csv").is_file()
    assert trace.is_file()
    assert plot.is_file()


def test_missing_input_is_usage_error(tmp_path: pathlib.Path) -> None:
    """Test that unreadable inputs exit with the usage code."""
    exit_code = commands.run(
        [
            "degrade",
            "--in",
            str(tmp_path / "missing.pgm"),
            "--out",
            str(tmp_path / "out.pgm"),
            "--test",
            "1",
        ],
    )

    assert exit_code == cli.EXIT_USAGE


def test_negative_seed_is_usage_error(
    image_file: pathlib.Path,
    tmp_path: pathlib.Path,
) -> None:
    """Test that a negative seed exits with the usage code."""
    exit_code = commands.run(
        [
            "degrade",
            "--in",
            str(image_file),
            "--out",
            str(tmp_path / "out.pgm"),
            "--test",
            "1",
            "--seed",
            "-1",
        ],
    )

    assert exit_code == cli.EXIT_USAGE


def test_invalid_parameters_are_usage_errors(
    degraded_file: pathlib.Path,
    tmp_path: pathlib.Path,
) -> None:
    """Test that an even window exits with the usage code."""
    exit_code = commands.run(
        [
            "restore",
            "--in",
            str(degraded_file),
            "--out",
            str(tmp_path / "out.pgm"),
            "--psf-test",
            "4",
            "--sigma255",
            "7",
            "--w",
            "4",
        ],
    )

    assert exit_code == cli.EXIT_USAGE


@pytest.mark.parametrize(
    "error",
    [
        exceptions.BracketError("no bracket", 1.0, 2.0, 3.0),
        exceptions.InternalError("imaginary residue"),
    ],
)
def test_numerical_failure_exit_code(
    mocker: plugin.MockerFixture,
    degraded_file: pathlib.Path,
    tmp_path: pathlib.Path,
    error: Exception,
) -> None:
    """Test that numerical and internal failures exit with the numerical code."""
    mocker.patch(
        "guided_deconv.core.commands.pipeline.deconvolve",
        side_effect=error,
    )

    exit_code = commands.run(
        [
            "restore",
            "--in",
            str(degraded_file),
            "--out",
            str(tmp_path / "out.pgm"),
            "--psf-test",
            "4",
            "--sigma255",
            "7",
        ],
    )

    assert exit_code == cli.EXIT_NUMERICAL


def test_resolve_params_precedence() -> None:
    """Test that flags override the file, which overrides the settings."""
    args = _namespace(w=7, rho=0.4)
    file_config = run_config.RunConfig(w=5, epsilon=1e-3)

    actual = commands.resolve_params(args, file_config, sigma=0.02)

    assert actual.w == 7
    assert actual.epsilon == 1e-3
    assert actual.max_iter == 30
    assert actual.rho_override == 0.4
    assert actual.sigma == 0.02


def test_resolve_params_invalid() -> None:
    """Test that invalid combinations become input errors."""
    with pytest.raises(exceptions.InputError):
        commands.resolve_params(_namespace(w=2), run_config.RunConfig(), sigma=0.02)


def test_config_file_is_used(
    image_file: pathlib.Path,
    tmp_path: pathlib.Path,
    mocker: plugin.MockerFixture,
) -> None:
    """Test that a configuration file sets the seed."""
    config_path = tmp_path / "run.cfg"
    config_path.write_text("seed=5\n", encoding="utf-8")
    spy = mocker.spy(commands.degradation, "degrade")

    exit_code = commands.run(
        [
            "--config",
            str(config_path),
            "degrade",
            "--in",
            str(image_file),
            "--out",
            str(tmp_path / "out.pgm"),
            "--test",
            "2",
        ],
    )

    assert exit_code == cli.EXIT_SUCCESS
    assert spy.call_args.args[2] == 5
