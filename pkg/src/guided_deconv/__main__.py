"""Entrypoint for guided_deconv."""

import sys

from guided_deconv.core import commands


def main_entrypoint() -> None:
    """Runs the command line interface and exits with its exit code."""
    sys.exit(commands.run())


if __name__ == "__main__":
    main_entrypoint()
