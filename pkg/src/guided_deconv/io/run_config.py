"""Plain-text key=value run configuration files."""

import logging
import pathlib

import pydantic

from guided_deconv.core import config, exceptions

settings = config.get_settings()
LOGGER_NAME = settings.LOGGER_NAME

logger = logging.getLogger(LOGGER_NAME)


class RunConfig(pydantic.BaseModel):
    """Values read from a run configuration file.

    Attributes:
        w: Guided filter window side length.
        epsilon: Guided filter regularization.
        max_iter: Number of restoration iterations.
        rho: Fixed discrepancy fraction.
        seed: Noise seed.
        psf_size_gaussian: Support of the Gaussian point spread function.
    """

    model_config = pydantic.ConfigDict(extra="forbid", frozen=True)

    w: int | None = pydantic.Field(default=None, ge=1)
    epsilon: float | None = pydantic.Field(default=None, gt=0.0)
    max_iter: int | None = pydantic.Field(default=None, ge=1)
    rho: float | None = pydantic.Field(default=None, gt=0.0, le=1.0)
    seed: int | None = pydantic.Field(default=None, ge=0)
    psf_size_gaussian: int | None = pydantic.Field(default=None, ge=1)

    @classmethod
    def from_file(cls, path: str | pathlib.Path) -> "RunConfig":
        """Reads a configuration file.

        Lines hold key=value pairs; blank lines and text after '#' are ignored.

        Args:
            path: The path to the configuration file.

        Returns:
            The validated configuration.

        Raises:
            InputError: If the file is missing, malformed, or holds unknown
                keys or invalid values.
        """
        logger.debug("Reading run configuration %s.", path)
        try:
            text = pathlib.Path(path).read_text(encoding="utf-8")
        except OSError as error:
            msg = f"{path}: cannot read configuration ({error})."
            raise exceptions.InputError(msg) from error

        values: dict[str, str] = {}
        for line_number, raw_line in enumerate(text.splitlines(), start=1):
            line = raw_line.split("#", maxsplit=1)[0].strip()
            if not line:
                continue
            key, separator, value = line.partition("=")
            if not separator:
                msg = f"{path}:{line_number}: expected key=value, got {line!r}."
                raise exceptions.InputError(msg)
            values[key.strip()] = value.strip()

        try:
            return cls.model_validate(values)
        except pydantic.ValidationError as error:
            msg = f"{path}: invalid configuration ({error})."
            raise exceptions.InputError(msg) from error
