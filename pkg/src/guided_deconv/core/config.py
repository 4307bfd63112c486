"""Contains the package settings."""

import functools
import logging

import pydantic
import pydantic_settings


class Settings(pydantic_settings.BaseSettings):
    """Represents the package settings."""

    model_config = pydantic_settings.SettingsConfigDict(
        env_prefix="GUIDED_DECONV_",
        env_file=".env",
        env_file_encoding="utf-8",
    )

    APP_NAME: str = pydantic.Field(
        "guided-deconv",
        description="The name of the application.",
        json_schema_extra={
            "env": "APP_NAME",
        },
    )
    LOGGER_NAME: str = pydantic.Field(
        "guided_deconv",
        description="The name of the logger.",
        json_schema_extra={
            "env": "LOGGER_NAME",
        },
    )

    DEFAULT_WINDOW: int = pydantic.Field(
        3,
        description="The default guided filter window side length.",
        json_schema_extra={
            "env": "DEFAULT_WINDOW",
        },
    )
    DEFAULT_EPSILON: float = pydantic.Field(
        7.5e-4,
        description="The default guided filter regularization.",
        json_schema_extra={
            "env": "DEFAULT_EPSILON",
        },
    )
    DEFAULT_MAX_ITER: int = pydantic.Field(
        30,
        description="The default number of restoration iterations.",
        json_schema_extra={
            "env": "DEFAULT_MAX_ITER",
        },
    )
    GAUSSIAN_PSF_SIZE: int = pydantic.Field(
        25,
        description="The default support of the Gaussian point spread function.",
        json_schema_extra={
            "env": "GAUSSIAN_PSF_SIZE",
        },
    )

    RHO_MIN: float = pydantic.Field(
        0.05,
        description="Lower clamp of the discrepancy fraction rho.",
        json_schema_extra={
            "env": "RHO_MIN",
        },
    )
    BISECTION_REL_TOL: float = pydantic.Field(
        1e-3,
        description="Relative tolerance of the discrepancy bisection.",
        json_schema_extra={
            "env": "BISECTION_REL_TOL",
        },
    )
    BISECTION_MAX_STEPS: int = pydantic.Field(
        200,
        description="Maximum number of bisection steps.",
        json_schema_extra={
            "env": "BISECTION_MAX_STEPS",
        },
    )
    BISECTION_LOG_BRACKET: float = pydantic.Field(
        10.0,
        description="Initial bisection bracket is [10^-x, 10^x].",
        json_schema_extra={
            "env": "BISECTION_LOG_BRACKET",
        },
    )
    BISECTION_MAX_EXPANSIONS: int = pydantic.Field(
        3,
        description="Number of times the bracket may grow by a factor 100 per side.",
        json_schema_extra={
            "env": "BISECTION_MAX_EXPANSIONS",
        },
    )

    IMAG_RESIDUE_TOL: float = pydantic.Field(
        1e-8,
        description="Largest imaginary residue tolerated by inverse transforms.",
        json_schema_extra={
            "env": "IMAG_RESIDUE_TOL",
        },
    )
    EARLY_STOP_TOL: float = pydantic.Field(
        1e-8,
        description="Relative change below which early stopping ends restoration.",
        json_schema_extra={
            "env": "EARLY_STOP_TOL",
        },
    )


@functools.lru_cache
def get_settings() -> Settings:
    """Cached function to get the package settings.

    Returns:
        The package settings.
    """
    return Settings()


def initialize_logger(logging_level: int | None = None) -> None:
    """Initializes the logger.

    Args:
        logging_level: The logging level.
    """
    settings = get_settings()
    logger = logging.getLogger(settings.LOGGER_NAME)
    if logging_level:
        logger.setLevel(logging_level)

    formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )

    handler = logging.StreamHandler()
    handler.setFormatter(formatter)
    logger.addHandler(handler)
