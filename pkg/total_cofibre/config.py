import logging
import os
from functools import lru_cache

from pydantic import BaseModel, Field, ValidationError, field_validator

from .errors import ConfigurationError


# --- Constants ---
ENV_MAX_ELEMENTS = "GAMMA_MAX_ELEMENTS"
ENV_MAX_DIMENSION = "GAMMA_MAX_DIMENSION"
ENV_LOG_LEVEL = "GAMMA_LOG_LEVEL"

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class Settings(BaseModel):
    """Process-wide limits and defaults, read from the environment."""

    model_config = {"frozen": True}

    max_elements: int = Field(default=512, gt=0)
    max_generator_dimension: int = Field(default=4, ge=0)
    log_level: str = "WARNING"

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"unknown logging level '{value}'")
        return level

    @classmethod
    def from_env(cls) -> "Settings":
        raw = {
            "max_elements": os.environ.get(ENV_MAX_ELEMENTS),
            "max_generator_dimension": os.environ.get(ENV_MAX_DIMENSION),
            "log_level": os.environ.get(ENV_LOG_LEVEL),
        }
        try:
            return cls(**{key: value for key, value in raw.items() if value is not None})
        except ValidationError as e:
            raise ConfigurationError(f"invalid environment configuration: {e}") from e


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings.from_env()


def configure_logging(level: str | None = None) -> None:
    """Install the root handler. Only the CLI calls this; library modules just log."""
    logging.basicConfig(level=(level or get_settings().log_level).upper(), format=LOG_FORMAT)
