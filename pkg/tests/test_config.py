import logging

import pytest

from total_cofibre.config import ENV_LOG_LEVEL, ENV_MAX_DIMENSION, ENV_MAX_ELEMENTS, Settings, get_settings
from total_cofibre.errors import ConfigurationError


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


def test_defaults(monkeypatch):
    for name in (ENV_MAX_ELEMENTS, ENV_MAX_DIMENSION, ENV_LOG_LEVEL):
        monkeypatch.delenv(name, raising=False)
    settings = get_settings()
    assert settings == Settings(max_elements=512, max_generator_dimension=4, log_level="WARNING")


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv(ENV_MAX_ELEMENTS, "40")
    monkeypatch.setenv(ENV_MAX_DIMENSION, "2")
    monkeypatch.setenv(ENV_LOG_LEVEL, "debug")
    settings = get_settings()
    assert (settings.max_elements, settings.max_generator_dimension, settings.log_level) == (40, 2, "DEBUG")
    assert logging.getLevelName(settings.log_level) == logging.DEBUG


@pytest.mark.parametrize(
    "name, value",
    [(ENV_MAX_ELEMENTS, "0"), (ENV_MAX_ELEMENTS, "many"), (ENV_MAX_DIMENSION, "-1"), (ENV_LOG_LEVEL, "LOUD")],
)
def test_invalid_environment(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ConfigurationError):
        get_settings()


def test_generator_dimension_cap(monkeypatch):
    from total_cofibre.errors import UnsupportedGeneratorError
    from total_cofibre.posets import cube, simplex

    monkeypatch.setenv(ENV_MAX_DIMENSION, "1")
    assert len(simplex(1).ambient) == 3
    with pytest.raises(UnsupportedGeneratorError):
        cube(2)
