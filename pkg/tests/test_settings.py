from pathlib import Path

import pytest

from plucker_lab.errors import ConfigError
from plucker_lab.services.settings import (
    LOG_LEVEL_VAR,
    OUTPUT_DIR_VAR,
    THREADS_VAR,
    get_settings,
    load_settings,
    resolve_threads,
)


def test_defaults():
    settings = load_settings({})
    assert settings.threads == 0
    assert settings.log_level == "WARNING"
    assert settings.output_dir == Path("plucker_runs")
    assert 1 <= settings.max_workers <= 8


def test_values_from_environment():
    settings = load_settings({THREADS_VAR: "3", LOG_LEVEL_VAR: "debug", OUTPUT_DIR_VAR: "/tmp/runs"})
    assert settings.max_workers == 3
    assert settings.log_level == "DEBUG"
    assert settings.output_dir == Path("/tmp/runs")


@pytest.mark.parametrize("env", [{THREADS_VAR: "-1"}, {THREADS_VAR: "many"}, {LOG_LEVEL_VAR: "LOUD"}])
def test_bad_values_raise(env):
    with pytest.raises(ConfigError):
        load_settings(env)


def test_resolve_threads():
    assert resolve_threads(5) == 5
    assert 1 <= resolve_threads(0) <= 8


def test_get_settings_is_cached(monkeypatch):
    get_settings.cache_clear()
    monkeypatch.setenv(THREADS_VAR, "2")
    first = get_settings()
    monkeypatch.setenv(THREADS_VAR, "6")
    assert get_settings() is first
    assert first.threads == 2
    get_settings.cache_clear()
