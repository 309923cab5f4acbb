"""Process-wide settings read from the environment (and `.env` via the CLI)."""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from plucker_lab.errors import ConfigError

THREADS_VAR = "PLUCKER_LAB_THREADS"
LOG_LEVEL_VAR = "PLUCKER_LAB_LOG_LEVEL"
OUTPUT_DIR_VAR = "PLUCKER_LAB_OUTPUT_DIR"

DEFAULT_OUTPUT_DIR = "plucker_runs"


@dataclass(frozen=True)
class Settings:
    threads: int
    log_level: str
    output_dir: Path

    @property
    def max_workers(self) -> int:
        return resolve_threads(self.threads)


def resolve_threads(requested: int) -> int:
    """0 means auto: min(8, cpu count)."""
    if requested > 0:
        return requested
    return min(8, os.cpu_count() or 1)


def _read_threads(raw: str | None) -> int:
    if raw is None or not raw.strip():
        return 0
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{THREADS_VAR} must be an integer, got {raw!r}") from exc
    if value < 0:
        raise ConfigError(f"{THREADS_VAR} must be >= 0, got {value}")
    return value


def _read_log_level(raw: str | None) -> str:
    level = (raw or "WARNING").strip().upper()
    if not isinstance(logging.getLevelName(level), int):
        raise ConfigError(f"{LOG_LEVEL_VAR} names no logging level: {raw!r}")
    return level


def load_settings(environ=None) -> Settings:
    env = os.environ if environ is None else environ
    return Settings(
        threads=_read_threads(env.get(THREADS_VAR)),
        log_level=_read_log_level(env.get(LOG_LEVEL_VAR)),
        output_dir=Path(env.get(OUTPUT_DIR_VAR) or DEFAULT_OUTPUT_DIR),
    )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Return the cached settings.

    The environment is read on first use, so `.env` must be loaded before
    anything calls into this helper.
    """

    return load_settings()
