"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class PluckerLabError(Exception):
    """Base class for every error raised on purpose by plucker_lab."""


class ShapeError(PluckerLabError):
    """Invalid shape, tuple, or matrix dimensions."""


class LayoutError(PluckerLabError):
    """The symmetric-difference layout or an exchange index is undefined."""


class PrematchError(PluckerLabError):
    """The pre-matching scan did not consume exactly 2s vertices."""


class ConfigError(PluckerLabError):
    """Bad settings, generator config, or kernel parameter."""


class BudgetExhausted(PluckerLabError):
    """A counterexample search ran out of attempts without a witness."""

    def __init__(self, attempts: int, message: str = "") -> None:
        self.attempts = attempts
        super().__init__(message or f"no witness found within {attempts} attempts")
