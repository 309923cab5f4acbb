"""Verification profiles trading sample counts against run time."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict


@dataclass(frozen=True)
class VerifyMode:
    description: str
    samples: int
    budget: int
    perturb_q: Fraction
    bound: Fraction
    density: Fraction


VERIFY_MODES: Dict[str, VerifyMode] = {
    "quick": VerifyMode(
        description="A handful of TNN points per inequality, short counterexample search.",
        samples=5,
        budget=20,
        perturb_q=Fraction(1, 2),
        bound=Fraction(3),
        density=Fraction(1, 2),
    ),
    "standard": VerifyMode(
        description="Default sweep for interactive checks.",
        samples=20,
        budget=200,
        perturb_q=Fraction(1, 2),
        bound=Fraction(3),
        density=Fraction(1, 2),
    ),
    "thorough": VerifyMode(
        description="Dense sampling and a long search ladder (slow at m+n >= 10).",
        samples=50,
        budget=1000,
        perturb_q=Fraction(1, 3),
        bound=Fraction(4),
        density=Fraction(3, 4),
    ),
}


DEFAULT_MODE_KEY = "standard"
