"""Slow reference implementations used only to cross-check the library."""

from fractions import Fraction
from typing import Sequence


def cofactor_det(rows: Sequence[Sequence]) -> Fraction:
    """Determinant by first-row cofactor expansion."""
    size = len(rows)
    if size == 0:
        return Fraction(1)
    if size == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j in range(size):
        if rows[0][j] == 0:
            continue
        rest = [row[:j] + row[j + 1:] for row in rows[1:]]
        total += (-1) ** j * Fraction(rows[0][j]) * cofactor_det(rest)
    return total


def inversion_sign(entries: Sequence[int]) -> int:
    inversions = sum(
        1
        for a in range(len(entries))
        for b in range(a + 1, len(entries))
        if entries[a] > entries[b]
    )
    return -1 if inversions % 2 else 1
