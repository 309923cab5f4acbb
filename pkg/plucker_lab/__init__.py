"""Oscillating Plücker inequalities on the totally nonnegative Grassmannian."""

from plucker_lab.combinatorics import GrassmannShape, IndexTuple, is_weakly_separated, layout
from plucker_lab.errors import PluckerLabError
from plucker_lab.linalg import RationalMatrix

__all__ = [
    "GrassmannShape",
    "IndexTuple",
    "PluckerLabError",
    "RationalMatrix",
    "is_weakly_separated",
    "layout",
]
