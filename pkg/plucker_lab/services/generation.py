"""Seeded exact-rational TNN matrices, TP kernels and Grassmannian points.

Seed schedule (stable across releases): one `numpy.random.default_rng(seed)`
(PCG64) stream per call. Every Whitney factor makes one density draw
`u = integers(0, 2**32)` and is active iff `u < density * 2**32`; an active
factor then draws `c = bound * integers(1, 17) / 16`. The diagonal draws
`d = bound * integers(1, 17) / 16` unconditionally.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional

import numpy as np

from plucker_lab.combinatorics import GrassmannShape
from plucker_lab.errors import ConfigError, ShapeError
from plucker_lab.linalg import RationalMatrix, all_index_tuples, det, embed, parse_rational, plucker

logger = logging.getLogger(__name__)

_DRAW_SCALE = 2 ** 32
_STEPS = 16


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int
    n: int
    m: int
    bound: Fraction = Fraction(3)
    density: Fraction = Fraction(1, 2)

    def __post_init__(self) -> None:
        object.__setattr__(self, "bound", Fraction(self.bound))
        object.__setattr__(self, "density", Fraction(self.density))
        if self.seed < 0 or self.seed >= 2 ** 64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.n < 1 or self.m < 1:
            raise ConfigError(f"sizes must be positive, got n={self.n}, m={self.m}")
        if self.bound <= 0:
            raise ConfigError(f"bound must be positive, got {self.bound}")
        if not 0 <= self.density <= 1:
            raise ConfigError(f"density must lie in [0, 1], got {self.density}")

    def with_seed(self, seed: int) -> "GeneratorConfig":
        return GeneratorConfig(seed, self.n, self.m, self.bound, self.density)

    @classmethod
    def from_json(cls, data: Dict) -> "GeneratorConfig":
        try:
            return cls(
                seed=int(data["seed"]),
                n=int(data["n"]),
                m=int(data["m"]),
                bound=parse_rational(data.get("bound", "3")),
                density=parse_rational(data.get("density", "1/2")),
            )
        except (KeyError, ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad generator config: {exc}") from exc

    def to_json(self) -> Dict:
        return {
            "seed": self.seed,
            "n": self.n,
            "m": self.m,
            "bound": str(self.bound),
            "density": str(self.density),
        }


def _parameter(rng: np.random.Generator, bound: Fraction) -> Fraction:
    return bound * Fraction(int(rng.integers(1, _STEPS + 1)), _STEPS)


def _factor_parameter(rng: np.random.Generator, config: GeneratorConfig) -> Fraction:
    u = int(rng.integers(0, _DRAW_SCALE))
    if u >= config.density * _DRAW_SCALE:
        return Fraction(0)
    return _parameter(rng, config.bound)


def random_tnn(config: GeneratorConfig) -> RationalMatrix:
    """Product of elementary bidiagonal factors and a positive diagonal, cut to n x m."""
    rng = np.random.default_rng(config.seed)
    size = max(config.n, config.m)
    work: List[List[Fraction]] = [
        [Fraction(int(i == j)) for j in range(size)] for i in range(size)
    ]

    def add_column(target: int, source: int, c: Fraction) -> None:
        if c:
            for row in work:
                row[target] += c * row[source]

    for t in range(1, size):
        for i in range(size, t, -1):
            add_column(i - 2, i - 1, _factor_parameter(rng, config))
    for j in range(size):
        d = _parameter(rng, config.bound)
        for row in work:
            row[j] *= d
    for t in range(size - 1, 0, -1):
        for i in range(t + 1, size + 1):
            add_column(i - 1, i - 2, _factor_parameter(rng, config))

    return RationalMatrix.from_rows([row[: config.m] for row in work[: config.n]])


def random_rational_matrix(rows: int, cols: int, seed: int, low: int = -5, high: int = 5) -> RationalMatrix:
    """Integer entries in [low, high]; no positivity. Used for polynomial-identity checks."""
    rng = np.random.default_rng(seed)
    values = rng.integers(low, high + 1, size=(rows, cols))
    return RationalMatrix.from_rows([[int(x) for x in row] for row in values])


def gaussian_like_tp(size: int, q: Fraction = Fraction(1, 2)) -> RationalMatrix:
    """Kernel q^((j-k)^2), totally positive for 0 < q < 1."""
    q = Fraction(q)
    if not 0 < q < 1:
        raise ConfigError(f"kernel parameter q must lie in (0, 1), got {q}")
    return RationalMatrix.from_rows(
        [[q ** ((j - k) ** 2) for k in range(size)] for j in range(size)]
    )


def tp_perturb(
    point: RationalMatrix,
    q: Fraction = Fraction(1, 2),
    shape: Optional[GrassmannShape] = None,
) -> RationalMatrix:
    if shape is not None and (point.rows != shape.size or point.cols != shape.m):
        raise ShapeError(f"point is {point.rows}x{point.cols}, expected {shape.size}x{shape.m}")
    return gaussian_like_tp(point.rows, q) @ point


def is_tnn(matrix: RationalMatrix) -> bool:
    """Every square minor >= 0. Exponential; meant for dimensions up to about 7."""
    for k in range(1, min(matrix.rows, matrix.cols) + 1):
        for rows in combinations(range(1, matrix.rows + 1), k):
            for cols in combinations(range(1, matrix.cols + 1), k):
                if det(matrix.submatrix(rows, cols)) < 0:
                    return False
    return True


def is_tp(matrix: RationalMatrix) -> bool:
    for k in range(1, min(matrix.rows, matrix.cols) + 1):
        for rows in combinations(range(1, matrix.rows + 1), k):
            for cols in combinations(range(1, matrix.cols + 1), k):
                if det(matrix.submatrix(rows, cols)) <= 0:
                    return False
    return True


def all_plucker_nonnegative(point: RationalMatrix, shape: GrassmannShape, strict: bool = False) -> bool:
    """Sorted maximal minors all >= 0 (> 0 when strict), with at least one nonzero."""
    seen_nonzero = False
    for index in all_index_tuples(shape):
        value = plucker(point, index)
        if value < 0 or (strict and value == 0):
            return False
        seen_nonzero = seen_nonzero or value != 0
    return seen_nonzero


def duplicated_row_point(point: RationalMatrix, a: int, b: int) -> RationalMatrix:
    """Copy of the point with row b overwritten by row a."""
    for idx in (a, b):
        if not 1 <= idx <= point.rows:
            raise ShapeError(f"row {idx} outside [1, {point.rows}]")
    if a == b:
        return point
    return point.with_row(b, point.row(a))


def collapse_arc(point: RationalMatrix, a: int, b: int) -> RationalMatrix:
    """Overwrite every row on the clockwise arc a..b with row a.

    Rows reached after wrapping past the last row get the factor (-1)^(m-1),
    so every maximal minor keeps its sign and TNN points stay TNN.
    """
    size = point.rows
    for idx in (a, b):
        if not 1 <= idx <= size:
            raise ShapeError(f"row {idx} outside [1, {size}]")
    wrap_sign = -1 if point.cols % 2 == 0 else 1
    source = point.row(a)
    result = point
    p = a
    while p != b:
        p = p % size + 1
        if p > a:
            result = duplicated_row_point(result, a, p)
        else:
            result = result.with_row(p, [wrap_sign * x for x in source])
    return result


def random_grassmann_point(config: GeneratorConfig, perturb_q: Optional[Fraction] = None) -> RationalMatrix:
    """embed(random_tnn(config)), optionally pushed into the TP part by the kernel."""
    point = embed(random_tnn(config))
    if perturb_q is not None:
        point = tp_perturb(point, perturb_q)
    logger.debug("generated point for seed %d", config.seed)
    return point
