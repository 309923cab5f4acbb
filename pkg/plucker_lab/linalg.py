"""Exact rational matrices, Bareiss determinants, minors and Plücker coordinates.

Row and column indices in the public API are 1-based, like the index tuples.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Sequence, Tuple

from plucker_lab.combinatorics import GrassmannShape, IndexTuple, tuple_sign
from plucker_lab.errors import ShapeError

logger = logging.getLogger(__name__)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text) -> Fraction:
    if isinstance(text, (list, tuple)):
        return Fraction(int(text[0]), int(text[1]))
    return Fraction(str(text))


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ShapeError("negative dimensions")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ShapeError(f"entries do not form a {self.rows}x{self.cols} array")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def identity(cls, size: int) -> "RationalMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(size)] for i in range(size)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls.from_rows([[0] * cols for _ in range(rows)])

    def __getitem__(self, pos: Tuple[int, int]) -> Fraction:
        i, j = pos
        return self.entries[i - 1][j - 1]

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self.entries[i - 1]

    def as_lists(self) -> List[List[Fraction]]:
        return [list(r) for r in self.entries]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "RationalMatrix":
        """Rows and columns in the given order; repeats allowed."""
        for i in row_idx:
            if not 1 <= i <= self.rows:
                raise ShapeError(f"row {i} outside [1, {self.rows}]")
        for j in col_idx:
            if not 1 <= j <= self.cols:
                raise ShapeError(f"column {j} outside [1, {self.cols}]")
        data = tuple(tuple(self.entries[i - 1][j - 1] for j in col_idx) for i in row_idx)
        return RationalMatrix(len(row_idx), len(col_idx), data)

    def with_row(self, i: int, values: Sequence) -> "RationalMatrix":
        data = list(self.entries)
        data[i - 1] = tuple(Fraction(v) for v in values)
        return RationalMatrix(self.rows, self.cols, tuple(data))

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ())

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        other_cols = list(zip(*other.entries))
        data = tuple(
            tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in other_cols)
            for row in self.entries
        )
        return RationalMatrix(self.rows, other.cols, data)

    def stack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.cols:
            raise ShapeError("stacked matrices need equal column counts")
        return RationalMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def to_json(self) -> Dict:
        flat = [
            [str(x.numerator), str(x.denominator)] for row in self.entries for x in row
        ]
        return {"rows": self.rows, "cols": self.cols, "entries": flat}

    @classmethod
    def from_json(cls, data: Dict) -> "RationalMatrix":
        try:
            rows, cols = int(data["rows"]), int(data["cols"])
            flat = [parse_rational(x) for x in data["entries"]]
        except (KeyError, IndexError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ShapeError(f"malformed matrix JSON: {exc!r}") from exc
        if len(flat) != rows * cols:
            raise ShapeError(f"expected {rows * cols} entries, got {len(flat)}")
        return cls(rows, cols, tuple(tuple(flat[i * cols:(i + 1) * cols]) for i in range(rows)))


@dataclass(frozen=True)
class MinorSpec:
    rows: Tuple[int, ...]
    cols: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(sorted(self.rows)))
        object.__setattr__(self, "cols", tuple(sorted(self.cols)))
        if len(self.rows) != len(self.cols):
            raise ShapeError(f"|P| = {len(self.rows)} differs from |Q| = {len(self.cols)}")
        if len(set(self.rows)) != len(self.rows) or len(set(self.cols)) != len(self.cols):
            raise ShapeError("minor indices must be distinct")


def _bareiss(a: List[List[int]]) -> int:
    size = len(a)
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, size) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, size):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, size):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[size - 1][size - 1]


def det(matrix: RationalMatrix) -> Fraction:
    """Exact determinant by fraction-free elimination; the 0x0 determinant is 1."""
    if not matrix.is_square:
        raise ShapeError(f"determinant of a non-square {matrix.rows}x{matrix.cols} matrix")
    if matrix.rows == 0:
        return Fraction(1)
    scale = 1
    rows: List[List[int]] = []
    for row in matrix.entries:
        lcm = math.lcm(*(x.denominator for x in row))
        scale *= lcm
        rows.append([x.numerator * (lcm // x.denominator) for x in row])
    return Fraction(_bareiss(rows), scale)


def minor(matrix: RationalMatrix, spec: MinorSpec) -> Fraction:
    if not spec.rows:
        return Fraction(1)
    return det(matrix.submatrix(spec.rows, spec.cols))


def plucker(point: RationalMatrix, index: IndexTuple) -> Fraction:
    """Maximal minor on the rows of `index`, taken in the tuple's order."""
    shape = index.shape
    if point.rows != shape.size or point.cols != shape.m:
        raise ShapeError(
            f"point is {point.rows}x{point.cols}, expected {shape.size}x{shape.m}"
        )
    return det(point.submatrix(index.entries, range(1, shape.m + 1)))


def sorted_plucker(point: RationalMatrix, index: IndexTuple) -> Fraction:
    """Sorted-convention value Δ_{I^↑}; equals tuple_sign(I) * plucker(point, I)."""
    return tuple_sign(index) * plucker(point, index)


def anti_diagonal_block(m: int) -> RationalMatrix:
    """W_0 with w_ij = (-1)^(i+1) when j = m-i+1; det W_0 = 1."""
    return RationalMatrix.from_rows(
        [[(-1) ** (i + 1) if j == m - i + 1 else 0 for j in range(1, m + 1)] for i in range(1, m + 1)]
    )


def embed(matrix: RationalMatrix) -> RationalMatrix:
    """Stack an n x m matrix on top of W_0, giving a (m+n) x m point."""
    n, m = matrix.rows, matrix.cols
    if m > n:
        raise ShapeError(f"embedding needs m <= n, got an {n}x{m} matrix")
    return matrix.stack(anti_diagonal_block(m))


def minor_to_plucker(rows: Iterable[int], cols: Iterable[int], shape: GrassmannShape) -> IndexTuple:
    """The sorted I with det A_{P,Q} = Δ_I(embed(A))."""
    spec = MinorSpec(tuple(rows), tuple(cols))
    m, n = shape.m, shape.n
    if any(not 1 <= p <= n for p in spec.rows) or any(not 1 <= q <= m for q in spec.cols):
        raise ShapeError(f"minor indices {spec} outside [1,{n}] x [1,{m}]")
    missing = [m + n + 1 - j for j in range(1, m + 1) if j not in spec.cols]
    return IndexTuple(shape, tuple(sorted(spec.rows + tuple(missing))))


def plucker_to_minor(index: IndexTuple) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Inverse of minor_to_plucker: (P, Q) with Δ_{I^↑}(embed(A)) = det A_{P,Q}."""
    m, n = index.shape.m, index.shape.n
    rows = tuple(sorted(i for i in index.entries if i <= n))
    dropped = {m + n + 1 - i for i in index.entries if i > n}
    cols = tuple(j for j in range(1, m + 1) if j not in dropped)
    return rows, cols


def all_index_tuples(shape: GrassmannShape) -> List[IndexTuple]:
    return [IndexTuple(shape, c) for c in combinations(range(1, shape.size + 1), shape.m)]


def inverse(matrix: RationalMatrix) -> RationalMatrix:
    """Gauss-Jordan inverse over the rationals."""
    if not matrix.is_square:
        raise ShapeError("only square matrices have inverses")
    size = matrix.rows
    aug = [list(row) + [Fraction(int(i == j)) for j in range(size)] for i, row in enumerate(matrix.entries)]
    for col in range(size):
        pivot = next((i for i in range(col, size) if aug[i][col] != 0), None)
        if pivot is None:
            raise ShapeError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        lead = aug[col][col]
        aug[col] = [x / lead for x in aug[col]]
        for i in range(size):
            if i != col and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[col])]
    return RationalMatrix.from_rows([row[size:] for row in aug])


def grassmann_to_matrix(point: RationalMatrix, shape: GrassmannShape) -> Tuple[RationalMatrix, Fraction]:
    """Write point = embed(A) · B and return (A, det B).

    Needs the bottom m x m block to be invertible. Every quadratic form in
    Plücker coordinates of `point` equals (det B)^2 times the same form on embed(A).
    """
    m, n = shape.m, shape.n
    if point.rows != shape.size or point.cols != m:
        raise ShapeError(f"point is {point.rows}x{point.cols}, expected {shape.size}x{m}")
    top = point.submatrix(range(1, n + 1), range(1, m + 1))
    bottom = point.submatrix(range(n + 1, m + n + 1), range(1, m + 1))
    basis = inverse(anti_diagonal_block(m)) @ bottom
    reduced = top @ inverse(basis)
    scale = det(basis)
    logger.debug("factored point with det B = %s", format_rational(scale))
    return reduced, scale
