"""Kauffman diagrams, TL_s(2), TL immanants, pre-matchings and compatible sets.

Diagrams are stored circularly: vertices v_1..v_2s, v_1 bottom-left, numbered
clockwise. In the two-column picture the left column is L_h = v_h (bottom-up)
and the right column is R_h = v_{2s+1-h}; L_h stands for row h of an s x s
matrix and R_h for column h. The identity diagram joins L_h to R_h.

The product d1 · d2 draws d2 on the left and d1 on the right and glues the
right column of d2 to the left column of d1. Closed loops contribute a factor
xi = 2.
"""

from __future__ import annotations

import logging
import threading
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from plucker_lab.combinatorics import IndexTuple, reflect_point, shift_point
from plucker_lab.errors import PrematchError, ShapeError
from plucker_lab.linalg import RationalMatrix, embed, plucker_to_minor, sorted_plucker

logger = logging.getLogger(__name__)

XI = 2

Edge = Tuple[int, int]


@dataclass(frozen=True)
class KauffmanDiagram:
    s: int
    partner: Tuple[int, ...]

    def __post_init__(self) -> None:
        size = 2 * self.s
        if self.s < 1 or len(self.partner) != size:
            raise ShapeError(f"a diagram on s={self.s} needs {size} partner entries")
        for v in range(1, size + 1):
            p = self.partner[v - 1]
            if not 1 <= p <= size or p == v or self.partner[p - 1] != v:
                raise ShapeError(f"partner array is not a fixed-point-free involution at v_{v}")
        for a, b in self.edges:
            for c in range(a + 1, b):
                if not a < self.partner[c - 1] < b:
                    raise ShapeError(f"edges ({a},{b}) and ({c},{self.partner[c - 1]}) cross")

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return tuple((v, p) for v, p in enumerate(self.partner, start=1) if v < p)

    def mate(self, v: int) -> int:
        return self.partner[v - 1]

    @classmethod
    def from_edges(cls, s: int, edges: Sequence[Sequence[int]]) -> "KauffmanDiagram":
        partner = [0] * (2 * s)
        for a, b in edges:
            if not (1 <= a <= 2 * s and 1 <= b <= 2 * s):
                raise ShapeError(f"edge ({a},{b}) outside [1, {2 * s}]")
            if partner[a - 1] or partner[b - 1]:
                raise ShapeError(f"vertex reused by edge ({a},{b})")
            partner[a - 1], partner[b - 1] = b, a
        if 0 in partner:
            raise ShapeError("edges do not cover every vertex")
        return cls(s, tuple(partner))

    @classmethod
    def identity(cls, s: int) -> "KauffmanDiagram":
        return cls.from_edges(s, [(h, 2 * s + 1 - h) for h in range(1, s + 1)])

    @classmethod
    def generator(cls, s: int, i: int) -> "KauffmanDiagram":
        """t_i: L_i-L_{i+1} and R_i-R_{i+1}, every other row straight across."""
        if not 1 <= i < s:
            raise ShapeError(f"generator t_{i} needs 1 <= i < s={s}")
        edges = [(i, i + 1), (2 * s - i, 2 * s + 1 - i)]
        edges += [(h, 2 * s + 1 - h) for h in range(1, s + 1) if h not in (i, i + 1)]
        return cls.from_edges(s, edges)

    def to_json(self) -> Dict:
        return {"s": self.s, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: Dict) -> "KauffmanDiagram":
        return cls.from_edges(int(data["s"]), [tuple(e) for e in data["edges"]])

    def __str__(self) -> str:
        return " ".join(f"({a},{b})" for a, b in self.edges)


def _sort_key(diagram: KauffmanDiagram) -> Tuple[Edge, ...]:
    return diagram.edges


def _noncrossing(points: Tuple[int, ...]) -> Iterator[List[Edge]]:
    if not points:
        yield []
        return
    first = points[0]
    for k in range(1, len(points), 2):
        inside, outside = points[1:k], points[k + 1:]
        for left in _noncrossing(inside):
            for right in _noncrossing(outside):
                yield [(first, points[k])] + left + right


@lru_cache(maxsize=None)
def enumerate_diagrams(s: int) -> Tuple[KauffmanDiagram, ...]:
    """All Catalan(s) noncrossing perfect matchings, ordered by edge listing."""
    if s < 1:
        raise ShapeError(f"s must be positive, got {s}")
    diagrams = [
        KauffmanDiagram.from_edges(s, edges)
        for edges in _noncrossing(tuple(range(1, 2 * s + 1)))
    ]
    return tuple(sorted(diagrams, key=_sort_key))


@lru_cache(maxsize=65536)
def tl_multiply(d1: KauffmanDiagram, d2: KauffmanDiagram) -> Tuple[KauffmanDiagram, int]:
    """Diagram part and closed-loop count of the algebra product d1 · d2."""
    if d1.s != d2.s:
        raise ShapeError(f"cannot multiply diagrams on s={d1.s} and s={d2.s}")
    s = d1.s
    size = 2 * s
    partner = [0] * size
    seen_middle = [False] * (s + 1)

    def trace(v: int) -> int:
        # on_left: standing in d2, otherwise in d1
        on_left = v <= s
        while True:
            if on_left:
                p = d2.mate(v)
                if p <= s:
                    return p
                h = size + 1 - p
                seen_middle[h] = True
                v, on_left = h, False
            else:
                q = d1.mate(v)
                if q > s:
                    return q
                seen_middle[q] = True
                v, on_left = size + 1 - q, True

    for v in range(1, size + 1):
        if not partner[v - 1]:
            w = trace(v)
            partner[v - 1], partner[w - 1] = w, v

    loops = 0
    for h in range(1, s + 1):
        if seen_middle[h]:
            continue
        loops += 1
        start = h
        while True:
            seen_middle[h] = True
            q = d1.mate(h)
            seen_middle[q] = True
            p = d2.mate(size + 1 - q)
            h = size + 1 - p
            if h == start:
                break
    return KauffmanDiagram(s, tuple(partner)), loops


@dataclass(frozen=True)
class TLElement:
    s: int
    terms: Dict[KauffmanDiagram, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", {k: c for k, c in self.terms.items() if c})

    @classmethod
    def basis(cls, diagram: KauffmanDiagram, coeff: int = 1) -> "TLElement":
        return cls(diagram.s, {diagram: coeff})

    @classmethod
    def one(cls, s: int) -> "TLElement":
        return cls.basis(KauffmanDiagram.identity(s))

    def coefficient(self, diagram: KauffmanDiagram) -> int:
        return self.terms.get(diagram, 0)

    def __add__(self, other: "TLElement") -> "TLElement":
        merged = dict(self.terms)
        for k, c in other.terms.items():
            merged[k] = merged.get(k, 0) + c
        return TLElement(self.s, merged)

    def __neg__(self) -> "TLElement":
        return TLElement(self.s, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "TLElement") -> "TLElement":
        return self + (-other)

    def __mul__(self, other: "TLElement") -> "TLElement":
        if self.s != other.s:
            raise ShapeError("TL elements live in different algebras")
        out: Dict[KauffmanDiagram, int] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                prod, loops = tl_multiply(k1, k2)
                out[prod] = out.get(prod, 0) + c1 * c2 * XI ** loops
        return TLElement(self.s, out)

    def is_zero(self) -> bool:
        return not self.terms


class VertexColor(Enum):
    WHITE = "white"
    BLACK = "black"
    EDGE = "edge"


@dataclass(frozen=True)
class Permutation:
    s: int
    images: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", tuple(int(x) for x in self.images))
        if sorted(self.images) != list(range(1, self.s + 1)):
            raise ShapeError(f"{self.images} is not a permutation of [1, {self.s}]")

    @classmethod
    def identity(cls, s: int) -> "Permutation":
        return cls(s, tuple(range(1, s + 1)))

    @classmethod
    def from_word(cls, s: int, word: Sequence[int]) -> "Permutation":
        """s_{a1} ∘ ... ∘ s_{ak}."""
        w = cls.identity(s)
        for a in word:
            w = w.times_simple(a)
        return w

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def times_simple(self, i: int) -> "Permutation":
        """w ∘ s_i: swaps positions i and i+1 in one-line notation."""
        if not 1 <= i < self.s:
            raise ShapeError(f"s_{i} is not a generator of S_{self.s}")
        img = list(self.images)
        img[i - 1], img[i] = img[i], img[i - 1]
        return Permutation(self.s, tuple(img))

    def length(self) -> int:
        return sum(
            1
            for a in range(self.s)
            for b in range(a + 1, self.s)
            if self.images[a] > self.images[b]
        )

    def reduced_word(self, strategy: str = "right") -> Tuple[int, ...]:
        """A reduced word; 'right' peels descents w ∘ s_i, 'left' peels s_i ∘ w."""
        img = list(self.images)
        record: List[int] = []
        if strategy == "right":
            while True:
                i = next((p for p in range(1, self.s) if img[p - 1] > img[p]), None)
                if i is None:
                    break
                img[i - 1], img[i] = img[i], img[i - 1]
                record.append(i)
            return tuple(reversed(record))
        if strategy == "left":
            while True:
                where = {v: p for p, v in enumerate(img)}
                i = next((v for v in range(self.s - 1, 0, -1) if where[v + 1] < where[v]), None)
                if i is None:
                    break
                img[where[i]], img[where[i + 1]] = i + 1, i
                record.append(i)
            return tuple(record)
        raise ValueError(f"unknown reduced-word strategy {strategy!r}")


def _generator_minus_one(s: int, i: int) -> TLElement:
    return TLElement(s, {KauffmanDiagram.generator(s, i): 1, KauffmanDiagram.identity(s): -1})


def permutation_image(w: Permutation, strategy: str = "right") -> TLElement:
    """Image of w under s_i -> t_i - 1, expanded along a reduced word."""
    result = TLElement.one(w.s)
    for a in w.reduced_word(strategy):
        result = result * _generator_minus_one(w.s, a)
    return result


_IMAGE_TABLES: Dict[int, Dict[Tuple[int, ...], TLElement]] = {}
_TABLE_LOCK = threading.Lock()


def _image_table(s: int) -> Dict[Tuple[int, ...], TLElement]:
    table = _IMAGE_TABLES.get(s)
    if table is not None:
        return table
    with _TABLE_LOCK:
        table = _IMAGE_TABLES.get(s)
        if table is not None:
            return table
        logger.debug("building permutation image table for s=%d", s)
        start = Permutation.identity(s)
        table = {start.images: TLElement.one(s)}
        queue = deque([start])
        while queue:
            w = queue.popleft()
            for i in range(1, s):
                if w(i) < w(i + 1):
                    nxt = w.times_simple(i)
                    if nxt.images not in table:
                        table[nxt.images] = table[w.images] * _generator_minus_one(s, i)
                        queue.append(nxt)
        _IMAGE_TABLES[s] = table
        return table


def f_coeff(w: Permutation, diagram: KauffmanDiagram) -> int:
    if w.s != diagram.s:
        raise ShapeError(f"permutation on {w.s} letters, diagram on s={diagram.s}")
    return _image_table(w.s)[w.images].coefficient(diagram)


def _monomial(matrix: RationalMatrix, images: Tuple[int, ...]) -> Fraction:
    value = Fraction(1)
    for i, wi in enumerate(images, start=1):
        value *= matrix[i, wi]
        if not value:
            break
    return value


def _check_square(diagram_s: int, matrix: RationalMatrix) -> None:
    if matrix.rows != diagram_s or matrix.cols != diagram_s:
        raise ShapeError(f"immanant on s={diagram_s} needs an {diagram_s}x{diagram_s} matrix")


def immanant(diagram: KauffmanDiagram, matrix: RationalMatrix) -> Fraction:
    """Imm_K(M) = sum over w of f_K(w) * M[1,w(1)] ... M[s,w(s)]."""
    _check_square(diagram.s, matrix)
    total = Fraction(0)
    for images, element in _image_table(diagram.s).items():
        c = element.coefficient(diagram)
        if c:
            total += c * _monomial(matrix, images)
    return total


def immanants_all(matrix: RationalMatrix) -> Dict[KauffmanDiagram, Fraction]:
    """Every TL immanant of a square matrix in one pass over S_s."""
    if not matrix.is_square or matrix.rows < 1:
        raise ShapeError("immanants need a nonempty square matrix")
    s = matrix.rows
    values = {k: Fraction(0) for k in enumerate_diagrams(s)}
    for images, element in _image_table(s).items():
        mono = _monomial(matrix, images)
        if mono:
            for k, c in element.terms.items():
                values[k] += c * mono
    return values


@dataclass(frozen=True)
class ColoredPrematching:
    s: int
    colors: Tuple[VertexColor, ...]
    mandatory_edges: Tuple[Edge, ...]
    positions: Tuple[int, ...]

    @property
    def whites(self) -> Tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.colors, start=1) if c is VertexColor.WHITE)

    @property
    def blacks(self) -> Tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.colors, start=1) if c is VertexColor.BLACK)

    @property
    def balanced(self) -> bool:
        return len(self.whites) == len(self.blacks)

    def to_json(self) -> Dict:
        return {
            "s": self.s,
            "colors": [c.value for c in self.colors],
            "mandatory_edges": [list(e) for e in self.mandatory_edges],
        }


def prematch(a: IndexTuple, b: IndexTuple) -> ColoredPrematching:
    """Colour v_1..v_2s from (I, J): rows of [n] first, then [n+1, m+n]."""
    if a.shape != b.shape:
        raise PrematchError(f"shape mismatch: {a.shape} vs {b.shape}")
    m, n = a.shape.m, a.shape.n
    sa, sb = a.as_set(), b.as_set()
    s = sum(1 for x in sa if x <= n) + sum(1 for x in sb if x <= n)
    if s == 0:
        raise PrematchError("pre-matching on zero vertices")
    colors: List[Optional[VertexColor]] = []
    positions: List[int] = []
    edges: List[Edge] = []

    def color(c: VertexColor, i: int) -> None:
        colors.append(c)
        positions.append(i)

    def connect(i: int) -> None:
        j = len(colors) + 1
        edges.append((j, j + 1))
        colors.extend([VertexColor.EDGE, VertexColor.EDGE])
        positions.extend([i, i])

    for i in range(1, m + n + 1):
        in_a, in_b = i in sa, i in sb
        if in_a and not in_b:
            color(VertexColor.WHITE, i)
        elif in_b and not in_a:
            color(VertexColor.BLACK, i)
        elif (in_a and in_b) == (i <= n):
            connect(i)
        if len(colors) > 2 * s:
            raise PrematchError(f"scan ran past v_{2 * s} at i={i}")
    if len(colors) != 2 * s:
        raise PrematchError(f"scan assigned {len(colors)} of {2 * s} vertices")
    return ColoredPrematching(s, tuple(colors), tuple(edges), tuple(positions))


def _bicolored_matchings(points: Tuple[int, ...], colors: Tuple[VertexColor, ...]) -> Iterator[List[Edge]]:
    if not points:
        yield []
        return
    first = points[0]
    for k in range(1, len(points), 2):
        if colors[first - 1] is colors[points[k] - 1]:
            continue
        inside, outside = points[1:k], points[k + 1:]
        for left in _bicolored_matchings(inside, colors):
            for right in _bicolored_matchings(outside, colors):
                yield [(first, points[k])] + left + right


@lru_cache(maxsize=4096)
def _compatible(a: IndexTuple, b: IndexTuple) -> Tuple[KauffmanDiagram, ...]:
    pm = prematch(a, b)
    if not pm.balanced:
        logger.debug("pair %s/%s has unbalanced colours, empty compatible set", a, b)
        return ()
    colored = tuple(v for v, c in enumerate(pm.colors, start=1) if c is not VertexColor.EDGE)
    diagrams = [
        KauffmanDiagram.from_edges(pm.s, list(pm.mandatory_edges) + edges)
        for edges in _bicolored_matchings(colored, pm.colors)
    ]
    return tuple(sorted(diagrams, key=_sort_key))


def compatible_set(a: IndexTuple, b: IndexTuple) -> List[KauffmanDiagram]:
    """Phi(I, J): diagrams containing E(I, J) whose other edges join white to black."""
    return list(_compatible(a.sorted(), b.sorted()))


def complementary_b(index: IndexTuple, diagram: KauffmanDiagram) -> int:
    """1 iff every edge of K joins I to its complement in [2s]."""
    if index.shape.m != diagram.s or index.shape.n != diagram.s:
        raise ShapeError(f"complementary coefficient needs |I| = s = {diagram.s} inside [{2 * diagram.s}]")
    members = index.as_set()
    return int(all((a in members) != (b in members) for a, b in diagram.edges))


def generalized_submatrix(matrix: RationalMatrix, a: IndexTuple, b: IndexTuple) -> RationalMatrix:
    """X_{M,M'} with M = P1 ⊎ P2 and M' = Q1 ⊎ Q2, both sorted, repeats kept."""
    if matrix.rows != a.shape.n or matrix.cols != a.shape.m:
        raise ShapeError(f"matrix is {matrix.rows}x{matrix.cols}, expected {a.shape.n}x{a.shape.m}")
    p1, q1 = plucker_to_minor(a)
    p2, q2 = plucker_to_minor(b)
    rows, cols = sorted(p1 + p2), sorted(q1 + q2)
    if len(rows) != len(cols):
        raise ShapeError(f"row multiset has {len(rows)} entries but column multiset has {len(cols)}")
    return matrix.submatrix(rows, cols)


def decompose_product(
    a: IndexTuple, b: IndexTuple, matrix: RationalMatrix
) -> Tuple[Fraction, List[Tuple[KauffmanDiagram, Fraction]]]:
    """Δ_{I↑}Δ_{J↑} of embed(X) and its TL immanant terms over Phi(I, J).

    When I = J = [n+1, m+n] both factors are empty minors: the product is 1
    and there are no diagram terms.
    """
    point = embed(matrix)
    value = sorted_plucker(point, a) * sorted_plucker(point, b)
    if not plucker_to_minor(a)[0] and not plucker_to_minor(b)[0]:
        return value, []
    diagrams = compatible_set(a, b)
    if not diagrams:
        return value, []
    values = immanants_all(generalized_submatrix(matrix, a, b))
    return value, [(k, values[k]) for k in diagrams]


def shift_diagram(diagram: KauffmanDiagram, t: int = 1) -> KauffmanDiagram:
    size = 2 * diagram.s
    return KauffmanDiagram.from_edges(
        diagram.s, [(shift_point(a, t, size), shift_point(b, t, size)) for a, b in diagram.edges]
    )


def reflect_diagram(diagram: KauffmanDiagram) -> KauffmanDiagram:
    size = 2 * diagram.s
    return KauffmanDiagram.from_edges(
        diagram.s, [(reflect_point(a, size), reflect_point(b, size)) for a, b in diagram.edges]
    )


Chords = Tuple[Edge, ...]


def position_chords(a: IndexTuple, b: IndexTuple, diagram: KauffmanDiagram) -> Chords:
    """The non-mandatory edges of K written on the points of I△J in [1, m+n]."""
    pm = prematch(a.sorted(), b.sorted())
    if pm.s != diagram.s:
        raise ShapeError(f"diagram on s={diagram.s} does not fit a pair with s={pm.s}")
    mandatory = set(pm.mandatory_edges)
    chords = []
    for u, v in diagram.edges:
        if (u, v) in mandatory:
            continue
        x, y = pm.positions[u - 1], pm.positions[v - 1]
        chords.append((min(x, y), max(x, y)))
    return tuple(sorted(chords))


def transport_chords(chords: Chords, size: int, shift: int = 0, reflect: bool = False) -> Chords:
    """Apply rho (if asked) and then sigma^shift to chord endpoints."""
    out = []
    for x, y in chords:
        if reflect:
            x, y = reflect_point(x, size), reflect_point(y, size)
        x, y = shift_point(x, shift, size), shift_point(y, shift, size)
        out.append((min(x, y), max(x, y)))
    return tuple(sorted(out))


def all_permutations(s: int) -> Iterator[Permutation]:
    for images in permutations(range(1, s + 1)):
        yield Permutation(s, images)
