"""Index tuples on the circle [1, m+n], weak separation, layouts and exchanges.

Tuples are ordered throughout; sorting is always an explicit call. The
sign bookkeeping of the oscillating system lives in that ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from plucker_lab.errors import LayoutError, ShapeError


@dataclass(frozen=True)
class GrassmannShape:
    m: int
    n: int

    def __post_init__(self) -> None:
        if not (1 <= self.m <= self.n):
            raise ShapeError(f"need 1 <= m <= n, got m={self.m}, n={self.n}")

    @property
    def size(self) -> int:
        return self.m + self.n


@dataclass(frozen=True)
class IndexTuple:
    shape: GrassmannShape
    entries: Tuple[int, ...]

    def __post_init__(self) -> None:
        entries = tuple(int(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != self.shape.m:
            raise ShapeError(f"tuple {entries} must have {self.shape.m} entries")
        if len(set(entries)) != len(entries):
            raise ShapeError(f"tuple {entries} has repeated entries")
        bad = [e for e in entries if not 1 <= e <= self.shape.size]
        if bad:
            raise ShapeError(f"entries {bad} fall outside [1, {self.shape.size}]")

    @classmethod
    def of(cls, m: int, n: int, entries: Sequence[int]) -> "IndexTuple":
        return cls(GrassmannShape(m, n), tuple(entries))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def as_set(self) -> frozenset:
        return frozenset(self.entries)

    def sorted(self) -> "IndexTuple":
        return IndexTuple(self.shape, tuple(sorted(self.entries)))

    def replace(self, old: int, new: int) -> "IndexTuple":
        """Swap the entry `old` for `new` in place."""
        return IndexTuple(self.shape, tuple(new if e == old else e for e in self.entries))

    def complement(self) -> "IndexTuple":
        """Sorted complement in [1, m+n]; only defined when m == n."""
        if self.shape.m != self.shape.n:
            raise ShapeError("complement is an index tuple only when m == n")
        rest = [i for i in range(1, self.shape.size + 1) if i not in self.as_set()]
        return IndexTuple(self.shape, tuple(rest))

    def to_json(self) -> Dict:
        return {"m": self.shape.m, "n": self.shape.n, "entries": list(self.entries)}

    @classmethod
    def from_json(cls, data: Dict) -> "IndexTuple":
        return cls.of(int(data["m"]), int(data["n"]), data["entries"])

    def __str__(self) -> str:
        return "(" + ",".join(str(e) for e in self.entries) + ")"


@dataclass(frozen=True)
class SymDiffLayout:
    eta: int
    i_seq: Tuple[int, ...]
    j_seq: Tuple[int, ...]
    start: int

    def to_json(self) -> Dict:
        return {"eta": self.eta, "i_seq": list(self.i_seq), "j_seq": list(self.j_seq)}


def tuple_sign(index: IndexTuple) -> int:
    """Parity sign of the permutation that sorts the entries."""
    order = sorted(range(len(index.entries)), key=lambda p: index.entries[p])
    seen = [False] * len(order)
    sign = 1
    for p in range(len(order)):
        if seen[p]:
            continue
        length = 0
        q = p
        while not seen[q]:
            seen[q] = True
            q = order[q]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _check_same_shape(a: IndexTuple, b: IndexTuple) -> None:
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")


def symdiff_word(a: IndexTuple, b: IndexTuple) -> List[Tuple[int, str]]:
    """Points of the symmetric difference in clockwise order from 1, tagged 'i' or 'j'."""
    _check_same_shape(a, b)
    sa, sb = a.as_set(), b.as_set()
    word = [(x, "i") for x in sa - sb] + [(x, "j") for x in sb - sa]
    return sorted(word)


def _color_changes(word: Sequence[Tuple[int, str]]) -> int:
    if not word:
        return 0
    return sum(1 for t in range(len(word)) if word[t][1] != word[t - 1][1])


def is_weakly_separated(a: IndexTuple, b: IndexTuple) -> bool:
    """True iff a chord of the circle separates a\\b from b\\a."""
    return _color_changes(symdiff_word(a, b)) <= 2


def _run_length(word: Sequence[Tuple[int, str]], tag: str, from_end: bool) -> int:
    seq = reversed(word) if from_end else iter(word)
    run = 0
    for _, t in seq:
        if t != tag:
            break
        run += 1
    return run


def layout(a: IndexTuple, b: IndexTuple) -> SymDiffLayout:
    """Clockwise layout i_1..i_eta, j_1..j_eta with i_1 first and j_eta last.

    Valid starts are the i-points whose clockwise predecessor in the
    symmetric difference is a j-point. Among them the start with the longest
    trailing j-run wins, then the longest leading i-run, then the smallest i_1.
    A weakly separated pair has exactly one valid start.
    """
    word = symdiff_word(a, b)
    if not word:
        raise LayoutError("layout needs a nonempty symmetric difference")
    size = len(word)
    best = None
    for t in range(size):
        if word[t][1] != "i" or word[t - 1][1] != "j":
            continue
        rotated = word[t:] + word[:t]
        key = (
            -_run_length(rotated, "j", from_end=True),
            -_run_length(rotated, "i", from_end=False),
            rotated[0][0],
        )
        if best is None or key < best[0]:
            best = (key, rotated)
    rotated = best[1]
    i_seq = tuple(x for x, t in rotated if t == "i")
    j_seq = tuple(x for x, t in rotated if t == "j")
    return SymDiffLayout(eta=len(i_seq), i_seq=i_seq, j_seq=j_seq, start=i_seq[0])


def exchange_pair(
    a: IndexTuple,
    b: IndexTuple,
    k: int,
    r: int,
    lay: SymDiffLayout | None = None,
) -> Tuple[IndexTuple, IndexTuple]:
    """(I_{k,r}, J_{k,r}): j_k and i_r trade places in I and J."""
    lay = lay or layout(a, b)
    if not (1 <= k <= lay.eta and 1 <= r <= lay.eta):
        raise LayoutError(f"k={k}, r={r} outside [1, {lay.eta}]")
    i_r, j_k = lay.i_seq[r - 1], lay.j_seq[k - 1]
    return a.replace(i_r, j_k), b.replace(j_k, i_r)


def shift_point(x: int, t: int, size: int) -> int:
    return (x - 1 + t) % size + 1


def reflect_point(x: int, size: int) -> int:
    return size + 1 - x


def cyclic_shift_tuple(index: IndexTuple, t: int = 1) -> IndexTuple:
    size = index.shape.size
    return IndexTuple(index.shape, tuple(shift_point(e, t, size) for e in index.entries))


def reflect_tuple(index: IndexTuple) -> IndexTuple:
    size = index.shape.size
    return IndexTuple(index.shape, tuple(reflect_point(e, size) for e in index.entries))


def parse_tuple(text: str, m: int, n: int) -> IndexTuple:
    """Parse '1,3,5' (brackets and spaces tolerated) into an IndexTuple."""
    cleaned = text.strip().strip("[]()")
    try:
        entries = [int(tok) for tok in cleaned.replace(" ", ",").split(",") if tok]
    except ValueError as exc:
        raise ShapeError(f"cannot parse index tuple {text!r}") from exc
    return IndexTuple.of(m, n, entries)
