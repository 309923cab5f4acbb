"""Oscillating exchange systems: construction, exact evaluation and certificates.

For a pair (I, J) with layout i_1..i_eta, j_1..j_eta and a fixed r, term k is
the product Δ_{I_{k,r}} Δ_{J_{k,r}} of the ordered exchange tuples. The l-th
value is

    sgn(I_{l,r}) sgn(J_{l,r}) * (sum_{k<=l} Δ_{I_{k,r}} Δ_{J_{k,r}} - [l >= eta-r+1] Δ_I Δ_J)

and the l = eta value is the long Plücker relation, hence zero.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from plucker_lab.combinatorics import (
    GrassmannShape,
    IndexTuple,
    SymDiffLayout,
    cyclic_shift_tuple,
    exchange_pair,
    layout,
    reflect_tuple,
    tuple_sign,
)
from plucker_lab.errors import LayoutError, ShapeError
from plucker_lab.linalg import (
    MinorSpec,
    RationalMatrix,
    format_rational,
    minor,
    plucker,
    plucker_to_minor,
    sorted_plucker,
)
from plucker_lab.services.generation import random_rational_matrix
from plucker_lab.services.temperley_lieb import (
    KauffmanDiagram,
    compatible_set,
    generalized_submatrix,
    immanants_all,
    position_chords,
)

logger = logging.getLogger(__name__)

PairKey = Tuple[Tuple[int, ...], Tuple[int, ...]]


def _pair_key(a: IndexTuple, b: IndexTuple) -> PairKey:
    """Sorted, order-free label of the product Δ_{a↑} Δ_{b↑}."""
    x, y = a.sorted().entries, b.sorted().entries
    return (x, y) if x <= y else (y, x)


@dataclass(frozen=True)
class TermSpec:
    k: int
    pair: Tuple[IndexTuple, IndexTuple]
    subtract_base: bool

    @property
    def sign(self) -> int:
        return tuple_sign(self.pair[0]) * tuple_sign(self.pair[1])

    def to_json(self) -> Dict:
        return {
            "k": self.k,
            "I": list(self.pair[0].entries),
            "J": list(self.pair[1].entries),
            "subtract_base": self.subtract_base,
        }


@dataclass(frozen=True)
class InequalitySystem:
    a: IndexTuple
    b: IndexTuple
    layout: SymDiffLayout
    r: int
    terms: Tuple[TermSpec, ...]
    signs: Tuple[int, ...]

    @property
    def eta(self) -> int:
        return self.layout.eta

    @property
    def shape(self) -> GrassmannShape:
        return self.a.shape

    @property
    def base_index(self) -> int:
        """The k (and first l) at which Δ_I Δ_J is subtracted."""
        return self.eta - self.r + 1

    @property
    def base_sign(self) -> int:
        return tuple_sign(self.a) * tuple_sign(self.b)

    def to_json(self) -> Dict:
        return {
            "I": list(self.a.entries),
            "J": list(self.b.entries),
            "layout": self.layout.to_json(),
            "r": self.r,
            "terms": [t.to_json() for t in self.terms],
            "signs": list(self.signs),
        }


def build_system(a: IndexTuple, b: IndexTuple, r: int) -> InequalitySystem:
    lay = layout(a, b)
    if not 1 <= r <= lay.eta:
        raise LayoutError(f"r={r} outside [1, {lay.eta}]")
    base = lay.eta - r + 1
    terms = []
    for k in range(1, lay.eta + 1):
        terms.append(TermSpec(k, exchange_pair(a, b, k, r, lay), subtract_base=(k == base)))
    signs = tuple(t.sign for t in terms)
    return InequalitySystem(a, b, lay, r, tuple(terms), signs)


def _check_point(system: InequalitySystem, point: RationalMatrix) -> None:
    shape = system.shape
    if point.rows != shape.size or point.cols != shape.m:
        raise ShapeError(f"point is {point.rows}x{point.cols}, expected {shape.size}x{shape.m}")


def _partial_sums(system: InequalitySystem, products: Sequence[Fraction], base: Fraction) -> List[Fraction]:
    values = []
    running = Fraction(0)
    for l in range(1, system.eta + 1):
        running += products[l - 1]
        value = running - base if l >= system.base_index else running
        values.append(system.signs[l - 1] * value)
    return values


def evaluate_system(system: InequalitySystem, point: RationalMatrix) -> List[Fraction]:
    """Signed partial sums for l = 1..eta on a Grassmannian point."""
    _check_point(system, point)
    products = [plucker(point, t.pair[0]) * plucker(point, t.pair[1]) for t in system.terms]
    base = plucker(point, system.a) * plucker(point, system.b)
    values = _partial_sums(system, products, base)
    logger.debug("r=%d values %s", system.r, [format_rational(v) for v in values])
    return values


def _ordered_minor(matrix: RationalMatrix, index: IndexTuple) -> Fraction:
    rows, cols = plucker_to_minor(index)
    return tuple_sign(index) * minor(matrix, MinorSpec(rows, cols))


def evaluate_minor_form(system: InequalitySystem, matrix: RationalMatrix) -> List[Fraction]:
    """The same partial sums written as products of minors of an n x m matrix."""
    shape = system.shape
    if matrix.rows != shape.n or matrix.cols != shape.m:
        raise ShapeError(f"matrix is {matrix.rows}x{matrix.cols}, expected {shape.n}x{shape.m}")
    products = [_ordered_minor(matrix, t.pair[0]) * _ordered_minor(matrix, t.pair[1]) for t in system.terms]
    base = _ordered_minor(matrix, system.a) * _ordered_minor(matrix, system.b)
    return _partial_sums(system, products, base)


def long_plucker_check(a: IndexTuple, b: IndexTuple, r: int, trials: int = 3, seed: int = 0) -> bool:
    """The full signed sum vanishes on random points and as a diagram vector."""
    system = build_system(a, b, r)
    shape = system.shape
    for t in range(trials):
        point = random_rational_matrix(shape.size, shape.m, seed + t)
        if evaluate_system(system, point)[-1] != 0:
            logger.warning("long Plücker relation failed for %s/%s r=%d at seed %d", a, b, r, seed + t)
            return False
    return not certify(system, system.eta).coefficients


@dataclass(frozen=True)
class Certificate:
    system: InequalitySystem
    l: int
    coefficients: Dict[KauffmanDiagram, int] = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return all(c >= 0 for c in self.coefficients.values())

    @property
    def negative(self) -> bool:
        return any(c < 0 for c in self.coefficients.values())

    def sorted_items(self) -> List[Tuple[KauffmanDiagram, int]]:
        return sorted(self.coefficients.items(), key=lambda kv: kv[0].edges)

    def to_json(self) -> Dict:
        return {
            "l": self.l,
            "r": self.system.r,
            "valid": self.valid,
            "coefficients": {str(k): c for k, c in self.sorted_items()},
        }


def _add_indicator(acc: Dict[KauffmanDiagram, int], diagrams: Sequence[KauffmanDiagram], weight: int) -> None:
    for k in diagrams:
        acc[k] = acc.get(k, 0) + weight


def _certificate_vector(system: InequalitySystem, l: int) -> Dict[KauffmanDiagram, int]:
    acc: Dict[KauffmanDiagram, int] = {}
    for term in system.terms[:l]:
        _add_indicator(acc, compatible_set(*term.pair), term.sign)
    if l >= system.base_index:
        _add_indicator(acc, compatible_set(system.a, system.b), -system.base_sign)
    sign = system.signs[l - 1]
    return {k: sign * c for k, c in acc.items() if c}


def certify(system: InequalitySystem, l: int) -> Certificate:
    """Diagram coefficients of the l-th signed partial sum."""
    if not 1 <= l <= system.eta:
        raise LayoutError(f"l={l} outside [1, {system.eta}]")
    return Certificate(system, l, _certificate_vector(system, l))


def certificate_value(certificate: Certificate, matrix: RationalMatrix) -> Fraction:
    """sum_K c_K Imm_K(X_{M,M'}) for an n x m matrix X."""
    if not certificate.coefficients:
        return Fraction(0)
    system = certificate.system
    values = immanants_all(generalized_submatrix(matrix, system.a, system.b))
    return sum((c * values[k] for k, c in certificate.coefficients.items()), Fraction(0))


def sorted_display_signs(system: InequalitySystem, l: int) -> Dict[PairKey, int]:
    """Coefficients of (-1)^l (sum_k (-1)^k Δ_{I_k↑}Δ_{J_k↑} + (-1)^(eta-r) Δ_{I↑}Δ_{J↑})."""
    out: Dict[PairKey, int] = {}
    for term in system.terms[:l]:
        key = _pair_key(*term.pair)
        out[key] = out.get(key, 0) + (-1) ** (l + term.k)
    key = _pair_key(system.a, system.b)
    out[key] = out.get(key, 0) + (-1) ** (l + system.eta - system.r)
    return {k: c for k, c in out.items() if c}


def _ordered_form(system: InequalitySystem, l: int) -> Dict[PairKey, int]:
    sign = system.signs[l - 1]
    out: Dict[PairKey, int] = {}
    for term in system.terms[:l]:
        key = _pair_key(*term.pair)
        out[key] = out.get(key, 0) + sign * term.sign
    if l >= system.base_index:
        key = _pair_key(system.a, system.b)
        out[key] = out.get(key, 0) - sign * system.base_sign
    return {k: c for k, c in out.items() if c}


def display_agrees(system: InequalitySystem) -> bool:
    """Compare both sign conventions wherever both include the base product."""
    mismatched = [
        l
        for l in range(system.base_index, system.eta + 1)
        if _ordered_form(system, l) != sorted_display_signs(system, l)
    ]
    if mismatched:
        logger.warning(
            "sorted display disagrees with ordered signs for %s/%s r=%d at l=%s",
            system.a,
            system.b,
            system.r,
            mismatched,
        )
    return not mismatched


def _laplace_tuple(n: int, d: int, k: int) -> IndexTuple:
    entries = list(range(1, d + 1)) + list(range(n + d + 2, 2 * n + 1)) + [n + d + 1 - k]
    return IndexTuple.of(n, n, sorted(entries))


@dataclass(frozen=True)
class LaplaceSystem:
    n: int
    d: int
    family: Tuple[IndexTuple, ...]

    @property
    def pairs(self) -> List[Tuple[IndexTuple, IndexTuple]]:
        return [(t, t.complement()) for t in self.family]

    def to_json(self) -> Dict:
        return {
            "n": self.n,
            "d": self.d,
            "family": [
                {"k": k, "I": list(a.entries), "Ic": list(b.entries)}
                for k, (a, b) in enumerate(self.pairs)
            ],
        }


def generalized_laplace_system(n: int, d: int) -> LaplaceSystem:
    """Complementary pairs I(d,k), I(d,k)^c for k in [0, n]."""
    if not 1 <= d < n:
        raise ShapeError(f"need 1 <= d < n, got d={d}, n={n}")
    return LaplaceSystem(n, d, tuple(_laplace_tuple(n, d, k) for k in range(n + 1)))


def evaluate_family(family: Sequence[IndexTuple], point: RationalMatrix) -> List[Fraction]:
    """(-1)^l sum_{k<=l} (-1)^k Δ_{F_k} Δ_{F_k^c} for l = 0..len-1, sorted tuples."""
    values = []
    running = Fraction(0)
    for l, index in enumerate(family):
        running += (-1) ** l * sorted_plucker(point, index) * sorted_plucker(point, index.complement())
        values.append((-1) ** l * running)
    return values


def evaluate_laplace(system: LaplaceSystem, point: RationalMatrix) -> List[Fraction]:
    return evaluate_family(system.family, point)


def certify_laplace(system: LaplaceSystem, l: int) -> Dict[KauffmanDiagram, int]:
    if not 0 <= l <= system.n:
        raise LayoutError(f"l={l} outside [0, {system.n}]")
    acc: Dict[KauffmanDiagram, int] = {}
    for k, (a, b) in enumerate(system.pairs[: l + 1]):
        _add_indicator(acc, compatible_set(a, b), (-1) ** (l + k))
    return {k: c for k, c in acc.items() if c}


def laplace_minor_terms(n: int, d: int) -> List[Tuple[MinorSpec, MinorSpec]]:
    """Each product Δ_{I(d,k)}Δ_{I(d,k)^c} as det A_{P,Q} det A_{P',Q'}."""
    out = []
    for a, b in generalized_laplace_system(n, d).pairs:
        out.append((MinorSpec(*plucker_to_minor(a)), MinorSpec(*plucker_to_minor(b))))
    return out


def laplace_exchange_triple(n: int, d: int) -> Tuple[IndexTuple, IndexTuple, int]:
    """(I, J, r) whose exchange system carries the Laplace family.

    Exchange term k is I(d, n+1-k); the subtracted base product is k = 0.
    """
    first = _laplace_tuple(n, d, 0)
    return first, first.complement(), 1


def laplace_offset(n: int, k: int) -> int:
    """Laplace index of exchange term k (1-based)."""
    return n + 1 - k


@lru_cache(maxsize=None)
def shifted_laplace_family(n: int, d: int) -> Tuple[IndexTuple, ...]:
    """rho ∘ sigma^(2n-d) applied to each I(d,k); equals [1, n-1] ∪ {n+k}."""
    system = generalized_laplace_system(n, d)
    return tuple(reflect_tuple(cyclic_shift_tuple(t, 2 * n - d)).sorted() for t in system.family)


def transport_system(
    a: IndexTuple, b: IndexTuple, r: int, shift: int = 0, reflect: bool = False
) -> Tuple[IndexTuple, IndexTuple, int]:
    """(I', J', r') for sigma^shift, or rho followed by sigma^shift (r' = eta+1-r)."""
    eta = layout(a, b).eta
    if reflect:
        a, b, r = reflect_tuple(a), reflect_tuple(b), eta + 1 - r
    return cyclic_shift_tuple(a, shift), cyclic_shift_tuple(b, shift), r


def certificate_chords(certificate: Certificate) -> Dict[Tuple[Tuple[int, int], ...], int]:
    """Coefficient vector keyed by position chords on I△J."""
    system = certificate.system
    return {
        position_chords(system.a, system.b, k): c for k, c in certificate.coefficients.items()
    }

