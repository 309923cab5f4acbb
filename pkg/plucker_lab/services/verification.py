"""Sample sweeps over TNN points and the counterexample search ladder."""

from __future__ import annotations

import concurrent.futures
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from plucker_lab.combinatorics import IndexTuple, is_weakly_separated, layout, symdiff_word
from plucker_lab.errors import BudgetExhausted, ShapeError
from plucker_lab.linalg import RationalMatrix, format_rational, grassmann_to_matrix
from plucker_lab.services.generation import (
    GeneratorConfig,
    all_plucker_nonnegative,
    collapse_arc,
    random_grassmann_point,
)
from plucker_lab.services.inequalities import (
    Certificate,
    InequalitySystem,
    build_system,
    certify,
    display_agrees,
    evaluate_system,
)
from plucker_lab.services.run_modes import DEFAULT_MODE_KEY, VERIFY_MODES, VerifyMode
from plucker_lab.services.settings import get_settings

logger = logging.getLogger(__name__)

CERTIFIED = "certified"
NUMERIC = "numerically-nonnegative"
REFUTED = "refuted"
VIOLATED = "violated"


@dataclass(frozen=True)
class ViolationWitness:
    point: RationalMatrix
    l: int
    r: int
    value: Fraction
    seed: int
    matrix_form: Optional[RationalMatrix] = None
    scale: Optional[Fraction] = None

    def to_json(self) -> Dict:
        data = {
            "l": self.l,
            "r": self.r,
            "value": format_rational(self.value),
            "seed": self.seed,
            "point": self.point.to_json(),
        }
        if self.matrix_form is not None:
            data["matrix"] = self.matrix_form.to_json()
            data["det_b"] = format_rational(self.scale)
        return data


def make_witness(system: InequalitySystem, point: RationalMatrix, l: int, seed: int) -> ViolationWitness:
    """Check the point and attach its n x m matrix form when the bottom block is invertible."""
    value = evaluate_system(system, point)[l - 1]
    if value >= 0:
        raise ValueError(f"l={l}, r={system.r} is not violated at this point")
    if not all_plucker_nonnegative(point, system.shape):
        raise ValueError("witness point has a negative maximal minor")
    try:
        matrix, scale = grassmann_to_matrix(point, system.shape)
    except ShapeError:
        matrix, scale = None, None
    return ViolationWitness(point, l, system.r, value, seed, matrix, scale)


@dataclass
class InequalityResult:
    l: int
    r: int
    certificate: Certificate
    status: str = CERTIFIED
    min_value: Optional[Fraction] = None
    witness: Optional[ViolationWitness] = None

    def to_json(self) -> Dict:
        return {
            "l": self.l,
            "r": self.r,
            "status": self.status,
            "certified": self.certificate.valid,
            "coefficients": self.certificate.to_json()["coefficients"],
            "min_value": None if self.min_value is None else format_rational(self.min_value),
            "witness": None if self.witness is None else self.witness.to_json(),
        }


@dataclass
class VerificationReport:
    a: IndexTuple
    b: IndexTuple
    ws: bool
    samples: int
    seed: int
    display_agrees: bool
    results: List[InequalityResult] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(r.status in (CERTIFIED, NUMERIC) for r in self.results)

    @property
    def violations(self) -> List[InequalityResult]:
        return [r for r in self.results if r.status in (VIOLATED, REFUTED)]

    def to_json(self) -> Dict:
        return {
            "pair": {"m": self.a.shape.m, "n": self.a.shape.n, "I": list(self.a.entries), "J": list(self.b.entries)},
            "ws": self.ws,
            "samples": self.samples,
            "seed": self.seed,
            "display_agrees": self.display_agrees,
            "holds": self.holds,
            "results": [r.to_json() for r in self.results],
        }


def _sample_points(a: IndexTuple, mode: VerifyMode, samples: int, seed: int) -> List[Tuple[int, RationalMatrix]]:
    shape = a.shape
    base = GeneratorConfig(seed, shape.n, shape.m, mode.bound, mode.density)

    def make(t: int) -> Tuple[int, RationalMatrix]:
        q = mode.perturb_q if t % 2 else None
        return seed + t, random_grassmann_point(base.with_seed(seed + t), q)

    return [make(t) for t in range(samples)]


def verify_pair(
    a: IndexTuple,
    b: IndexTuple,
    samples: Optional[int] = None,
    mode: VerifyMode = VERIFY_MODES[DEFAULT_MODE_KEY],
    seed: int = 0,
    max_workers: Optional[int] = None,
) -> VerificationReport:
    """Certify and sample every (l, r) of the pair's oscillating system.

    With samples = 0 only certificates are computed; a negative coefficient is
    then reported as refuted.
    """
    samples = mode.samples if samples is None else samples
    ws = is_weakly_separated(a, b)
    if not symdiff_word(a, b):
        logger.info("%s/%s have equal sets, the system is empty", a, b)
        return VerificationReport(a, b, ws, samples, seed, True)
    eta = layout(a, b).eta
    systems = [build_system(a, b, r) for r in range(1, eta + 1)]
    report = VerificationReport(a, b, ws, samples, seed, all(display_agrees(s) for s in systems))
    for system in systems:
        for l in range(1, eta + 1):
            cert = certify(system, l)
            status = CERTIFIED if cert.valid else (NUMERIC if samples else REFUTED)
            report.results.append(InequalityResult(l, system.r, cert, status))
    if not samples:
        return report

    points = _sample_points(a, mode, samples, seed)
    workers = max_workers or min(get_settings().max_workers, samples)

    def evaluate_all(item: Tuple[int, RationalMatrix]) -> Tuple[int, RationalMatrix, List[List[Fraction]]]:
        point_seed, point = item
        return point_seed, point, [evaluate_system(s, point) for s in systems]

    with concurrent.futures.ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        evaluated = list(pool.map(evaluate_all, points))

    by_key = {(res.l, res.r): res for res in report.results}
    for point_seed, point, rows in evaluated:
        for system, values in zip(systems, rows):
            for l, value in enumerate(values, start=1):
                res = by_key[(l, system.r)]
                if res.min_value is None or value < res.min_value:
                    res.min_value = value
                if value < 0 and res.witness is None:
                    if res.certificate.valid:
                        logger.error("certified l=%d r=%d evaluated negative at seed %d", l, system.r, point_seed)
                    res.witness = make_witness(system, point, l, point_seed)
                    res.status = VIOLATED
    logger.info(
        "verified %s/%s over %d samples: %d violations",
        a,
        b,
        samples,
        len(report.violations),
    )
    return report


def _adjacent_pairs(a: IndexTuple, b: IndexTuple) -> List[Tuple[int, int]]:
    """Clockwise-consecutive points of I ∪ J that lie on opposite sides of I△J."""
    union = sorted(a.as_set() | b.as_set())
    word = dict(symdiff_word(a, b))
    pairs = []
    for t, x in enumerate(union):
        y = union[(t + 1) % len(union)]
        if x in word and y in word and word[x] != word[y]:
            pairs.append((x, y))
    return pairs


def _candidate_order(systems: Sequence[InequalitySystem]) -> List[Tuple[InequalitySystem, int]]:
    first, rest = [], []
    for system in systems:
        for l in range(1, system.eta + 1):
            (first if certify(system, l).negative else rest).append((system, l))
    return first + rest


def search_counterexample(
    a: IndexTuple,
    b: IndexTuple,
    budget: Optional[int] = None,
    mode: VerifyMode = VERIFY_MODES[DEFAULT_MODE_KEY],
    seed: int = 0,
) -> Optional[ViolationWitness]:
    """Seed ladder seed, seed+1, ...; odd attempts collapse an adjacent i/j pair.

    Returns None at once for weakly separated pairs and raises BudgetExhausted
    when no witness turns up.
    """
    if is_weakly_separated(a, b):
        logger.info("%s/%s is weakly separated, nothing to search", a, b)
        return None
    budget = mode.budget if budget is None else budget
    eta = layout(a, b).eta
    candidates = _candidate_order([build_system(a, b, r) for r in range(1, eta + 1)])
    pairs = _adjacent_pairs(a, b)
    shape = a.shape
    base = GeneratorConfig(seed, shape.n, shape.m, mode.bound, mode.density)
    for t in range(budget):
        point = random_grassmann_point(base.with_seed(seed + t), mode.perturb_q)
        if t % 2 and pairs:
            x, y = pairs[(t // 2) % len(pairs)]
            point = collapse_arc(point, x, y)
        rows: Dict[int, List[Fraction]] = {}
        for system, l in candidates:
            if system.r not in rows:
                rows[system.r] = evaluate_system(system, point)
            value = rows[system.r][l - 1]
            if value < 0:
                logger.info("witness for %s/%s at l=%d r=%d after %d attempts", a, b, l, system.r, t + 1)
                return make_witness(system, point, l, seed + t)
    logger.warning("search for %s/%s exhausted %d attempts", a, b, budget)
    raise BudgetExhausted(budget)
