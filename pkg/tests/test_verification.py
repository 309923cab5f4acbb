from fractions import Fraction

import pytest

from plucker_lab.combinatorics import IndexTuple, cyclic_shift_tuple, reflect_tuple
from plucker_lab.errors import BudgetExhausted
from plucker_lab.presets import PAIR_PRESETS
from plucker_lab.services import verification
from plucker_lab.services.generation import GeneratorConfig, all_plucker_nonnegative, random_grassmann_point
from plucker_lab.services.inequalities import build_system, evaluate_minor_form, evaluate_system
from plucker_lab.services.run_modes import DEFAULT_MODE_KEY, VERIFY_MODES
from plucker_lab.services.verification import (
    CERTIFIED,
    NUMERIC,
    REFUTED,
    VIOLATED,
    make_witness,
    search_counterexample,
    verify_pair,
)

QUICK = VERIFY_MODES["quick"]


def preset_pair(name):
    p = PAIR_PRESETS[name]
    return IndexTuple.of(p["m"], p["n"], p["I"]), IndexTuple.of(p["m"], p["n"], p["J"])


def test_run_modes():
    assert DEFAULT_MODE_KEY in VERIFY_MODES
    assert QUICK.samples < VERIFY_MODES["thorough"].samples


def test_weakly_separated_pair_is_certified():
    report = verify_pair(*preset_pair("ws-six"), samples=3, mode=QUICK, max_workers=2)
    assert report.ws
    assert report.holds
    assert report.display_agrees
    assert len(report.results) == 25
    assert all(r.status == CERTIFIED for r in report.results)
    assert all(r.min_value >= 0 for r in report.results)


def test_block_pair_report_json():
    a, b = IndexTuple.of(3, 3, [1, 2, 3]), IndexTuple.of(3, 3, [4, 5, 6])
    data = verify_pair(a, b, samples=2, mode=QUICK, seed=4).to_json()
    assert data["holds"] is True
    assert data["pair"] == {"m": 3, "n": 3, "I": [1, 2, 3], "J": [4, 5, 6]}
    assert data["samples"] == 2
    assert {r["status"] for r in data["results"]} == {CERTIFIED}


def test_interleaved_two_is_violated():
    a, b = preset_pair("interleaved-two")
    report = verify_pair(a, b, samples=4, mode=QUICK)
    assert not report.ws
    assert not report.holds
    violated = [r for r in report.results if r.status == VIOLATED]
    assert violated
    for res in violated:
        witness = res.witness
        assert witness.value < 0
        assert all_plucker_nonnegative(witness.point, a.shape)
        system = build_system(a, b, witness.r)
        assert evaluate_system(system, witness.point)[witness.l - 1] == witness.value


def test_certificates_only_report_refutations():
    report = verify_pair(*preset_pair("interleaved-three"), samples=0, mode=QUICK)
    statuses = {r.status for r in report.results}
    assert REFUTED in statuses
    assert statuses <= {CERTIFIED, REFUTED}
    assert not report.holds
    assert report.violations


def test_numeric_status_when_samples_miss():
    report = verify_pair(*preset_pair("interleaved-three"), samples=1, mode=QUICK)
    for res in report.results:
        if res.certificate.valid:
            assert res.status == CERTIFIED
        else:
            assert res.status in (NUMERIC, VIOLATED)


@pytest.mark.parametrize("name", ["interleaved-two", "interleaved-three", "complement-three"])
def test_search_finds_witness(name):
    a, b = preset_pair(name)
    witness = search_counterexample(a, b, budget=20, mode=QUICK)
    assert witness is not None
    assert witness.value < 0
    assert all_plucker_nonnegative(witness.point, a.shape)
    system = build_system(a, b, witness.r)
    assert evaluate_system(system, witness.point)[witness.l - 1] < 0
    if witness.matrix_form is not None:
        assert evaluate_minor_form(system, witness.matrix_form)[witness.l - 1] < 0


def test_search_is_deterministic():
    a, b = preset_pair("interleaved-three")
    first = search_counterexample(a, b, budget=10, mode=QUICK, seed=3)
    second = search_counterexample(a, b, budget=10, mode=QUICK, seed=3)
    assert first.to_json() == second.to_json()


def test_search_skips_weakly_separated_pairs():
    assert search_counterexample(*preset_pair("ws-six"), mode=QUICK) is None


def test_search_with_no_budget_raises():
    with pytest.raises(BudgetExhausted) as info:
        search_counterexample(*preset_pair("interleaved-two"), budget=0, mode=QUICK)
    assert info.value.attempts == 0


@pytest.mark.parametrize("name", ["interleaved-two", "interleaved-three"])
def test_search_across_rotations_and_reflection(name):
    a, b = preset_pair(name)
    images = [(cyclic_shift_tuple(a, t), cyclic_shift_tuple(b, t)) for t in range(a.shape.size)]
    images.append((reflect_tuple(a), reflect_tuple(b)))
    for x, y in images:
        assert search_counterexample(x, y, budget=20, mode=QUICK) is not None


def test_make_witness_rejects_nonviolating_point():
    a, b = preset_pair("ws-six")
    system = build_system(a, b, 3)
    point = random_grassmann_point(GeneratorConfig(0, 6, 6))
    with pytest.raises(ValueError):
        make_witness(system, point, 1, seed=0)


def test_witness_json_carries_matrix_form():
    a, b = preset_pair("interleaved-two")
    system = build_system(a, b, 2)
    point = random_grassmann_point(GeneratorConfig(0, 2, 2), Fraction(1, 2))
    witness = make_witness(system, point, 1, seed=0)
    data = witness.to_json()
    assert data["l"] == 1 and data["r"] == 2
    assert "matrix" in data
    assert evaluate_minor_form(system, witness.matrix_form)[0] < 0


def test_equal_sets_give_an_empty_report():
    a = IndexTuple.of(2, 2, [1, 3])
    report = verify_pair(a, IndexTuple.of(2, 2, [3, 1]), samples=1, mode=QUICK)
    assert report.ws
    assert report.results == []
    assert report.holds
    assert report.to_json()["results"] == []


def test_search_evaluates_each_system_once_per_attempt(monkeypatch):
    calls = []

    def counting(system, point):
        calls.append(system.r)
        return evaluate_system(system, point)

    monkeypatch.setattr(verification, "evaluate_system", counting)
    a, b = preset_pair("interleaved-three")
    witness = search_counterexample(a, b, budget=20, mode=QUICK, seed=0)
    attempts = witness.seed + 1
    # one extra call re-checks the witness
    assert len(calls) <= 3 * attempts + 1
