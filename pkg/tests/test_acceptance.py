"""Acceptance suite: the project's exit criteria, one test per criterion.

Each test prints a single PASS line once its assertions hold (visible
with ``pytest -s``), and pins the stated tolerance and runtime budget.
"""

from __future__ import annotations

import itertools
import random
import time

import pytest

from beliefatms import (
    Dnf,
    FrameMass,
    TotalConflictError,
    belief_of_label,
    brute_force_belief,
    conditioned_belief,
    ds_combine,
    prob_enum,
    prob_inclusion_exclusion,
    to_disjoint,
)
from beliefatms.clausefile import load_clause_file
from beliefatms.recognition import Band, WeightConfig, hypothesis_weight, interpret
from beliefatms.recognition.model import load_model, load_scene

from conftest import build_engine, data_path, random_db_script
from test_atms import assert_state_invariants


def env(*names):
    return frozenset(names)


def report(criterion: int, message: str) -> None:
    print(f"PASS criterion {criterion}: {message}")


def test_criterion_1_example1_regression():
    started = time.perf_counter()
    engine, masses = load_clause_file(data_path("example1.clauses"))
    assert set(engine.label_of("x2")) == {env("A1")}
    assert set(engine.label_of("x3")) == {env("A1", "A2")}
    assert set(engine.label_of("x4")) == {env("A3")}
    for literal, expected in (("x2", 0.5), ("x3", 0.35), ("x4", 0.8)):
        value = belief_of_label(engine.label_of(literal), masses)
        assert value == pytest.approx(expected, abs=1e-9)
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0
    report(1, f"labels and beliefs for x2/x3/x4 exact in {elapsed:.3f}s")


def test_criterion_2_x5_discrepancy():
    engine, masses = load_clause_file(data_path("example1.clauses"))
    # (a) the clause set propagates to this label and belief
    assert set(engine.label_of("x5")) == {env("A3", "A4"), env("A1", "A3", "A5")}
    propagated = belief_of_label(engine.label_of("x5"), masses)
    assert propagated == pytest.approx(0.624, abs=1e-9)
    assert brute_force_belief(engine, masses, "x5") == pytest.approx(0.624, abs=1e-9)
    # (b) a hand-evaluation cross-check: this alternative support set
    # for x5 must match its factored expansion rho(A1)(rho(A5)
    # + rho(A3)rho(A4) - rho(A5)rho(A3)rho(A4)) = 0.474
    alternative_label = [env("A1", "A5"), env("A1", "A3", "A4")]
    alternative = belief_of_label(alternative_label, masses)
    expansion = 0.5 * (0.9 + 0.8 * 0.6 - 0.9 * 0.8 * 0.6)
    assert alternative == pytest.approx(expansion, abs=1e-9)
    assert alternative == pytest.approx(0.474, abs=1e-9)
    report(2, "propagated x5 = 0.624, alternative-label evaluation = 0.474")


def test_criterion_3_example2_regression():
    engine, masses = load_clause_file(data_path("example2.clauses"))
    assert set(engine.nogoods) == {env("A1", "A3", "A6")}
    assert belief_of_label(engine.nogoods, masses) == pytest.approx(0.16, abs=1e-9)
    expectations = {
        "x2": 0.34 / 0.84,   # 0.404761...
        "x4": 0.64 / 0.84,   # 0.761904...
        "x3": 0.238 / 0.84,  # 0.283333...
    }
    for literal, expected in expectations.items():
        value = conditioned_belief(engine.label_of(literal), engine.nogoods, masses)
        assert value == pytest.approx(expected, abs=1e-9)
    report(3, "nogood mass 0.16 and conditioned x2/x3/x4 values exact")


def test_criterion_4_weight_table():
    cfg = WeightConfig(p_high=0.8, p_low=0.5)
    table = {
        (4, 0): 1.0,
        (3, 1): 0.625,
        (2, 2): 0.390625,
        (0, 4): 0.152587890625,
    }
    for (highs, lows), expected in table.items():
        bands = [Band.HIGH] * highs + [Band.LOW] * lows
        assert hypothesis_weight(bands, cfg) == pytest.approx(expected, abs=1e-12)
    report(4, "all four band-pattern weights exact")


def test_criterion_5_reliability_three_way_agreement():
    started = time.perf_counter()
    rng = random.Random(1234567)
    for trial in range(200):
        n = rng.randint(2, 12)
        variables = [f"v{i}" for i in range(n)]
        terms = [
            frozenset(rng.sample(variables, rng.randint(1, min(n, 4))))
            for _ in range(rng.randint(1, 8))
        ]
        d = Dnf(terms, universe=variables)
        p = {v: rng.random() for v in variables}
        reference = prob_enum(d, p)
        assert prob_inclusion_exclusion(d, p) == pytest.approx(reference, abs=1e-9)
        assert to_disjoint(d).evaluate(p) == pytest.approx(reference, abs=1e-9)
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0
    report(5, f"200 random DNFs agree three ways in {elapsed:.2f}s")


def test_criterion_6_oracle_equivalence():
    started = time.perf_counter()
    rng = random.Random(777777)
    databases = 0
    while databases < 100:
        assumptions, masses, steps = random_db_script(
            rng, max_assumptions=12, max_clauses=30
        )
        engine = build_engine(assumptions, steps)
        databases += 1
        nogoods = engine.nogoods
        conflict = belief_of_label(nogoods, masses)
        for name in list(engine.literals()) + list(engine.assumptions()):
            label = engine.label_of(name)
            raw = belief_of_label(label, masses)
            oracle_raw = brute_force_belief(engine, masses, name)
            assert raw == pytest.approx(oracle_raw, abs=1e-9), name
            if conflict < 1.0:
                conditioned = conditioned_belief(label, nogoods, masses)
                oracle_cond = brute_force_belief(
                    engine, masses, name, conditioned=True
                )
                assert conditioned == pytest.approx(oracle_cond, abs=1e-9), name
    elapsed = time.perf_counter() - started
    assert elapsed < 30.0
    report(6, f"100 random databases oracle-equivalent in {elapsed:.2f}s")


def test_criterion_7_combination_properties():
    rng = random.Random(4242)

    def random_mass(n):
        subsets = [
            frozenset(c)
            for size in range(1, n + 1)
            for c in itertools.combinations(range(n), size)
        ]
        chosen = rng.sample(subsets, rng.randint(1, min(5, len(subsets))))
        raw = [rng.uniform(0.05, 1.0) for _ in chosen]
        total = sum(raw)
        return FrameMass(n, {s: v / total for s, v in zip(chosen, raw)})

    def assert_close(a: FrameMass, b: FrameMass):
        assert set(a.masses) == set(b.masses)
        for s, v in a.masses.items():
            assert v == pytest.approx(b.masses[s], abs=1e-9)

    pairs = triples = 0
    while pairs < 50 or triples < 50:
        n = rng.randint(1, 4)
        m1, m2, m3 = random_mass(n), random_mass(n), random_mass(n)
        try:
            assert_close(ds_combine(m1, m2), ds_combine(m2, m1))
            pairs += 1
        except TotalConflictError:
            pass
        try:
            assert_close(
                ds_combine(ds_combine(m1, m2), m3),
                ds_combine(m1, ds_combine(m2, m3)),
            )
            triples += 1
        except TotalConflictError:
            pass
    m = random_mass(4)
    assert ds_combine(m, FrameMass.vacuous(4)) == m
    with pytest.raises(TotalConflictError):
        ds_combine(
            FrameMass(2, {frozenset({0}): 1.0}), FrameMass(2, {frozenset({1}): 1.0})
        )
    report(7, "combination commutative/associative, vacuous exact, conflict raises")


def test_criterion_8_label_invariants():
    rng = random.Random(98765)
    from beliefatms import CONTRADICTION, Engine

    for _ in range(8):
        assumptions, _, steps = random_db_script(rng, max_assumptions=8, max_clauses=14)
        engine = Engine()
        for a in assumptions:
            engine.add_assumption(a)
        for op, args in steps:
            if op == "premise":
                engine.add_premise(args[0])
            elif op == "rule":
                engine.add_justification(args[0], args[1])
            else:
                engine.add_justification(args, CONTRADICTION)
            assert_state_invariants(engine)
    # one larger database at the stated enumeration bound, end state only
    assumptions, _, steps = random_db_script(rng, max_assumptions=12, max_clauses=30)
    engine = build_engine(assumptions, steps)
    assert_state_invariants(engine)
    # insertion-order independence
    for _ in range(4):
        assumptions, _, steps = random_db_script(rng, max_assumptions=8, max_clauses=16)
        reference = build_engine(assumptions, steps)
        names = list(reference.assumptions()) + list(reference.literals())
        for _ in range(3):
            shuffled = steps[:]
            rng.shuffle(shuffled)
            other = build_engine(assumptions, shuffled)
            assert set(other.nogoods) == set(reference.nogoods)
            for name in names:
                assert set(other.label_of(name)) == set(reference.label_of(name))
    report(8, "soundness/completeness/minimality/consistency and order independence")


def test_criterion_9_recognition_fixture():
    started = time.perf_counter()
    scene = load_scene(data_path("puppet_scene.json"))
    model = load_model(data_path("puppet_model.json"))
    results = interpret(scene, model)
    assert len(results) == 1
    assert results[0].complete
    assert f"{results[0].belief:.9f}" == "1.000000000"
    degraded = load_model(data_path("puppet_model_degraded.json"))
    degraded_results = interpret(scene, degraded)
    assert len(degraded_results) == 1
    assert degraded_results[0].complete
    assert degraded_results[0].belief == pytest.approx(0.625, abs=0)
    elapsed = time.perf_counter() - started
    assert elapsed < 2.0
    report(9, f"one complete interpretation at 1.0, degraded thigh 0.625, {elapsed:.2f}s")
