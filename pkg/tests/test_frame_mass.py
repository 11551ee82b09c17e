"""Frame-level mass functions: validation, combination, belief, conditioning."""

from __future__ import annotations

import itertools
import random

import pytest

from beliefatms import (
    FrameMass,
    TotalConflictError,
    conditioned_belief,
    ds_combine,
    frame_belief,
)

from conftest import build_engine, random_db_script


def fm(n, masses):
    return FrameMass(n, {frozenset(k): v for k, v in masses.items()})


class TestFrameMassValidation:
    def test_must_sum_to_one(self):
        with pytest.raises(ValueError, match="sum"):
            fm(2, {(0,): 0.6, (1,): 0.6})

    def test_empty_subset_mass_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            fm(2, {(): 0.2, (0, 1): 0.8})

    def test_negative_mass_rejected(self):
        with pytest.raises(ValueError, match="negative"):
            fm(2, {(0,): -0.1, (0, 1): 1.1})

    def test_outside_frame_rejected(self):
        with pytest.raises(ValueError, match="outside"):
            fm(2, {(5,): 1.0})


class TestDsCombine:
    def test_vacuous_identity_exact(self):
        m = fm(3, {(0,): 0.25, (0, 1): 0.25, (0, 1, 2): 0.5})
        combined = ds_combine(m, FrameMass.vacuous(3))
        assert combined == m

    def test_total_conflict(self):
        m1 = fm(2, {(0,): 1.0})
        m2 = fm(2, {(1,): 1.0})
        with pytest.raises(TotalConflictError):
            ds_combine(m1, m2)

    def test_agreeing_evidence(self):
        m1 = fm(2, {(0,): 0.6, (0, 1): 0.4})
        m2 = fm(2, {(0,): 0.5, (0, 1): 0.5})
        combined = ds_combine(m1, m2)
        assert combined.masses[frozenset({0})] == pytest.approx(0.8, abs=1e-12)
        assert combined.masses[frozenset({0, 1})] == pytest.approx(0.2, abs=1e-12)

    def test_frame_mismatch(self):
        with pytest.raises(ValueError):
            ds_combine(FrameMass.vacuous(2), FrameMass.vacuous(3))


class TestFrameBelief:
    def test_full_frame(self):
        m = fm(2, {(0,): 0.3, (0, 1): 0.7})
        assert frame_belief(m, {0, 1}) == pytest.approx(1.0, abs=1e-12)

    def test_empty_subset(self):
        m = fm(2, {(0,): 0.3, (0, 1): 0.7})
        assert frame_belief(m, set()) == 0.0

    def test_singleton(self):
        m = fm(2, {(0,): 0.3, (0, 1): 0.7})
        assert frame_belief(m, {0}) == pytest.approx(0.3, abs=1e-12)


def _random_frame_mass(rng, n, max_focal=5):
    subsets = [
        frozenset(c)
        for size in range(1, n + 1)
        for c in itertools.combinations(range(n), size)
    ]
    chosen = rng.sample(subsets, rng.randint(1, min(max_focal, len(subsets))))
    raw = [rng.uniform(0.05, 1.0) for _ in chosen]
    total = sum(raw)
    return FrameMass(n, {s: v / total for s, v in zip(chosen, raw)})


class TestFrameProperties:
    def test_combine_commutative(self):
        rng = random.Random(31415)
        for _ in range(60):
            n = rng.randint(1, 4)
            m1 = _random_frame_mass(rng, n)
            m2 = _random_frame_mass(rng, n)
            try:
                left = ds_combine(m1, m2)
            except TotalConflictError:
                with pytest.raises(TotalConflictError):
                    ds_combine(m2, m1)
                continue
            right = ds_combine(m2, m1)
            assert set(left.masses) == set(right.masses)
            for s, v in left.masses.items():
                assert v == pytest.approx(right.masses[s], abs=1e-9)

    def test_combine_associative(self):
        rng = random.Random(2718)
        for _ in range(60):
            n = rng.randint(1, 4)
            m1 = _random_frame_mass(rng, n)
            m2 = _random_frame_mass(rng, n)
            m3 = _random_frame_mass(rng, n)
            try:
                left = ds_combine(ds_combine(m1, m2), m3)
                right = ds_combine(m1, ds_combine(m2, m3))
            except TotalConflictError:
                continue
            assert set(left.masses) == set(right.masses)
            for s, v in left.masses.items():
                assert v == pytest.approx(right.masses[s], abs=1e-9)

    def test_combine_preserves_normalization(self):
        rng = random.Random(1618)
        for _ in range(40):
            n = rng.randint(1, 4)
            try:
                combined = ds_combine(
                    _random_frame_mass(rng, n), _random_frame_mass(rng, n)
                )
            except TotalConflictError:
                continue
            assert sum(combined.masses.values()) == pytest.approx(1.0, abs=1e-9)

    def test_belief_monotone(self):
        rng = random.Random(141)
        for _ in range(40):
            n = rng.randint(1, 4)
            m = _random_frame_mass(rng, n)
            elements = list(range(n))
            small = frozenset(rng.sample(elements, rng.randint(0, n)))
            grown = small | frozenset(rng.sample(elements, rng.randint(0, n)))
            assert frame_belief(m, small) <= frame_belief(m, grown) + 1e-12


class TestConditioningAgreement:
    """Label-level conditioning equals frame-level conditioning.

    The frame is the set of assumption worlds with their product
    weights as singleton masses; a label (or the nogood set) maps to the
    subset of worlds satisfying it.  Conditioning the label belief on
    the nogoods must then match the frame-level rule
    (Bel(a or b) - Bel(b)) / (1 - Bel(b)) with b the nogood worlds.
    """

    def test_random_databases(self):
        rng = random.Random(606)
        checked = 0
        for _ in range(30):
            assumptions, masses, steps = random_db_script(
                rng, max_assumptions=6, max_clauses=12
            )
            engine = build_engine(assumptions, steps)
            nogoods = engine.nogoods
            if not nogoods:
                continue
            names = list(assumptions)
            n = len(names)
            worlds = list(range(1 << n))

            def world_set(bits):
                return frozenset(names[i] for i in range(n) if bits >> i & 1)

            weights = {}
            for w in worlds:
                value = 1.0
                subset = world_set(w)
                for a in names:
                    value *= masses[a] if a in subset else 1.0 - masses[a]
                weights[w] = value
            frame = FrameMass(len(worlds), {frozenset({w}): weights[w] for w in worlds})

            def covered(envs):
                return frozenset(
                    w for w in worlds if any(e <= world_set(w) for e in envs)
                )

            nogood_worlds = covered(nogoods)
            if frame_belief(frame, nogood_worlds) >= 1.0 - 1e-12:
                continue
            for literal in engine.literals():
                label = engine.label_of(literal)
                label_worlds = covered(label)
                numerator = frame_belief(
                    frame, label_worlds | nogood_worlds
                ) - frame_belief(frame, nogood_worlds)
                expected = numerator / (1.0 - frame_belief(frame, nogood_worlds))
                actual = conditioned_belief(label, nogoods, masses)
                assert actual == pytest.approx(expected, abs=1e-9), literal
                checked += 1
        assert checked > 10
