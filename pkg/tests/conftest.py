"""Shared fixtures: worked-example databases, scene files, random databases."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from beliefatms import CONTRADICTION, Engine
from beliefatms.clausefile import load_clause_file
from beliefatms.recognition import load_model, load_scene

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
GOLDEN_DIR = Path(__file__).resolve().parent / "data" / "golden"

EXAMPLE1_MASSES = {"A1": 0.5, "A2": 0.7, "A3": 0.8, "A4": 0.6, "A5": 0.9, "A6": 0.4}


def data_path(name: str) -> Path:
    return DATA_DIR / name


def golden(name: str) -> str:
    return (GOLDEN_DIR / name).read_text(encoding="utf-8")


@pytest.fixture
def example1():
    return load_clause_file(data_path("example1.clauses"))


@pytest.fixture
def example2():
    return load_clause_file(data_path("example2.clauses"))


@pytest.fixture
def puppet_scene():
    return load_scene(data_path("puppet_scene.json"))


@pytest.fixture
def puppet_model():
    return load_model(data_path("puppet_model.json"))


@pytest.fixture
def degraded_model():
    return load_model(data_path("puppet_model_degraded.json"))


# -- independent forward chaining (test-side oracle) -------------------------

def chain(clauses, true_set):
    """Set-based Horn closure, independent of the engine internals.

    ``clauses`` are (antecedents, consequent) pairs as declared;
    ``true_set`` the initially true literals.  Returns (derived set,
    contradiction flag).
    """
    derived = set(true_set)
    contradiction = False
    changed = True
    while changed:
        changed = False
        for antecedents, consequent in clauses:
            if not antecedents <= derived:
                continue
            if consequent is CONTRADICTION:
                if not contradiction:
                    contradiction = True
                    changed = True
            elif consequent not in derived:
                derived.add(consequent)
                changed = True
    return derived, contradiction


# -- random database generation ----------------------------------------------

def random_db_script(rng: random.Random, max_assumptions=12, max_clauses=30,
                     allow_contradictions=True):
    """A random Horn database as a list of (op, args) build steps.

    Assumption declarations come first; the remaining steps (premises,
    rules, contradiction clauses) may be replayed in any order.
    """
    n = rng.randint(3, max_assumptions)
    assumptions = [f"A{i}" for i in range(1, n + 1)]
    masses = {a: round(rng.uniform(0.05, 0.95), 3) for a in assumptions}
    literals = [f"x{i}" for i in range(1, rng.randint(3, 8))]
    steps = []
    if rng.random() < 0.4:
        steps.append(("premise", (rng.choice(literals),)))
    n_clauses = rng.randint(3, max_clauses)
    for _ in range(n_clauses):
        roll = rng.random()
        if allow_contradictions and roll < 0.15:
            k = rng.randint(1, 2)
            ants = tuple(rng.sample(assumptions + literals, k))
            steps.append(("contra", ants))
        else:
            k = rng.randint(1, 3)
            ants = tuple(rng.sample(assumptions + literals, k))
            steps.append(("rule", (ants, rng.choice(literals))))
    return assumptions, masses, steps


def build_engine(assumptions, steps):
    engine = Engine()
    for a in assumptions:
        engine.add_assumption(a)
    for op, args in steps:
        if op == "premise":
            engine.add_premise(args[0])
        elif op == "rule":
            ants, consequent = args
            engine.add_justification(ants, consequent)
        elif op == "contra":
            engine.add_justification(args, CONTRADICTION)
        else:
            raise AssertionError(op)
    return engine
