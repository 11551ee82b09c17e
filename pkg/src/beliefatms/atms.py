"""Assumption-based truth maintenance over Horn clauses.

The engine maintains a database of Horn clauses over two kinds of nodes:
*assumptions* (primitive literals that carry evidential weight elsewhere)
and ordinary literals derived from them.  For every node it keeps a
*label*: the minimal set of environments (assumption sets) from which the
node is derivable, kept consistent against the recorded *nogoods*
(assumption sets known to be contradictory).

Labels are updated incrementally as clauses arrive, by propagating the
cross-product of antecedent labels to consequents until a fixpoint is
reached.  Cyclic clause sets are fine: labels only ever gain coverage, so
the fixpoint terminates in the finite environment lattice.

Literals are plain strings.  A leading ``!`` marks the negative polarity
of a name (``!x6`` is the complement of ``x6``); the engine treats the
two polarities as opaque, unrelated nodes and only rules them out
together when a contradiction between them is declared explicitly.

Mutations (``add_assumption``, ``add_premise``, ``add_justification``,
``record_contradiction``) are single-writer and must be serialized.
Queries return immutable snapshots and are safe to run concurrently
between mutations.
"""

from __future__ import annotations

import re
from collections import deque
from collections.abc import Iterable
from typing import Union

__all__ = [
    "Env",
    "EMPTY_ENV",
    "CONTRADICTION",
    "AtmsError",
    "DuplicateNameError",
    "UnknownLiteralError",
    "complement",
    "env_union",
    "minimize",
    "filter_consistent",
    "combine_antecedent_labels",
    "Engine",
]

Env = frozenset[str]

EMPTY_ENV: Env = frozenset()

_NAME_RE = re.compile(r"!?[A-Za-z0-9_][A-Za-z0-9_.:\-]*\Z")


class AtmsError(Exception):
    """A request violated the engine's semantic contracts."""


class DuplicateNameError(AtmsError):
    """The name is already declared."""


class UnknownLiteralError(AtmsError):
    """The literal has never been mentioned in the database."""


class _Contradiction:
    """Marker consequent for clauses that rule out assumption sets."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "CONTRADICTION"


CONTRADICTION = _Contradiction()

Consequent = Union[str, _Contradiction]


def _check_name(name: str) -> str:
    if not isinstance(name, str) or not _NAME_RE.match(name):
        raise AtmsError(f"invalid literal name: {name!r}")
    return name


def complement(literal: str) -> str:
    """The opposite polarity of a literal (``x`` <-> ``!x``)."""
    return literal[1:] if literal.startswith("!") else "!" + literal


def env_union(a: Iterable[str], b: Iterable[str]) -> Env:
    """Union of two environments."""
    return frozenset(a) | frozenset(b)


def _size_key(env: Env) -> tuple[int, tuple[str, ...]]:
    return (len(env), tuple(sorted(env)))


def minimize(envs: Iterable[Env]) -> tuple[Env, ...]:
    """Subsumption-reduce a set of environments.

    Duplicates and proper supersets are dropped.  The result is returned
    in a deterministic (size, then name) order.
    """
    unique = sorted({frozenset(e) for e in envs}, key=_size_key)
    kept: list[Env] = []
    for env in unique:
        if not any(small <= env for small in kept):
            kept.append(env)
    return tuple(kept)


def filter_consistent(envs: Iterable[Env], nogoods: Iterable[Env]) -> tuple[Env, ...]:
    """Drop every environment that is a superset of some nogood."""
    nogoods = tuple(nogoods)
    return tuple(e for e in envs if not any(ng <= e for ng in nogoods))


def combine_antecedent_labels(
    labels: Iterable[Iterable[Env]],
    direct_assumptions: Iterable[str] = EMPTY_ENV,
    nogoods: Iterable[Env] = (),
) -> tuple[Env, ...]:
    """Conjunctive combination of antecedent labels.

    Takes the cross-product of one environment from each label, unions
    each choice together (and with ``direct_assumptions``), then
    minimizes and filters against ``nogoods``.  An empty label anywhere
    in the list yields the empty result: the consequent is underivable
    through that clause.
    """
    nogoods = tuple(nogoods)
    acc: list[Env] = [frozenset(direct_assumptions)]
    for label in labels:
        label = tuple(label)
        if not label:
            return ()
        acc = list(minimize([e | cand for e in acc for cand in label]))
        if nogoods:
            acc = [e for e in acc if not any(ng <= e for ng in nogoods)]
        if not acc:
            return ()
    if nogoods:
        acc = [e for e in acc if not any(ng <= e for ng in nogoods)]
    return tuple(minimize(acc))


class Engine:
    """Horn-clause database with incrementally maintained labels."""

    def __init__(self) -> None:
        self._assumption_index: dict[str, int] = {}
        self._node_order: dict[str, int] = {}
        self._labels: dict[str, set[Env]] = {}
        # Clauses as declared, premises stored with empty antecedents.
        self._clauses: list[tuple[frozenset[str], Consequent]] = []
        self._consumers: dict[str, list[int]] = {}
        self._nogoods: list[Env] = []

    # -- queries ---------------------------------------------------------

    def assumptions(self) -> tuple[str, ...]:
        """Assumption names in declaration order."""
        return tuple(self._assumption_index)

    def literals(self) -> tuple[str, ...]:
        """Non-assumption nodes in first-mention order."""
        return tuple(
            name for name in self._node_order if name not in self._assumption_index
        )

    def has_node(self, name: str) -> bool:
        return name in self._labels

    def is_assumption(self, name: str) -> bool:
        return name in self._assumption_index

    def clauses(self) -> tuple[tuple[frozenset[str], Consequent], ...]:
        """All declared clauses, in insertion order."""
        return tuple(self._clauses)

    @property
    def nogoods(self) -> tuple[Env, ...]:
        """The minimized nogood set, canonically ordered."""
        return tuple(sorted(self._nogoods, key=self.env_key))

    def label_of(self, literal: str) -> tuple[Env, ...]:
        """The current minimal consistent label of a literal.

        ``({},)`` for premises, ``()`` for underivable literals.
        """
        if literal not in self._labels:
            raise UnknownLiteralError(f"unknown literal: {literal!r}")
        return tuple(sorted(self._labels[literal], key=self.env_key))

    def env_key(self, env: Env) -> tuple[int, ...]:
        """Canonical sort key of an environment: assumption declaration indexes."""
        return tuple(sorted(self._assumption_index[a] for a in env))

    def format_env(self, env: Env) -> str:
        members = sorted(env, key=self._assumption_index.__getitem__)
        return "{" + ",".join(members) + "}"

    # -- mutations -------------------------------------------------------

    def add_assumption(self, name: str) -> None:
        """Declare a weight-bearing primitive literal."""
        _check_name(name)
        if name.startswith("!"):
            raise AtmsError(f"assumptions must be positive literals: {name!r}")
        if name in self._labels:
            raise DuplicateNameError(
                f"{name!r} is already declared as an "
                f"{'assumption' if name in self._assumption_index else 'ordinary literal'}"
            )
        self._assumption_index[name] = len(self._assumption_index)
        self._register(name)
        self._merge_label(name, filter_consistent([frozenset({name})], self._nogoods))

    def add_premise(self, literal: str) -> None:
        """Declare a literal that holds unconditionally (label ``{{}}``)."""
        _check_name(literal)
        if literal in self._assumption_index:
            raise AtmsError(f"assumption {literal!r} cannot be a premise")
        self._add_clause(frozenset(), literal)

    def add_justification(self, antecedents: Iterable[str], consequent: Consequent) -> None:
        """Add a Horn clause: the conjunction of antecedents implies the consequent.

        The consequent may be ``CONTRADICTION``, in which case derivable
        antecedent environments become nogoods.
        """
        ants = frozenset(antecedents)
        if not ants:
            raise AtmsError("a justification needs antecedents; use add_premise")
        for a in ants:
            _check_name(a)
        if isinstance(consequent, str):
            _check_name(consequent)
            if consequent in self._assumption_index:
                raise AtmsError(f"assumption {consequent!r} cannot be justified")
            # Horn form: a literal together with its complement can never
            # fire, so reject it outright.  Contradiction clauses are the
            # one sanctioned way to relate the two polarities of a name.
            for a in ants:
                if complement(a) in ants:
                    raise AtmsError(
                        f"antecedents contain the complementary pair "
                        f"{a!r} / {complement(a)!r}"
                    )
        elif consequent is not CONTRADICTION:
            raise AtmsError(f"invalid consequent: {consequent!r}")
        self._add_clause(ants, consequent)

    def record_contradiction(self, first: str, second: str) -> None:
        """Declare two existing literals jointly contradictory."""
        for lit in (first, second):
            if lit not in self._labels:
                raise UnknownLiteralError(f"unknown literal: {lit!r}")
        self._add_clause(frozenset({first, second}), CONTRADICTION)

    # -- debugging -------------------------------------------------------

    def recomputed_state(self) -> tuple[dict[str, tuple[Env, ...]], tuple[Env, ...]]:
        """Labels and nogoods recomputed from scratch, non-incrementally.

        Debug mode: iterates all clauses to a fixpoint instead of using
        the live worklist state.  Must agree with the incremental result.
        """
        labels: dict[str, set[Env]] = {name: set() for name in self._labels}
        nogoods: list[Env] = []
        for name in self._assumption_index:
            labels[name].add(frozenset({name}))
        changed = True
        while changed:
            changed = False
            for ants, consequent in self._clauses:
                envs = combine_antecedent_labels(
                    [tuple(labels[a]) for a in sorted(ants)], nogoods=nogoods
                )
                if consequent is CONTRADICTION:
                    fresh = [
                        e for e in envs if not any(ng <= e for ng in nogoods)
                    ]
                    if fresh:
                        nogoods = list(minimize([*nogoods, *fresh]))
                        for label in labels.values():
                            for env in [
                                e for e in label if any(ng <= e for ng in fresh)
                            ]:
                                label.discard(env)
                        changed = True
                else:
                    label = labels[consequent]
                    for env in envs:
                        if any(old <= env for old in label):
                            continue
                        for stale in [old for old in label if env < old]:
                            label.discard(stale)
                        label.add(env)
                        changed = True
        out = {
            name: tuple(sorted(label, key=self.env_key))
            for name, label in labels.items()
        }
        return out, tuple(sorted(nogoods, key=self.env_key))

    # -- internals -------------------------------------------------------

    def _register(self, name: str) -> None:
        if name not in self._labels:
            self._node_order[name] = len(self._node_order)
            self._labels[name] = set()

    def _add_clause(self, ants: frozenset[str], consequent: Consequent) -> None:
        for a in ants:
            self._register(a)
        if isinstance(consequent, str):
            self._register(consequent)
        index = len(self._clauses)
        self._clauses.append((ants, consequent))
        for a in ants:
            self._consumers.setdefault(a, []).append(index)
        self._fire(deque([index]))

    def _merge_label(self, name: str, envs: Iterable[Env]) -> bool:
        label = self._labels[name]
        changed = False
        for env in envs:
            if any(old <= env for old in label):
                continue
            for stale in [old for old in label if env < old]:
                label.discard(stale)
            label.add(env)
            changed = True
        return changed

    def _fire(self, pending: deque[int]) -> None:
        while pending:
            index = pending.popleft()
            ants, consequent = self._clauses[index]
            envs = combine_antecedent_labels(
                [tuple(self._labels[a]) for a in sorted(ants)],
                nogoods=self._nogoods,
            )
            if consequent is CONTRADICTION:
                fresh = [
                    e for e in envs if not any(ng <= e for ng in self._nogoods)
                ]
                if fresh:
                    self._absorb_nogoods(fresh)
            else:
                if self._merge_label(consequent, envs):
                    pending.extend(self._consumers.get(consequent, ()))

    def _absorb_nogoods(self, fresh: list[Env]) -> None:
        self._nogoods = list(minimize([*self._nogoods, *fresh]))
        # A label environment that dies here can only feed downstream
        # environments that are supersets of the same nogood, so one
        # filtering pass over every label restores consistency; no
        # re-propagation is needed.
        for label in self._labels.values():
            for env in [e for e in label if any(ng <= e for ng in fresh)]:
                label.discard(env)
