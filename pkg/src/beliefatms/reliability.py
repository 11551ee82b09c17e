"""Probability that a monotone DNF over independent Boolean variables holds.

This is the classical network-reliability computation: each DNF term is a
"path set" of components that must all work, the variables carry
independent working probabilities, and we want the probability that at
least one term is fully satisfied.

Three evaluators are provided:

* :func:`prob_enum` — exact enumeration of all assignments (the oracle,
  exponential in the variable count);
* :func:`prob_inclusion_exclusion` — inclusion-exclusion over term
  subsets (exponential in the term count);
* :func:`to_disjoint` — Abraham-style rewriting into a sum of disjoint
  products, after which the probability is a plain sum.  This is the
  default route used by the belief layer.
"""

from __future__ import annotations

from array import array
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from itertools import combinations

from .atms import Env, minimize

__all__ = [
    "Dnf",
    "DisjointDnf",
    "prob_enum",
    "prob_inclusion_exclusion",
    "to_disjoint",
]

MAX_ENUM_VARIABLES = 24
DEFAULT_MAX_IE_TERMS = 20


@dataclass(frozen=True)
class Dnf:
    """A monotone DNF: a set of positive-conjunction terms over a variable universe.

    Terms are subsumption-minimized on construction and ordered by size,
    then lexicographically in universe order, so downstream evaluation is
    deterministic.
    """

    terms: tuple[Env, ...]
    universe: tuple[str, ...]

    def __init__(self, terms: Iterable[Iterable[str]], universe: Iterable[str] | None = None):
        terms = [frozenset(t) for t in terms]
        if universe is None:
            universe = sorted({v for t in terms for v in t})
        universe = tuple(universe)
        if len(set(universe)) != len(universe):
            raise ValueError("universe contains duplicate variables")
        index = {v: i for i, v in enumerate(universe)}
        for t in terms:
            missing = t - index.keys()
            if missing:
                raise ValueError(f"term variables not in universe: {sorted(missing)}")
        ordered = sorted(
            minimize(terms),
            key=lambda t: (len(t), tuple(sorted(index[v] for v in t))),
        )
        object.__setattr__(self, "terms", tuple(ordered))
        object.__setattr__(self, "universe", universe)


@dataclass(frozen=True)
class DisjointDnf:
    """A DNF whose terms are pairwise inconsistent.

    Each term is a pair ``(positive, negated)`` of variable sets; any two
    terms conflict on at least one variable, so the total probability is
    the sum of the per-term probabilities.
    """

    terms: tuple[tuple[Env, Env], ...]
    universe: tuple[str, ...]

    def evaluate(self, p: Mapping[str, float]) -> float:
        total = 0.0
        for pos, neg in self.terms:
            weight = 1.0
            for v in sorted(pos):
                weight *= p[v]
            for v in sorted(neg):
                weight *= 1.0 - p[v]
            total += weight
        return total


def _term_masks(d: Dnf) -> list[int]:
    index = {v: i for i, v in enumerate(d.universe)}
    return [sum(1 << index[v] for v in t) for t in d.terms]


def prob_enum(d: Dnf, p: Mapping[str, float]) -> float:
    """Exact DNF probability by summing the weights of satisfying assignments."""
    n = len(d.universe)
    if n > MAX_ENUM_VARIABLES:
        raise ValueError(
            f"universe of {n} variables is too large to enumerate "
            f"(limit {MAX_ENUM_VARIABLES})"
        )
    if not d.terms:
        return 0.0
    masks = _term_masks(d)
    weights = array("d", [1.0])
    for v in d.universe:
        pv = float(p[v])
        weights = array("d", [w * (1.0 - pv) for w in weights]) + array(
            "d", [w * pv for w in weights]
        )
    total = 0.0
    for world in range(1 << n):
        for mask in masks:
            if mask & ~world == 0:
                total += weights[world]
                break
    return total


def prob_inclusion_exclusion(
    d: Dnf, p: Mapping[str, float], max_terms: int = DEFAULT_MAX_IE_TERMS
) -> float:
    """DNF probability by inclusion-exclusion over term subsets.

    Cost grows as 2^terms; beyond ``max_terms`` the call is rejected and
    the sum-of-disjoint-products evaluation should be used instead.
    """
    k = len(d.terms)
    if k > max_terms:
        raise ValueError(
            f"{k} terms exceed the inclusion-exclusion bound of {max_terms}; "
            "use to_disjoint() instead"
        )
    total = 0.0
    for size in range(1, k + 1):
        sign = 1.0 if size % 2 else -1.0
        for chosen in combinations(d.terms, size):
            union: frozenset[str] = frozenset().union(*chosen)
            weight = 1.0
            for v in sorted(union):
                weight *= p[v]
            total += sign * weight
    return total


def to_disjoint(d: Dnf) -> DisjointDnf:
    """Rewrite a monotone DNF as a sum of disjoint products.

    Abraham's expansion: terms are visited in the Dnf's canonical order
    and each is AND-ed with complements of just enough variables from
    the earlier terms to make all products pairwise inconsistent.
    """
    index = {v: i for i, v in enumerate(d.universe)}
    out: list[tuple[Env, Env]] = []
    done: list[Env] = []
    for term in d.terms:
        products: list[tuple[Env, Env]] = [(term, frozenset())]
        for prev in done:
            expanded: list[tuple[Env, Env]] = []
            for pos, neg in products:
                if prev <= pos:
                    # The product implies the earlier term: impossible
                    # together with its complement, drop it.
                    continue
                if prev & neg:
                    expanded.append((pos, neg))
                    continue
                missing = sorted(prev - pos, key=index.__getitem__)
                grown = pos
                for var in missing:
                    expanded.append((grown, neg | {var}))
                    grown = grown | {var}
            products = expanded
        out.extend(products)
        done.append(term)
    return DisjointDnf(tuple(out), d.universe)
