"""Numeric Dempster-Shafer layer over engine labels.

Assumptions carry independent masses in [0, 1].  The belief of a label is
the probability that at least one of its environments is fully true,
which is a network-reliability computation delegated to
:mod:`beliefatms.reliability`.  Conditioning on the nogood set discounts
the contradictory share of the mass.

Two additional tools live here:

* :func:`brute_force_belief` — an exhaustive world-enumeration oracle for
  the label/reliability pipeline, independent of the label machinery;
* :class:`FrameMass` with :func:`ds_combine` / :func:`frame_belief` — an
  explicit mass function over subsets of a small frame of discernment,
  combined by intersection-and-renormalize.
"""

from __future__ import annotations

from array import array
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .atms import CONTRADICTION, Engine, Env, UnknownLiteralError, minimize
from .reliability import Dnf, to_disjoint

__all__ = [
    "TotalConflictError",
    "MissingMassError",
    "env_mass",
    "belief_of_label",
    "conditioned_belief",
    "brute_force_belief",
    "FrameMass",
    "ds_combine",
    "frame_belief",
]

MAX_ORACLE_ASSUMPTIONS = 24

MASS_TOLERANCE = 1e-9


class TotalConflictError(Exception):
    """All mass is contradictory; the evidence cannot be combined."""


class MissingMassError(Exception):
    """An assumption referenced by a label has no mass entry."""


def _mass_of(masses: Mapping[str, float], assumption: str) -> float:
    try:
        value = float(masses[assumption])
    except KeyError:
        raise MissingMassError(
            f"no mass assigned to assumption {assumption!r}"
        ) from None
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"mass of {assumption!r} is {value}, outside [0, 1]")
    return value


def _clamp(value: float) -> float:
    return min(1.0, max(0.0, value))


def env_mass(env: Iterable[str], masses: Mapping[str, float]) -> float:
    """Product of the member masses of an environment (1.0 when empty)."""
    out = 1.0
    for assumption in sorted(env):
        out *= _mass_of(masses, assumption)
    return out


def belief_of_label(label: Iterable[Env], masses: Mapping[str, float]) -> float:
    """Probability that at least one environment of the label holds.

    Assumptions are independent with their assigned masses.  The empty
    label evaluates to 0; a label containing the empty environment to 1.
    Evaluation goes through the sum-of-disjoint-products rewriting.
    """
    envs = minimize(label)
    if not envs:
        return 0.0
    universe = sorted({a for e in envs for a in e})
    p = {a: _mass_of(masses, a) for a in universe}
    d = Dnf(envs, universe)
    return _clamp(to_disjoint(d).evaluate(p))


def conditioned_belief(
    label: Iterable[Env],
    nogoods: Iterable[Env],
    masses: Mapping[str, float],
) -> float:
    """Belief of a label conditioned on avoiding every nogood.

    Computes ``(Bel[L or N] - Bel[N]) / (1 - Bel[N])`` where ``N`` is the
    nogood set evaluated as a label.  Raises :class:`TotalConflictError`
    when the nogoods carry all the mass.
    """
    label = tuple(label)
    nogoods = tuple(nogoods)
    bel_nogood = belief_of_label(nogoods, masses)
    if bel_nogood >= 1.0:
        raise TotalConflictError("nogoods have belief 1; evidence is not combinable")
    if not nogoods:
        return belief_of_label(label, masses)
    bel_union = belief_of_label(minimize([*label, *nogoods]), masses)
    return _clamp((bel_union - bel_nogood) / (1.0 - bel_nogood))


# -- exhaustive oracle ----------------------------------------------------


def brute_force_belief(
    engine: Engine,
    masses: Mapping[str, float],
    literal: str,
    conditioned: bool = False,
) -> float:
    """Belief of a literal by enumerating every assumption world.

    Forward-chains the declared Horn clauses in each of the 2^n truth
    assignments to the assumptions and sums the assignment weights
    (product of mass / one-minus-mass per assumption):

    * conditioned: weight of non-contradictory worlds deriving the
      literal, divided by the weight of all non-contradictory worlds;
    * unconditioned: weight of worlds in which the literal is derivable
      from some non-contradictory subset of the world's assumptions,
      which is the world-level meaning of a consistency-filtered label.

    Exponential in the assumption count; meant as an independent check
    of the label/reliability pipeline, not for production evaluation.
    """
    names = engine.assumptions()
    n = len(names)
    if n > MAX_ORACLE_ASSUMPTIONS:
        raise ValueError(
            f"{n} assumptions exceed the enumeration limit of {MAX_ORACLE_ASSUMPTIONS}"
        )
    if not engine.has_node(literal):
        raise UnknownLiteralError(f"unknown literal: {literal!r}")

    bit = {name: i for i, name in enumerate(names)}
    node_bit = dict(bit)
    for name in engine.literals():
        node_bit.setdefault(name, len(node_bit))
    contra_bit = len(node_bit)

    clauses = []
    for ants, consequent in engine.clauses():
        ant_mask = 0
        for a in ants:
            ant_mask |= 1 << node_bit[a]
        cons = contra_bit if consequent is CONTRADICTION else node_bit[consequent]
        clauses.append((ant_mask, 1 << cons))

    def close(state: int) -> int:
        changed = True
        while changed:
            changed = False
            for ant_mask, cons in clauses:
                if state & ant_mask == ant_mask and not state & cons:
                    state |= cons
                    changed = True
        return state

    worlds = 1 << n
    closures = [0] * worlds
    closures[0] = close(0)
    for world in range(1, worlds):
        # Warm-start from the closure of the world minus its lowest
        # assumption: closures are monotone in the assumption set.
        closures[world] = close(closures[world & (world - 1)] | world)

    weights = array("d", [1.0])
    for name in names:
        p = _mass_of(masses, name)
        weights = array("d", [w * (1.0 - p) for w in weights]) + array(
            "d", [w * p for w in weights]
        )

    lit_mask = 1 << node_bit[literal]
    contra_mask = 1 << contra_bit

    if conditioned:
        numerator = 0.0
        denominator = 0.0
        for world in range(worlds):
            state = closures[world]
            if state & contra_mask:
                continue
            denominator += weights[world]
            if state & lit_mask:
                numerator += weights[world]
        if denominator <= 0.0:
            raise TotalConflictError(
                "every assumption world is contradictory; evidence is not combinable"
            )
        return _clamp(numerator / denominator)

    good = bytearray(worlds)
    total = 0.0
    for world in range(worlds):
        state = closures[world]
        derivable = bool(state & lit_mask) and not state & contra_mask
        if not derivable:
            rest = world
            while rest:
                low = rest & -rest
                if good[world ^ low]:
                    derivable = True
                    break
                rest ^= low
        if derivable:
            good[world] = 1
            total += weights[world]
    return _clamp(total)


# -- frame-level mass functions -------------------------------------------


def _subset_key(subset: frozenset[int]) -> tuple[int, tuple[int, ...]]:
    return (len(subset), tuple(sorted(subset)))


@dataclass(frozen=True)
class FrameMass:
    """A mass function over explicit subsets of a small frame of discernment.

    The frame is ``{0, ..., frame_size - 1}``.  Masses are kept on the
    focal (nonzero) subsets only; they must be nonnegative, sum to 1
    within 1e-9, and leave the empty subset at zero.
    """

    frame_size: int
    masses: dict[frozenset[int], float] = field(compare=True)

    def __init__(self, frame_size: int, masses: Mapping[Iterable[int], float]):
        if frame_size < 1:
            raise ValueError("frame must contain at least one proposition")
        frame = frozenset(range(frame_size))
        focal: dict[frozenset[int], float] = {}
        for subset, value in masses.items():
            subset = frozenset(subset)
            if not subset <= frame:
                raise ValueError(f"subset {sorted(subset)} is outside the frame")
            value = float(value)
            if value < 0.0:
                raise ValueError(f"negative mass {value} on {sorted(subset)}")
            if not subset:
                if value > MASS_TOLERANCE:
                    raise ValueError("the empty subset must carry zero mass")
                continue
            if value > 0.0:
                focal[subset] = focal.get(subset, 0.0) + value
        total = sum(focal[s] for s in sorted(focal, key=_subset_key))
        if abs(total - 1.0) > MASS_TOLERANCE:
            raise ValueError(f"masses sum to {total}, not 1")
        object.__setattr__(self, "frame_size", frame_size)
        object.__setattr__(self, "masses", focal)

    @classmethod
    def vacuous(cls, frame_size: int) -> "FrameMass":
        """All mass on the full frame: total ignorance."""
        return cls(frame_size, {frozenset(range(frame_size)): 1.0})

    def focal(self) -> tuple[tuple[frozenset[int], float], ...]:
        """Focal subsets with their masses, in canonical order."""
        return tuple((s, self.masses[s]) for s in sorted(self.masses, key=_subset_key))


def ds_combine(m1: FrameMass, m2: FrameMass) -> FrameMass:
    """Combine two mass functions by intersecting focal subsets.

    Products landing on the empty intersection form the conflict; the
    rest is renormalized by one minus the conflict.  Total conflict
    raises :class:`TotalConflictError`.
    """
    if m1.frame_size != m2.frame_size:
        raise ValueError("mass functions are over different frames")
    combined: dict[frozenset[int], float] = {}
    conflict = 0.0
    for s1, v1 in m1.focal():
        for s2, v2 in m2.focal():
            inter = s1 & s2
            if inter:
                combined[inter] = combined.get(inter, 0.0) + v1 * v2
            else:
                conflict += v1 * v2
    if conflict >= 1.0:
        raise TotalConflictError("total conflict; evidence is not combinable")
    scale = 1.0 - conflict
    return FrameMass(
        m1.frame_size, {s: v / scale for s, v in combined.items()}
    )


def frame_belief(m: FrameMass, subset: Iterable[int]) -> float:
    """Belief in a subset: total mass of nonempty focal subsets inside it."""
    subset = frozenset(subset)
    if not subset <= frozenset(range(m.frame_size)):
        raise ValueError(f"subset {sorted(subset)} is outside the frame")
    return _clamp(sum(v for s, v in m.focal() if s <= subset))
