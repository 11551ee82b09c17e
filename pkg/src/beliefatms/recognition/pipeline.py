"""Scene analysis: grow weighted part hypotheses and rank interpretations.

Seed rectangles start the growth.  From each hypothesis the attachment
tree is walked in both directions: every overlapping rectangle is tested
against the attachment's filter bank, and each pass creates a fresh
weighted assumption plus a Horn clause

    assumption  AND  parent-hypothesis  =>  child-hypothesis

in the truth-maintenance engine.  Mutual-exclusion contradictions keep a
rectangle from carrying two parts and a part from sitting on two
rectangles.  Interpretations are the maximal consistent hypothesis sets,
scored by the conditioned belief of their combined support.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from ..atms import Engine, Env, combine_antecedent_labels
from ..belief import conditioned_belief
from .geometry import TWO_PI, Rectangle, Scene, overlap_area
from .model import Band, FilterSpec, PuppetModel, WeightConfig

__all__ = [
    "PartHypothesis",
    "Interpretation",
    "SceneAnalysis",
    "filter_value",
    "eval_filter",
    "hypothesis_weight",
    "find_seeds",
    "build_clauses",
    "interpret",
    "rank_interpretations",
]

# Overlaps this small are boundary contacts, not evidence.
MIN_OVERLAP_AREA = 1e-9


class PartHypothesis(NamedTuple):
    rect_id: str
    part: str

    @property
    def node_id(self) -> str:
        return f"{self.rect_id}:{self.part}"


def filter_value(spec: FilterSpec, parent: Rectangle, child: Rectangle) -> float:
    """The geometric scalar a filter classifies."""
    if spec.kind == "angle-of-overlap":
        return (child.angle - parent.angle) % TWO_PI
    if spec.kind == "relative-area":
        return child.area() / parent.area()
    if spec.kind == "relative-overlap-area":
        denominator = child.area() if spec.relative_to == "child" else parent.area()
        return overlap_area(parent, child) / denominator
    if spec.kind == "axial-ratio":
        return child.aspect_ratio()
    raise ValueError(f"unknown filter kind {spec.kind!r}")


def eval_filter(spec: FilterSpec, parent: Rectangle, child: Rectangle) -> Band:
    """Classify a (parent, child) pair into High, Low or Fail."""
    return spec.classify(filter_value(spec, parent, child))


def hypothesis_weight(bands: Iterable[Band], cfg: WeightConfig) -> float:
    """Weight of a hypothesis from its filter bands.

    The per-band probabilities multiply and are normalized by
    p_high ** band-count, so an all-high pattern weighs exactly 1.
    Computed in exact rational arithmetic and rounded once.
    """
    bands = tuple(bands)
    if not bands:
        raise ValueError("a hypothesis needs at least one filter band")
    if any(b is Band.FAIL for b in bands):
        raise ValueError("failed bands kill the hypothesis before weighting")
    p_high = Fraction(cfg.p_high)
    p_low = Fraction(cfg.p_low)
    product = Fraction(1)
    for band in bands:
        product *= p_high if band is Band.HIGH else p_low
    return float(product / p_high ** len(bands))


# -- seeding -----------------------------------------------------------------


def _passes_seed_rule(rule, rect: Rectangle, scene: Scene) -> bool:
    others = [
        r
        for r in scene
        if r.id != rect.id and overlap_area(rect, r) > MIN_OVERLAP_AREA
    ]
    if rule.rule == "min-smaller-overlaps":
        smaller = [r for r in others if r.area() < rect.area()]
        return len(smaller) >= rule.count
    if rule.rule == "single-larger-overlap":
        if len(others) != 1 or others[0].area() <= rect.area():
            return False
        if rule.area_ratio is not None:
            lo, hi = rule.area_ratio
            ratio = rect.area() / others[0].area()
            return lo <= ratio <= hi
        return True
    raise ValueError(f"unknown seed rule {rule.rule!r}")


def find_seeds(scene: Scene, model: PuppetModel) -> list[PartHypothesis]:
    """Rectangles passing a seed rule, as initial part hypotheses."""
    seeds = []
    for rule in model.seeds:
        for rect in scene:
            if _passes_seed_rule(rule, rect, scene):
                seeds.append(PartHypothesis(rect.id, rule.part))
    return seeds


# -- clause generation --------------------------------------------------------


@dataclass
class SceneAnalysis:
    """A populated engine plus the bookkeeping around it."""

    scene: Scene
    model: PuppetModel
    engine: Engine
    masses: dict[str, float]
    hypotheses: dict[str, list[PartHypothesis]]  # part -> hypotheses, creation order
    assumption_origin: dict[str, str]


def build_clauses(scene: Scene, model: PuppetModel) -> SceneAnalysis:
    """Grow hypotheses from the seeds and populate the engine."""
    engine = Engine()
    masses: dict[str, float] = {}
    origins: dict[str, str] = {}
    by_part: dict[str, list[PartHypothesis]] = {p: [] for p in model.parts}
    known: dict[str, PartHypothesis] = {}

    def new_assumption(weight: float, origin: str) -> str:
        name = f"A{len(masses) + 1}"
        engine.add_assumption(name)
        masses[name] = weight
        origins[name] = origin
        return name

    def register(h: PartHypothesis) -> bool:
        if h.node_id in known:
            return False
        known[h.node_id] = h
        by_part[h.part].append(h)
        return True

    queue: list[PartHypothesis] = []
    for seed in find_seeds(scene, model):
        assumption = new_assumption(1.0, f"seed {seed.node_id}")
        engine.add_justification([assumption], seed.node_id)
        if register(seed):
            queue.append(seed)

    proposed: set[tuple[str, str]] = set()
    cursor = 0
    while cursor < len(queue):
        hyp = queue[cursor]
        cursor += 1
        rect = scene.by_id(hyp.rect_id)
        for attachment in model.incident_edges(hyp.part):
            other_part = (
                attachment.child if hyp.part == attachment.parent else attachment.parent
            )
            for candidate in scene:
                if candidate.id == rect.id:
                    continue
                if overlap_area(rect, candidate) <= MIN_OVERLAP_AREA:
                    continue
                target = PartHypothesis(candidate.id, other_part)
                key = (hyp.node_id, target.node_id)
                if key in proposed:
                    continue
                proposed.add(key)
                # Filter roles follow the attachment's declared direction,
                # not the direction the growth happens to arrive from.
                if hyp.part == attachment.parent:
                    parent_rect, child_rect = rect, candidate
                else:
                    parent_rect, child_rect = candidate, rect
                bands = [
                    eval_filter(f, parent_rect, child_rect) for f in attachment.filters
                ]
                if any(b is Band.FAIL for b in bands):
                    continue
                weight = (
                    hypothesis_weight(bands, model.weights) if bands else 1.0
                )
                assumption = new_assumption(
                    weight, f"{hyp.node_id} -> {target.node_id}"
                )
                engine.add_justification(
                    [assumption, hyp.node_id], target.node_id
                )
                if register(target):
                    queue.append(target)

    # Mutual exclusion: a rectangle carries at most one part, a part sits
    # on at most one rectangle.
    all_hyps = list(known.values())
    for i, first in enumerate(all_hyps):
        for second in all_hyps[i + 1 :]:
            if (first.rect_id == second.rect_id) != (first.part == second.part):
                engine.record_contradiction(first.node_id, second.node_id)

    return SceneAnalysis(
        scene=scene,
        model=model,
        engine=engine,
        masses=masses,
        hypotheses=by_part,
        assumption_origin=origins,
    )


# -- interpretation enumeration ------------------------------------------------


@dataclass(frozen=True)
class Interpretation:
    """A maximal consistent part assignment with its belief score."""

    hypotheses: tuple[PartHypothesis, ...]
    belief: float
    complete: bool


def _combined(
    label: tuple[Env, ...], other: tuple[Env, ...], nogoods
) -> tuple[Env, ...]:
    return combine_antecedent_labels([label, other], nogoods=nogoods)


def interpret(scene: Scene, model: PuppetModel) -> list[Interpretation]:
    """Analyze a scene and return belief-ranked interpretations."""
    return rank_interpretations(build_clauses(scene, model))


def rank_interpretations(analysis: SceneAnalysis) -> list[Interpretation]:
    """Enumerate maximal consistent hypothesis sets and rank them.

    Candidates are the hypotheses with nonempty labels.  A partial
    assignment is consistent while its combined support survives the
    nogood filter; exploration of a skipped candidate stops early when
    no later candidate can conflict with it, which is exact as long as
    conflicts are pairwise-witnessed (true for the mutual-exclusion
    nogoods this pipeline generates).  Results are capped at the model's
    interpretation limit, deterministically.
    """
    engine = analysis.engine
    masses = analysis.masses
    nogoods = engine.nogoods
    model = analysis.model

    parts = [p for p in model.parts if analysis.hypotheses.get(p)]
    candidates: dict[str, list[tuple[PartHypothesis, tuple[Env, ...]]]] = {}
    for part in parts:
        live = []
        for hyp in analysis.hypotheses[part]:
            label = engine.label_of(hyp.node_id)
            if label:
                live.append((hyp, label))
        if live:
            candidates[part] = live
    parts = [p for p in parts if p in candidates]
    if not parts:
        return []

    def conflicts(a: PartHypothesis, la, b: PartHypothesis, lb) -> bool:
        if a.rect_id == b.rect_id or a.part == b.part:
            return True
        return not _combined(la, lb, nogoods)

    later_candidates: dict[int, list[tuple[PartHypothesis, tuple[Env, ...]]]] = {}
    for i in range(len(parts)):
        later: list[tuple[PartHypothesis, tuple[Env, ...]]] = []
        for p in parts[i + 1 :]:
            later.extend(candidates[p])
        later_candidates[i] = later

    limit = model.max_interpretations
    found: list[tuple[tuple[PartHypothesis, ...], tuple[Env, ...]]] = []

    def extend(index, chosen, used_rects, support, pending):
        if len(found) >= limit:
            return
        if index == len(parts):
            if not chosen:
                return
            for hyp, label in pending:
                if hyp.rect_id in used_rects:
                    continue
                if _combined(support, label, nogoods):
                    return  # extensible, hence not maximal
            found.append((tuple(chosen), support))
            return
        part = parts[index]
        viable = []
        for hyp, label in candidates[part]:
            if hyp.rect_id in used_rects:
                continue
            merged = _combined(support, label, nogoods)
            if merged:
                viable.append((hyp, label, merged))
        for hyp, label, merged in viable:
            extend(
                index + 1,
                chosen + [hyp],
                used_rects | {hyp.rect_id},
                merged,
                pending,
            )
        # Skip this part.  Skipped-but-viable candidates must die later
        # for the leaf to be maximal; if one of them cannot conflict with
        # anything yet to come, no maximal set lives down this branch.
        for hyp, label, _ in viable:
            if not any(
                conflicts(hyp, label, other, other_label)
                for other, other_label in later_candidates[index]
            ):
                return
        extend(
            index + 1,
            chosen,
            used_rects,
            support,
            pending + [(h, l) for h, l, _ in viable],
        )

    extend(0, [], frozenset(), (frozenset(),), [])

    results = []
    for chosen, support in found:
        belief = conditioned_belief(support, nogoods, masses)
        results.append(
            Interpretation(
                hypotheses=tuple(sorted(chosen, key=lambda h: (h.rect_id, h.part))),
                belief=belief,
                complete=len(chosen) == len(model.parts),
            )
        )
    results.sort(
        key=lambda r: (-r.belief, -len(r.hypotheses), r.hypotheses)
    )
    return results
