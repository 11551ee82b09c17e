"""Figure models: parts, attachment tree, geometric filters and weights.

A figure is described by a part list, an attachment tree rooted at a
trunk part, and per-attachment filter specs.  Each filter classifies a
geometric scalar (overlap angle, area ratio, overlap ratio, elongation)
into a high- or low-probability acceptance band, or rejects it outright;
the band pattern of an attachment then determines the weight of the
assumption backing the part hypothesis.

Models and scenes load from JSON (see :func:`load_model` /
:func:`load_scene`); :func:`default_puppet_model` is the canonical
15-part puppet used by the demo fixtures.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .geometry import Rectangle, Scene, TWO_PI

__all__ = [
    "Band",
    "FilterSpec",
    "WeightConfig",
    "SeedRule",
    "Attachment",
    "PuppetModel",
    "FormatError",
    "load_scene",
    "load_model",
    "default_puppet_model",
    "thigh_filter_defaults",
]

FILTER_KINDS = (
    "angle-of-overlap",
    "relative-area",
    "relative-overlap-area",
    "axial-ratio",
)

Interval = tuple[float, float]


class FormatError(Exception):
    """A scene or model file does not match the expected schema."""


class Band(enum.Enum):
    HIGH = "high"
    LOW = "low"
    FAIL = "fail"


def _in_wrapped(value: float, interval: Interval) -> bool:
    # Angle intervals wrap modulo 2*pi: (lo, hi) with hi "behind" lo
    # denotes the arc running from lo through 2*pi to hi.
    lo, hi = interval
    span = (hi - lo) % TWO_PI
    if span == 0.0 and hi != lo:
        return True  # full circle
    return (value - lo) % TWO_PI <= span


@dataclass(frozen=True)
class FilterSpec:
    """A banded geometric test on a (parent, child) rectangle pair.

    ``high`` and ``low`` are interval lists; their union is the total
    acceptable range, anything outside fails.  When a value sits on a
    shared endpoint the high band wins.  For ``relative-overlap-area``,
    ``relative_to`` picks the denominator rectangle.
    """

    kind: str
    high: tuple[Interval, ...]
    low: tuple[Interval, ...]
    relative_to: str = "child"

    def __post_init__(self) -> None:
        if self.kind not in FILTER_KINDS:
            raise ValueError(f"unknown filter kind {self.kind!r}")
        if self.relative_to not in ("child", "parent"):
            raise ValueError(f"relative_to must be 'child' or 'parent'")
        object.__setattr__(self, "high", tuple(tuple(i) for i in self.high))
        object.__setattr__(self, "low", tuple(tuple(i) for i in self.low))
        if not self.high and not self.low:
            raise ValueError("a filter needs at least one acceptance interval")
        if self.kind != "angle-of-overlap":
            for lo, hi in self.acceptable:
                if lo > hi:
                    raise ValueError(f"interval [{lo}, {hi}] is reversed")

    @property
    def acceptable(self) -> tuple[Interval, ...]:
        return self.high + self.low

    def classify(self, value: float) -> Band:
        if self.kind == "angle-of-overlap":
            value = value % TWO_PI
            member = _in_wrapped
        else:
            member = lambda v, iv: iv[0] <= v <= iv[1]  # noqa: E731
        if any(member(value, iv) for iv in self.high):
            return Band.HIGH
        if any(member(value, iv) for iv in self.low):
            return Band.LOW
        return Band.FAIL


@dataclass(frozen=True)
class WeightConfig:
    """Probabilities attached to high- and low-acceptance bands."""

    p_high: float = 0.8
    p_low: float = 0.5

    def __post_init__(self) -> None:
        if not 0.0 < self.p_low <= self.p_high <= 1.0:
            raise ValueError("weights need 0 < p_low <= p_high <= 1")


@dataclass(frozen=True)
class SeedRule:
    """A unary test admitting rectangles as starting hypotheses.

    * ``min-smaller-overlaps``: the rectangle overlaps at least ``count``
      strictly smaller rectangles (the trunk heuristic);
    * ``single-larger-overlap``: the rectangle overlaps exactly one other
      rectangle, which is larger, optionally with the area ratio
      (self / other) inside ``area_ratio`` (the head heuristic).
    """

    part: str
    rule: str
    count: int | None = None
    area_ratio: Interval | None = None

    def __post_init__(self) -> None:
        if self.rule not in ("min-smaller-overlaps", "single-larger-overlap"):
            raise ValueError(f"unknown seed rule {self.rule!r}")
        if self.rule == "min-smaller-overlaps" and (self.count is None or self.count < 1):
            raise ValueError("min-smaller-overlaps needs a positive count")
        if self.area_ratio is not None:
            object.__setattr__(self, "area_ratio", tuple(self.area_ratio))


@dataclass(frozen=True)
class Attachment:
    parent: str
    child: str
    filters: tuple[FilterSpec, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "filters", tuple(self.filters))


@dataclass(frozen=True)
class PuppetModel:
    """A figure model: parts, attachment tree, seed rules and weights."""

    parts: tuple[str, ...]
    attachments: tuple[Attachment, ...]
    seeds: tuple[SeedRule, ...]
    weights: WeightConfig = field(default_factory=WeightConfig)
    max_interpretations: int = 1000

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))
        object.__setattr__(self, "attachments", tuple(self.attachments))
        object.__setattr__(self, "seeds", tuple(self.seeds))
        names = set(self.parts)
        if len(names) != len(self.parts):
            raise ValueError("part names must be unique")
        parent_of: dict[str, str] = {}
        for att in self.attachments:
            for p in (att.parent, att.child):
                if p not in names:
                    raise ValueError(f"attachment references unknown part {p!r}")
            if att.child in parent_of:
                raise ValueError(f"part {att.child!r} has two parents")
            parent_of[att.child] = att.parent
        roots = [p for p in self.parts if p not in parent_of]
        if len(self.parts) > 1 and len(roots) != 1:
            raise ValueError("the attachment graph must be a tree with one root")
        for part in parent_of:
            seen = {part}
            cursor = part
            while cursor in parent_of:
                cursor = parent_of[cursor]
                if cursor in seen:
                    raise ValueError("the attachment graph contains a cycle")
                seen.add(cursor)
        if self.max_interpretations < 1:
            raise ValueError("max_interpretations must be positive")
        seed_parts = {s.part for s in self.seeds}
        if not seed_parts:
            raise ValueError("a model needs at least one seed rule")
        if not seed_parts <= names:
            raise ValueError("seed rules reference unknown parts")

    def incident_edges(self, part: str) -> tuple[Attachment, ...]:
        """Attachments touching a part, in declaration order.

        Growth walks the tree in both directions, so an edge matters to
        its parent and its child alike.
        """
        return tuple(
            att for att in self.attachments if part in (att.parent, att.child)
        )


# -- JSON loading -----------------------------------------------------------


def _require(mapping: Any, key: str, context: str) -> Any:
    if not isinstance(mapping, dict) or key not in mapping:
        raise FormatError(f"{context}: missing {key!r}")
    return mapping[key]


def load_scene(path: str | Path) -> Scene:
    """Load a scene: a JSON array of rectangle objects."""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as err:
        raise FormatError(f"scene file is not valid JSON: {err}") from None
    if not isinstance(raw, list):
        raise FormatError("scene file must contain a JSON array of rectangles")
    rects = []
    for i, item in enumerate(raw):
        context = f"rectangle #{i}"
        try:
            rects.append(
                Rectangle(
                    id=str(_require(item, "id", context)),
                    cx=float(_require(item, "cx", context)),
                    cy=float(_require(item, "cy", context)),
                    width=float(_require(item, "w", context)),
                    height=float(_require(item, "h", context)),
                    angle=float(item.get("angle", 0.0)),
                )
            )
        except (TypeError, ValueError) as err:
            raise FormatError(f"{context}: {err}") from None
    try:
        return Scene(rects)
    except ValueError as err:
        raise FormatError(str(err)) from None


def _intervals(raw: Any, context: str) -> tuple[Interval, ...]:
    if not isinstance(raw, list):
        raise FormatError(f"{context}: expected a list of [lo, hi] pairs")
    out = []
    for pair in raw:
        if not isinstance(pair, list) or len(pair) != 2:
            raise FormatError(f"{context}: expected a list of [lo, hi] pairs")
        out.append((float(pair[0]), float(pair[1])))
    return tuple(out)


def load_model(path: str | Path) -> PuppetModel:
    """Load a figure model from its JSON description."""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as err:
        raise FormatError(f"model file is not valid JSON: {err}") from None
    try:
        parts = tuple(str(p) for p in _require(raw, "parts", "model"))
        seeds = []
        for i, s in enumerate(_require(raw, "seeds", "model")):
            ratio = s.get("area_ratio")
            seeds.append(
                SeedRule(
                    part=str(_require(s, "part", f"seed #{i}")),
                    rule=str(_require(s, "rule", f"seed #{i}")),
                    count=int(s["count"]) if "count" in s else None,
                    area_ratio=(float(ratio[0]), float(ratio[1])) if ratio else None,
                )
            )
        attachments = []
        for i, a in enumerate(_require(raw, "attachments", "model")):
            context = f"attachment #{i}"
            filters = []
            for j, f in enumerate(a.get("filters", [])):
                fcontext = f"{context} filter #{j}"
                filters.append(
                    FilterSpec(
                        kind=str(_require(f, "kind", fcontext)),
                        high=_intervals(_require(f, "high", fcontext), fcontext),
                        low=_intervals(_require(f, "low", fcontext), fcontext),
                        relative_to=str(f.get("relative_to", "child")),
                    )
                )
            attachments.append(
                Attachment(
                    parent=str(_require(a, "parent", context)),
                    child=str(_require(a, "child", context)),
                    filters=tuple(filters),
                )
            )
        weights_raw = raw.get("weights", {})
        weights = WeightConfig(
            p_high=float(weights_raw.get("p_high", 0.8)),
            p_low=float(weights_raw.get("p_low", 0.5)),
        )
        return PuppetModel(
            parts=parts,
            attachments=tuple(attachments),
            seeds=tuple(seeds),
            weights=weights,
            max_interpretations=int(raw.get("max_interpretations", 1000)),
        )
    except (TypeError, ValueError) as err:
        raise FormatError(f"model file: {err}") from None


# -- defaults ----------------------------------------------------------------

_PI = math.pi

# Wrap-around arcs for the overlap-angle filter.  Same-orientation
# attachments accept angles near 0; the trunk-to-right-limb attachments
# accept angles near 3*pi/2, which is how the model tells the two sides
# of the figure apart.
_ANGLE_SAME_HIGH = ((7 * _PI / 4, _PI / 4),)
_ANGLE_SAME_LOW = ((_PI / 4, 3 * _PI / 8), (13 * _PI / 8, 7 * _PI / 4))
_ANGLE_QUARTER_HIGH = ((5 * _PI / 4, 7 * _PI / 4),)
_ANGLE_QUARTER_LOW = ((9 * _PI / 8, 5 * _PI / 4), (7 * _PI / 4, 15 * _PI / 8))


def thigh_filter_defaults() -> tuple[FilterSpec, ...]:
    """The reference thigh-against-trunk filter bank.

    Angle arcs: acceptable runs from pi through 2*pi to pi/4, the high
    band is the [5*pi/4, 2*pi] arc, the rest is low.  Area ratio
    (thigh / trunk) is high in [0.25, 0.4] inside the acceptable
    [0.15, 0.6].  Overlap ratio (overlap / thigh) is high in [0.1, 0.3]
    inside [0, 0.5].  The elongation bounds are conventions of this
    implementation, not reference values.
    """
    return (
        FilterSpec(
            "angle-of-overlap",
            high=((5 * _PI / 4, TWO_PI),),
            low=((0.0, _PI / 4), (_PI, 5 * _PI / 4)),
        ),
        FilterSpec(
            "relative-area",
            high=((0.25, 0.4),),
            low=((0.15, 0.25), (0.4, 0.6)),
        ),
        FilterSpec(
            "relative-overlap-area",
            high=((0.1, 0.3),),
            low=((0.0, 0.1), (0.3, 0.5)),
            relative_to="child",
        ),
        FilterSpec(
            "axial-ratio",
            high=((2.8, 3.4),),
            low=((2.5, 2.8), (3.4, 3.7)),
        ),
    )


def trunk_overlap_ratio_default() -> FilterSpec:
    """Reference overlap ratio against the trunk area (overlap / trunk)."""
    return FilterSpec(
        "relative-overlap-area",
        high=((0.05, 0.15),),
        low=((0.0, 0.05), (0.15, 0.25)),
        relative_to="parent",
    )


def _bank(
    angle_high: tuple[Interval, ...],
    angle_low: tuple[Interval, ...],
    rel_area: tuple[tuple[Interval, ...], tuple[Interval, ...]],
    overlap: tuple[tuple[Interval, ...], tuple[Interval, ...]],
    axial: tuple[tuple[Interval, ...], tuple[Interval, ...]],
) -> tuple[FilterSpec, ...]:
    return (
        FilterSpec("angle-of-overlap", high=angle_high, low=angle_low),
        FilterSpec("relative-area", high=rel_area[0], low=rel_area[1]),
        FilterSpec(
            "relative-overlap-area", high=overlap[0], low=overlap[1],
            relative_to="child",
        ),
        FilterSpec("axial-ratio", high=axial[0], low=axial[1]),
    )


def default_puppet_model() -> PuppetModel:
    """The canonical 15-part puppet model used by the demo fixtures.

    Band placements are tuned to the bundled demo scene; real scenes
    would ship their own model file.
    """
    same = (_ANGLE_SAME_HIGH, _ANGLE_SAME_LOW)
    quarter = (_ANGLE_QUARTER_HIGH, _ANGLE_QUARTER_LOW)

    def edge(parent, child, angle, rel_area, overlap, axial):
        return Attachment(parent, child, _bank(angle[0], angle[1], rel_area, overlap, axial))

    arm_rel = (((0.105, 0.125),), ((0.095, 0.105), (0.125, 0.135)))
    arm_ovl = (((0.08, 0.13),), ((0.05, 0.08), (0.13, 0.16)))
    arm_ax = (((2.9, 3.5),), ((2.6, 2.9), (3.5, 3.8)))
    forearm_rel = (((0.78, 0.9),), ((0.7, 0.78), (0.9, 0.98)))
    forearm_ovl = (((0.015, 0.04),), ((0.008, 0.015), (0.04, 0.06)))
    forearm_ax = (((3.05, 3.6),), ((2.8, 3.05), (3.6, 3.85)))
    hand_rel = (((0.42, 0.53),), ((0.36, 0.42), (0.53, 0.6)))
    hand_ovl = (((0.04, 0.08),), ((0.02, 0.04), (0.08, 0.11)))
    hand_ax = (((1.8, 2.2),), ((1.6, 1.8), (2.2, 2.4)))
    thigh_rel = (((0.25, 0.4),), ((0.15, 0.25), (0.4, 0.6)))
    thigh_ovl = (((0.1, 0.3),), ((0.0, 0.1), (0.3, 0.5)))
    thigh_ax = (((2.8, 3.4),), ((2.5, 2.8), (3.4, 3.7)))
    calf_rel = (((0.45, 0.57),), ((0.38, 0.45), (0.57, 0.64)))
    calf_ovl = (((0.12, 0.2),), ((0.08, 0.12), (0.2, 0.26)))
    calf_ax = (((2.6, 3.1),), ((2.35, 2.6), (3.1, 3.35)))
    foot_rel = (((0.3, 0.42),), ((0.24, 0.3), (0.42, 0.5)))
    foot_ovl = (((0.12, 0.2),), ((0.08, 0.12), (0.2, 0.26)))
    foot_ax = (((1.6, 1.95),), ((1.45, 1.6), (1.95, 2.1)))

    attachments = (
        edge("trunk", "neck", same,
             (((0.08, 0.1),), ((0.07, 0.08), (0.1, 0.11))),
             (((0.28, 0.4),), ((0.22, 0.28), (0.4, 0.46))),
             (((1.1, 1.4),), ((1.0, 1.1), (1.4, 1.55)))),
        edge("neck", "head", same,
             (((0.7, 0.85),), ((0.62, 0.7), (0.85, 0.93))),
             (((0.05, 0.1),), ((0.02, 0.05), (0.1, 0.14))),
             (((1.0, 1.15),), ((1.15, 1.3),))),
        edge("trunk", "left-upper-arm", same, arm_rel, arm_ovl, arm_ax),
        edge("left-upper-arm", "left-forearm", same, forearm_rel, forearm_ovl, forearm_ax),
        edge("left-forearm", "left-hand", same, hand_rel, hand_ovl, hand_ax),
        edge("trunk", "right-upper-arm", quarter, arm_rel, arm_ovl, arm_ax),
        edge("right-upper-arm", "right-forearm", same, forearm_rel, forearm_ovl, forearm_ax),
        edge("right-forearm", "right-hand", same, hand_rel, hand_ovl, hand_ax),
        edge("trunk", "left-thigh", same, thigh_rel, thigh_ovl, thigh_ax),
        edge("left-thigh", "left-calf", same, calf_rel, calf_ovl, calf_ax),
        edge("left-calf", "left-foot", same, foot_rel, foot_ovl, foot_ax),
        edge("trunk", "right-thigh", quarter, thigh_rel, thigh_ovl, thigh_ax),
        edge("right-thigh", "right-calf", same, calf_rel, calf_ovl, calf_ax),
        edge("right-calf", "right-foot", same, foot_rel, foot_ovl, foot_ax),
    )
    return PuppetModel(
        parts=(
            "head", "neck", "trunk",
            "left-upper-arm", "left-forearm", "left-hand",
            "right-upper-arm", "right-forearm", "right-hand",
            "left-thigh", "left-calf", "left-foot",
            "right-thigh", "right-calf", "right-foot",
        ),
        attachments=attachments,
        seeds=(
            SeedRule("trunk", "min-smaller-overlaps", count=5),
            SeedRule("head", "single-larger-overlap", area_ratio=(0.6, 0.95)),
        ),
        weights=WeightConfig(p_high=0.8, p_low=0.5),
    )
