"""Figure recognition in overlapping-rectangle scenes."""

from .geometry import Rectangle, Scene, overlap_area
from .model import (
    Attachment,
    Band,
    FilterSpec,
    FormatError,
    PuppetModel,
    SeedRule,
    WeightConfig,
    default_puppet_model,
    load_model,
    load_scene,
    thigh_filter_defaults,
)
from .pipeline import (
    Interpretation,
    PartHypothesis,
    SceneAnalysis,
    build_clauses,
    eval_filter,
    filter_value,
    find_seeds,
    hypothesis_weight,
    interpret,
    rank_interpretations,
)
from .render import render_svg

__all__ = [
    "Rectangle",
    "Scene",
    "overlap_area",
    "Attachment",
    "Band",
    "FilterSpec",
    "FormatError",
    "PuppetModel",
    "SeedRule",
    "WeightConfig",
    "default_puppet_model",
    "load_model",
    "load_scene",
    "thigh_filter_defaults",
    "Interpretation",
    "PartHypothesis",
    "SceneAnalysis",
    "build_clauses",
    "eval_filter",
    "filter_value",
    "find_seeds",
    "hypothesis_weight",
    "interpret",
    "rank_interpretations",
    "render_svg",
]
