"""Deterministic SVG rendering of scenes and interpretations.

Every rectangle is drawn as an outline; rectangles claimed by the
interpretation are filled and labeled with their part name.  Output
bytes depend only on the input, so renders can be diffed.
"""

from __future__ import annotations

from .geometry import Scene
from .pipeline import Interpretation

__all__ = ["render_svg"]

_MARGIN = 1.0
_SCALE = 40  # pixels per scene unit in the width/height attributes

_PALETTE = (
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
    "#86bcb6", "#d37295", "#b6992d", "#499894", "#79706e",
)


def _fmt(value: float) -> str:
    text = f"{value:.3f}"
    return "0.000" if text == "-0.000" else text


def render_svg(scene: Scene, interpretation: Interpretation | None = None) -> str:
    """Render a scene, highlighting an interpretation's rectangles."""
    assigned: dict[str, str] = {}
    if interpretation is not None:
        assigned = {h.rect_id: h.part for h in interpretation.hypotheses}
    colors = {
        part: _PALETTE[i % len(_PALETTE)]
        for i, part in enumerate(sorted(set(assigned.values())))
    }

    corners = [corner for rect in scene for corner in rect.corners()]
    if corners:
        min_x = min(x for x, _ in corners) - _MARGIN
        max_x = max(x for x, _ in corners) + _MARGIN
        min_y = min(y for _, y in corners) - _MARGIN
        max_y = max(y for _, y in corners) + _MARGIN
    else:
        min_x, max_x, min_y, max_y = 0.0, 10.0, 0.0, 10.0
    width = max_x - min_x
    height = max_y - min_y

    def place(x: float, y: float) -> tuple[float, float]:
        # Scene y grows upward, SVG y grows downward.
        return (x - min_x, max_y - y)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        (
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{round(width * _SCALE)}" height="{round(height * _SCALE)}" '
            f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">'
        ),
        f'<rect x="0" y="0" width="{_fmt(width)}" height="{_fmt(height)}" fill="#ffffff"/>',
    ]
    for rect in scene:
        points = " ".join(
            f"{_fmt(px)},{_fmt(py)}"
            for px, py in (place(x, y) for x, y in rect.corners())
        )
        part = assigned.get(rect.id)
        if part is None:
            lines.append(
                f'<polygon points="{points}" fill="none" '
                f'stroke="#555555" stroke-width="0.06"/>'
            )
        else:
            lines.append(
                f'<polygon points="{points}" fill="{colors[part]}" '
                f'fill-opacity="0.45" stroke="#222222" stroke-width="0.08"/>'
            )
            cx, cy = place(rect.cx, rect.cy)
            lines.append(
                f'<text x="{_fmt(cx)}" y="{_fmt(cy)}" font-size="0.5" '
                f'text-anchor="middle" fill="#111111">{rect.id}:{part}</text>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
