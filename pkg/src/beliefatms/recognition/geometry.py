"""Oriented rectangles and their intersection areas.

Rectangles carry a center, side lengths and the orientation of the width
axis.  Overlap areas come from Sutherland-Hodgman clipping of one convex
corner polygon by the other, followed by the shoelace formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

__all__ = ["Rectangle", "Scene", "polygon_area", "overlap_area"]

TWO_PI = 2.0 * math.pi

Point = tuple[float, float]


@dataclass(frozen=True)
class Rectangle:
    """An oriented rectangle in scene units.

    ``angle`` is the orientation of the width axis in radians and is
    normalized into [0, 2*pi).
    """

    id: str
    cx: float
    cy: float
    width: float
    height: float
    angle: float = 0.0

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("rectangle needs an id")
        if self.width <= 0 or self.height <= 0:
            raise ValueError(f"rectangle {self.id!r} needs positive side lengths")
        object.__setattr__(self, "angle", self.angle % TWO_PI)

    def area(self) -> float:
        return self.width * self.height

    def aspect_ratio(self) -> float:
        """Elongation: long side over short side (always >= 1)."""
        long_side = max(self.width, self.height)
        short_side = min(self.width, self.height)
        return long_side / short_side

    def corners(self) -> list[Point]:
        """Corner points in counter-clockwise order."""
        ux = (math.cos(self.angle), math.sin(self.angle))
        uy = (-ux[1], ux[0])
        hw = 0.5 * self.width
        hh = 0.5 * self.height
        out = []
        for sx, sy in ((1, -1), (1, 1), (-1, 1), (-1, -1)):
            out.append(
                (
                    self.cx + sx * hw * ux[0] + sy * hh * uy[0],
                    self.cy + sx * hw * ux[1] + sy * hh * uy[1],
                )
            )
        return out


@dataclass(frozen=True)
class Scene:
    """An ordered collection of rectangles with unique ids."""

    rectangles: tuple[Rectangle, ...]

    def __init__(self, rectangles: Iterator[Rectangle] | list[Rectangle]):
        rects = tuple(rectangles)
        ids = [r.id for r in rects]
        if len(set(ids)) != len(ids):
            raise ValueError("rectangle ids must be unique within a scene")
        object.__setattr__(self, "rectangles", rects)

    def __iter__(self) -> Iterator[Rectangle]:
        return iter(self.rectangles)

    def __len__(self) -> int:
        return len(self.rectangles)

    def by_id(self, rect_id: str) -> Rectangle:
        for r in self.rectangles:
            if r.id == rect_id:
                return r
        raise KeyError(rect_id)


def polygon_area(points: list[Point]) -> float:
    """Absolute area of a simple polygon (shoelace formula)."""
    if len(points) < 3:
        return 0.0
    total = 0.0
    for (x0, y0), (x1, y1) in zip(points, points[1:] + points[:1]):
        total += x0 * y1 - x1 * y0
    return abs(total) / 2.0


def _edge_intersection(s: Point, e: Point, a: Point, b: Point) -> Point:
    dx, dy = e[0] - s[0], e[1] - s[1]
    ex, ey = b[0] - a[0], b[1] - a[1]
    denom = dx * ey - dy * ex
    if abs(denom) < 1e-30:
        return e  # grazing contact; the sliver has no area anyway
    t = ((a[0] - s[0]) * ey - (a[1] - s[1]) * ex) / denom
    return (s[0] + t * dx, s[1] + t * dy)


def clip_convex(subject: list[Point], clip: list[Point]) -> list[Point]:
    """Clip a convex polygon by a counter-clockwise convex polygon."""
    output = list(subject)
    n = len(clip)
    for i in range(n):
        if not output:
            return []
        a = clip[i]
        b = clip[(i + 1) % n]

        def inside(p: Point) -> bool:
            return (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]) >= 0.0

        current = output
        output = []
        s = current[-1]
        for e in current:
            if inside(e):
                if not inside(s):
                    output.append(_edge_intersection(s, e, a, b))
                output.append(e)
            elif inside(s):
                output.append(_edge_intersection(s, e, a, b))
            s = e
    return output


def overlap_area(a: Rectangle, b: Rectangle) -> float:
    """Area of intersection of two oriented rectangles (0 if disjoint)."""
    return polygon_area(clip_convex(a.corners(), b.corners()))
