"""SVG drawings of h-lines, segments, points and triangles for one or more k.

Curves are polylines sampled uniformly in the ruler coordinate, so spacing is
even in hyperbolic length and dense near the x-axis.  Output carries no
timestamps or generated ids and is byte-stable for fixed input.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .geodesic import ruler_inverse, segment_between
from .model import Elliptic, HLine, Model, Point, Segment, Vertical

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


@dataclass(frozen=True)
class RenderSpec:
    x_min: float = -5.0
    x_max: float = 5.0
    y_max: float = 5.0
    width: int = 800
    height: int = 400
    stroke_samples: int = 400

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ValueError(f"need x_min < x_max, got {self.x_min} >= {self.x_max}")
        if not self.y_max > 0:
            raise ValueError(f"y_max must be > 0, got {self.y_max}")
        if self.width < 1 or self.height < 1:
            raise ValueError("width and height must be positive")
        if self.stroke_samples < 2:
            raise ValueError("stroke_samples must be >= 2")

    def px(self, x: float) -> float:
        return (x - self.x_min) / (self.x_max - self.x_min) * self.width

    def py(self, y: float) -> float:
        return self.height * (1.0 - y / self.y_max)

    def x_of(self, px: float) -> float:
        return self.x_min + px / self.width * (self.x_max - self.x_min)

    def y_of(self, py: float) -> float:
        return self.y_max * (1.0 - py / self.height)

    @property
    def y_floor(self) -> float:
        """Half a pixel above the axis; lower points are not drawn."""
        return 0.5 * self.y_max / self.height


# Drawable objects.  Segments and triangles are given by points, so the same
# object yields a different curve under each k.

@dataclass(frozen=True)
class LineObj:
    line: HLine


@dataclass(frozen=True)
class SegmentObj:
    A: Point
    B: Point


@dataclass(frozen=True)
class PointObj:
    P: Point


@dataclass(frozen=True)
class TriangleObj:
    A: Point
    B: Point
    C: Point


Drawable = LineObj | SegmentObj | PointObj | TriangleObj


def visible_span(m: Model, L: HLine, spec: RenderSpec) -> tuple[float, float] | None:
    """Ruler interval of ``L`` that can land inside the viewport."""
    floor = spec.y_floor
    if isinstance(L, Vertical):
        if not spec.x_min <= L.p <= spec.x_max:
            return None
        return math.log(m.k * floor), math.log(m.k * spec.y_max)
    ratio = L.a / (m.k * floor)
    if ratio <= 1.0:
        return None
    reach = math.acosh(ratio)

    def t_at(x):
        u = (x - L.c) / L.a
        if u <= -1.0:
            return -reach
        if u >= 1.0:
            return reach
        return max(-reach, min(reach, math.atanh(u)))

    lo, hi = t_at(spec.x_min), t_at(spec.x_max)
    return (lo, hi) if lo < hi else None


def sample_curve(m: Model, L: HLine, t0: float, t1: float, n: int) -> list[Point]:
    return [ruler_inverse(m, L, t0 + (t1 - t0) * i / (n - 1)) for i in range(n)]


def _polyline(spec: RenderSpec, pts: Iterable[Point], color: str, width: float = 1.5) -> str:
    coords = " ".join(f"{spec.px(P.x):.3f},{spec.py(P.y):.3f}" for P in pts)
    return (f'<polyline points="{coords}" fill="none" stroke="{color}" '
            f'stroke-width="{width}"/>')


def _stroke_segment(m: Model, S: Segment, spec: RenderSpec, color: str) -> str | None:
    span = visible_span(m, S.line, spec)
    if span is None:
        return None
    lo, hi = max(span[0], S.t0), min(span[1], S.t1)
    if lo >= hi:
        return None
    return _polyline(spec, sample_curve(m, S.line, lo, hi, spec.stroke_samples), color, 2.5)


def _dot(spec: RenderSpec, P: Point, color: str) -> str:
    return f'<circle cx="{spec.px(P.x):.3f}" cy="{spec.py(P.y):.3f}" r="3" fill="{color}"/>'


def draw_object(m: Model, obj: Drawable, spec: RenderSpec, color: str) -> list[str]:
    if isinstance(obj, PointObj):
        return [_dot(spec, obj.P, color)]
    if isinstance(obj, LineObj):
        span = visible_span(m, obj.line, spec)
        if span is None:
            return []
        return [_polyline(spec, sample_curve(m, obj.line, *span, spec.stroke_samples), color)]
    if isinstance(obj, SegmentObj):
        ends = (obj.A, obj.B)
    else:
        ends = (obj.A, obj.B, obj.C)
    pairs = list(zip(ends, ends[1:] + ends[:1])) if len(ends) == 3 else [ends]
    out = []
    for A, B in pairs:
        stroke = _stroke_segment(m, segment_between(m, A, B), spec, color)
        if stroke:
            out.append(stroke)
    out.extend(_dot(spec, P, color) for P in ends)
    return out


def render_svg(models: Sequence[Model], objects: Sequence[Drawable], spec: RenderSpec) -> str:
    """An SVG 1.1 document showing every object under every model, one colour per k."""
    w, h = spec.width, spec.height
    parts = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<defs><clipPath id="viewport"><rect x="0" y="0" width="{w}" height="{h}"/></clipPath></defs>',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>',
        f'<line x1="0" y1="{h}" x2="{w}" y2="{h}" stroke="black" stroke-width="2"/>',
    ]
    if spec.x_min < 0 < spec.x_max:
        x0 = spec.px(0.0)
        parts.append(f'<line x1="{x0:.3f}" y1="0" x2="{x0:.3f}" y2="{h}" stroke="#bbbbbb" '
                     f'stroke-dasharray="4 4"/>')
    for i, m in enumerate(models):
        color = PALETTE[i % len(PALETTE)]
        parts.append(f'<g class="k" data-k="{m.k!r}" clip-path="url(#viewport)">')
        for obj in objects:
            parts.extend(draw_object(m, obj, spec, color))
        parts.append("</g>")
        parts.append(f'<text x="8" y="{18 + 16 * i}" font-family="sans-serif" font-size="13" '
                     f'fill="{color}">{escape(f"k = {m.k:g}")}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---- object spec grammar ---------------------------------------------------
# point:    x,y
# line:     v:p | e:c,a
# segment:  x,y:x,y
# triangle: x,y:x,y:x,y

def parse_point(text: str) -> Point:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected a point 'x,y', got {text!r}")
    return Point(float(parts[0]), float(parts[1]))


def parse_line(text: str) -> HLine:
    kind, _, rest = text.partition(":")
    nums = [float(v) for v in rest.split(",")] if rest else []
    if kind == "v" and len(nums) == 1:
        return Vertical(nums[0])
    if kind == "e" and len(nums) == 2:
        return Elliptic(nums[0], nums[1])
    raise ValueError(f"expected a line 'v:p' or 'e:c,a', got {text!r}")


def parse_points(text: str, count: int) -> list[Point]:
    pts = [parse_point(p) for p in text.split(":")]
    if len(pts) != count:
        raise ValueError(f"expected {count} points separated by ':', got {text!r}")
    return pts


def parse_object(kind: str, text: str) -> Drawable:
    if kind == "point":
        return PointObj(parse_point(text))
    if kind == "line":
        return LineObj(parse_line(text))
    if kind == "segment":
        return SegmentObj(*parse_points(text, 2))
    if kind == "triangle":
        return TriangleObj(*parse_points(text, 3))
    raise ValueError(f"unknown object kind {kind!r}")


def parse_input_file(text: str) -> list[Drawable]:
    """One object per line, ``<kind> <spec>``; blank lines and ``#`` comments skipped."""
    objects = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ValueError(f"line {lineno}: expected '<kind> <spec>', got {raw!r}")
        try:
            objects.append(parse_object(*fields))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
    return objects
