"""Intersections, ideal endpoints, parallels and plane separation."""

from __future__ import annotations

import enum
import math

from .errors import PointOnLine, SameLine
from .geodesic import _ruler, contains, residual
from .model import (
    INFINITY,
    Elliptic,
    HLine,
    IdealEndpoint,
    Model,
    OnAxis,
    Point,
    Segment,
    Vertical,
    same_line,
)


class SideLabel(enum.Enum):
    ON_LINE = "on_line"
    SIDE1 = "side1"  # right of a vertical, outside an ellipse
    SIDE2 = "side2"  # left of a vertical, inside an ellipse


def _require_distinct(m: Model, L1: HLine, L2: HLine) -> None:
    if same_line(m, L1, L2):
        raise SameLine(f"{L1} and {L2} are the same line")


# Footprint endpoints that agree to within a few rounding errors of their
# construction are the same ideal point.  This is much tighter than the model's
# eps_abs on purpose: two lines whose endpoints differ by 1e-9 still cross, at a
# height of roughly sqrt(1e-9 * a), which is well inside the sampled plane.
_ROUNDING = 64 * 2.0 ** -53


def _strictly_inside(x: float, lo: float, hi: float, scale: float) -> bool:
    slack = _ROUNDING * scale
    return lo + slack < x < hi - slack


def intersect(m: Model, L1: HLine, L2: HLine) -> Point | None:
    """The common point of two distinct h-lines, or ``None``.

    Lines that only touch at an ideal endpoint do not meet in the plane.
    Existence is decided on the x-axis footprints (a vertical inside an
    ellipse's span, or two ellipse spans that strictly interleave), which is
    the sign test on y^2 without its cancellation.
    """
    _require_distinct(m, L1, L2)
    k = m.k
    if isinstance(L1, Vertical) and isinstance(L2, Vertical):
        return None
    if isinstance(L1, Elliptic) and isinstance(L2, Vertical):
        L1, L2 = L2, L1
    if isinstance(L1, Vertical):
        c, a = L2.c, L2.a
        if not _strictly_inside(L1.p, c - a, c + a, abs(c) + a + abs(L1.p)):
            return None
        d = L1.p - c
        y2 = (a - d) * (a + d)
        if y2 <= 0:
            return None
        return Point(L1.p, math.sqrt(y2) / k)

    (c1, a1), (c2, a2) = (L1.c, L1.a), (L2.c, L2.a)
    scale = abs(c1) + a1 + abs(c2) + a2
    l1, r1, l2, r2 = c1 - a1, c1 + a1, c2 - a2, c2 + a2
    if _strictly_inside(l2, l1, r1, scale) == _strictly_inside(r2, l1, r1, scale):
        return None
    if _strictly_inside(l1, l2, r2, scale) == _strictly_inside(r1, l2, r2, scale):
        return None
    # Work from the smaller ellipse: y^2 = (a - d)(a + d) then has no large
    # cancellation, and a_big^2 - D^2 is formed as a product of near-exact factors.
    if a1 > a2:
        (c1, a1), (c2, a2) = (c2, a2), (c1, a1)
    D = c1 - c2
    d = ((a2 - D) * (a2 + D) - a1 * a1) / (2.0 * D)
    y2 = (a1 - d) * (a1 + d)
    if y2 <= 0:
        return None
    return Point(c1 + d, math.sqrt(y2) / k)


def ideal_endpoints(m: Model, L: HLine) -> tuple[IdealEndpoint, IdealEndpoint]:
    if isinstance(L, Vertical):
        return OnAxis(L.p), INFINITY
    return OnAxis(L.c - L.a), OnAxis(L.c + L.a)


def _endpoint_eq(m: Model, e1: IdealEndpoint, e2: IdealEndpoint) -> bool:
    if isinstance(e1, OnAxis) and isinstance(e2, OnAxis):
        return m.approx_eq(e1.x, e2.x)
    return e1 is e2


def shared_endpoints(m: Model, L1: HLine, L2: HLine) -> list[IdealEndpoint]:
    return [e for e in ideal_endpoints(m, L1)
            if any(_endpoint_eq(m, e, f) for f in ideal_endpoints(m, L2))]


def are_parallel(m: Model, L1: HLine, L2: HLine) -> bool:
    """Parallel in the endpoint sense: distinct lines sharing an ideal endpoint."""
    _require_distinct(m, L1, L2)
    return bool(shared_endpoints(m, L1, L2))


def parallel_through_endpoint(m: Model, e: IdealEndpoint, P: Point) -> HLine:
    """The h-line through ``P`` with ideal endpoint ``e``."""
    if e is INFINITY:
        return Vertical(P.x)
    offset = P.x - e.x
    if m.approx_eq(P.x, e.x):
        return Vertical(e.x)
    ky = m.k * P.y
    a = (offset * offset + ky * ky) / (2.0 * abs(offset))
    c = e.x + math.copysign(a, offset)
    return Elliptic(c, _snap_radius(c, a, e.x, offset > 0))


def _snap_radius(c: float, a: float, e: float, left: bool) -> float:
    """Nudge ``a`` by a few ulps so that ``c -/+ a`` reproduces ``e`` exactly.

    For a far-away ``P`` both ``c`` and ``a`` are huge and the shared endpoint
    would otherwise only survive to ``ulp(c)``.
    """
    def end(r):
        return c - r if left else c + r

    best, best_gap = a, abs(end(a) - e)
    lo = hi = a
    for _ in range(8):
        if best_gap == 0.0:
            break
        lo, hi = math.nextafter(lo, 0.0), math.nextafter(hi, math.inf)
        for r in (lo, hi):
            gap = abs(end(r) - e)
            if r > 0 and gap < best_gap:
                best, best_gap = r, gap
    return best


def parallels_through(m: Model, L: HLine, P: Point) -> tuple[HLine, HLine]:
    """The two lines through ``P`` parallel to ``L``, one per ideal endpoint.

    The line through the right endpoint (or infinity, for a vertical ``L``)
    comes first.
    """
    if contains(m, L, P):
        raise PointOnLine(f"{P} lies on {L}")
    left, right = ideal_endpoints(m, L)
    return parallel_through_endpoint(m, right, P), parallel_through_endpoint(m, left, P)


def side_of(m: Model, L: HLine, P: Point) -> SideLabel:
    if contains(m, L, P):
        return SideLabel.ON_LINE
    return SideLabel.SIDE1 if residual(m, L, P) > 0 else SideLabel.SIDE2


def segment_crosses(m: Model, S: Segment, L: HLine) -> bool:
    """Does ``L`` meet the closed segment ``S``?"""
    X = intersect(m, S.line, L)
    if X is None:
        return False
    t = _ruler(m, S.line, X)
    return (S.t0 <= t <= S.t1) or m.approx_eq(t, S.t0) or m.approx_eq(t, S.t1)
