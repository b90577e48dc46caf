"""Lines through two points, the ruler coordinate and its inverse."""

from __future__ import annotations

import math

from .errors import CoincidentPoints, NonFinite, NotCollinear, PointNotOnLine
from .model import Elliptic, HLine, Model, Point, Segment, Vertical, same_point


def _ordered(P1: Point, P2: Point) -> tuple[Point, Point]:
    # canonical order makes line_through(P, Q) and line_through(Q, P) bit-identical
    return (P1, P2) if (P1.x, P1.y) <= (P2.x, P2.y) else (P2, P1)


def line_through(m: Model, P1: Point, P2: Point) -> HLine:
    """The unique h-line of ``m`` through two distinct points."""
    if same_point(m, P1, P2):
        raise CoincidentPoints(f"{P1} and {P2} coincide")
    (x1, y1), (x2, y2) = _ordered(P1, P2)
    if m.approx_eq(x1, x2):
        return Vertical(x1)
    k2 = m.k * m.k
    # same quantity as (x1^2 - x2^2 + k^2 (y1^2 - y2^2)) / (2 (x1 - x2)), factored
    c = 0.5 * (x1 + x2) + k2 * (y1 - y2) * (y1 + y2) / (2.0 * (x1 - x2))
    a = math.hypot(x1 - c, m.k * y1)
    return Elliptic(c, a)


def residual(m: Model, L: HLine, P: Point) -> float:
    """Signed defect of ``P`` in the defining equation of ``L``."""
    if isinstance(L, Vertical):
        return P.x - L.p
    dx = P.x - L.c
    ky = m.k * P.y
    return (dx - L.a) * (dx + L.a) + ky * ky


def contains(m: Model, L: HLine, P: Point) -> bool:
    if isinstance(L, Vertical):
        return m.approx_eq(P.x, L.p)
    dx = P.x - L.c
    ky = m.k * P.y
    return m.approx_eq(dx * dx + ky * ky, L.a * L.a)


def shifted_chord(m: Model, L: Elliptic, P: Point) -> float:
    """``x - c + a`` for a point on ``L``, without cancellation near ``c - a``.

    On the line ``(x - c + a)(x - c - a) == -(k y)**2``, so the left half uses
    the quotient form, whose terms never cancel.
    """
    dx = P.x - L.c
    if dx >= 0:
        return dx + L.a
    ky = m.k * P.y
    return -(ky * ky) / (dx - L.a)


def _ruler(m: Model, L: HLine, P: Point) -> float:
    if isinstance(L, Vertical):
        return math.log(m.k * P.y)
    return math.log(shifted_chord(m, L, P) / (m.k * P.y))


def ruler(m: Model, L: HLine, P: Point) -> float:
    """Ruler coordinate of ``P`` on ``L``.

    Increases with ``x`` along an elliptic line and with ``y`` along a
    vertical one; ``abs(ruler(P) - ruler(Q))`` is the distance.
    """
    if not contains(m, L, P):
        raise PointNotOnLine(f"{P} is not on {L}")
    return _ruler(m, L, P)


def ruler_inverse(m: Model, L: HLine, t: float) -> Point:
    if not math.isfinite(t):
        raise NonFinite(f"ruler coordinate must be finite, got {t!r}")
    if isinstance(L, Vertical):
        return Point(L.p, math.exp(t) / m.k)
    return Point(L.c + L.a * math.tanh(t), L.a / (m.k * math.cosh(t)))


def velocity(m: Model, L: HLine, t: float) -> tuple[float, float]:
    """Euclidean derivative of ``t -> ruler_inverse(m, L, t)``."""
    if isinstance(L, Vertical):
        return 0.0, math.exp(t) / m.k
    sech = 1.0 / math.cosh(t)
    return L.a * sech * sech, -L.a * sech * math.tanh(t) / m.k


def between(m: Model, A: Point, B: Point, C: Point) -> bool:
    """True iff ``B`` lies strictly inside the segment from ``A`` to ``C``."""
    if same_point(m, A, B) or same_point(m, B, C) or same_point(m, A, C):
        raise CoincidentPoints("between() needs three distinct points")
    L = line_through(m, A, C)
    if not contains(m, L, B):
        raise NotCollinear(f"{B} is not on the line through {A} and {C}")
    ta, tb, tc = (_ruler(m, L, P) for P in (A, B, C))
    lo, hi = min(ta, tc), max(ta, tc)
    if m.approx_eq(tb, lo) or m.approx_eq(tb, hi):
        return False
    return lo < tb < hi


def segment_between(m: Model, A: Point, B: Point) -> Segment:
    L = line_through(m, A, B)
    ta, tb = _ruler(m, L, A), _ruler(m, L, B)
    return Segment(L, min(ta, tb), max(ta, tb))


def segment_point(m: Model, S: Segment, s: float) -> Point:
    """Point at fraction ``s`` in [0, 1] of the segment's ruler interval."""
    return ruler_inverse(m, S.line, S.t0 + s * (S.t1 - S.t0))
