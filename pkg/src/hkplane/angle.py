"""Tangent rays and the two angle measures.

``euclidean_angle`` measures tangent directions as drawn in the plane.
``pullback_angle`` first pushes them through the differential of the squeeze
map, diag(1, k), and so measures the angle the classical (conformal) model
sees.  The two agree only at k == 1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import BaseMismatch, CoincidentPoints, DegenerateTriangle, PointNotOnLine
from .geodesic import _ruler, contains, line_through
from .model import HLine, Model, Point, Vertical, same_point


class Measure(enum.Enum):
    EUCLIDEAN = "euclidean"
    PULLBACK = "pullback"


@dataclass(frozen=True)
class TangentRay:
    base: Point
    dx: float
    dy: float

    def __post_init__(self):
        norm = math.hypot(self.dx, self.dy)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"ray direction must be a unit vector, |dir| = {norm!r}")

    @property
    def dir(self) -> tuple[float, float]:
        return self.dx, self.dy


def make_ray(base: Point, dx: float, dy: float) -> TangentRay:
    norm = math.hypot(dx, dy)
    if norm == 0:
        raise ValueError("zero direction")
    return TangentRay(base, dx / norm, dy / norm)


def tangent_ray(m: Model, L: HLine, P: Point, toward_increasing_t: bool = True) -> TangentRay:
    if not contains(m, L, P):
        raise PointNotOnLine(f"{P} is not on {L}")
    sign = 1.0 if toward_increasing_t else -1.0
    if isinstance(L, Vertical):
        return TangentRay(P, 0.0, sign)
    # orthogonal to the gradient (x - c, k^2 y); first component > 0 along increasing t
    return make_ray(P, sign * m.k * m.k * P.y, -sign * (P.x - L.c))


def _angle_between(u: tuple[float, float], v: tuple[float, float]) -> float:
    cross = u[0] * v[1] - u[1] * v[0]
    dot = u[0] * v[0] + u[1] * v[1]
    return math.atan2(abs(cross), dot)


def _check_base(m: Model, r1: TangentRay, r2: TangentRay) -> None:
    if not same_point(m, r1.base, r2.base):
        raise BaseMismatch(f"rays start at {r1.base} and {r2.base}")


def euclidean_angle(m: Model, r1: TangentRay, r2: TangentRay) -> float:
    _check_base(m, r1, r2)
    return _angle_between(r1.dir, r2.dir)


def pullback_angle(m: Model, r1: TangentRay, r2: TangentRay) -> float:
    _check_base(m, r1, r2)
    k = m.k
    return _angle_between((r1.dx, k * r1.dy), (r2.dx, k * r2.dy))


def ray_toward(m: Model, A: Point, B: Point) -> TangentRay:
    """Tangent ray at ``A`` along the h-line AB, pointing at ``B``."""
    L = line_through(m, A, B)
    return tangent_ray(m, L, A, _ruler(m, L, B) > _ruler(m, L, A))


def triangle_angles(m: Model, A: Point, B: Point, C: Point,
                    measure: Measure = Measure.PULLBACK) -> tuple[float, float, float]:
    """Interior angles at A, B and C, in radians."""
    if same_point(m, A, B) or same_point(m, B, C) or same_point(m, A, C):
        raise DegenerateTriangle("vertices must be distinct")
    try:
        if contains(m, line_through(m, A, B), C):
            raise DegenerateTriangle(f"{A}, {B}, {C} are collinear")
    except CoincidentPoints as exc:
        raise DegenerateTriangle(str(exc)) from exc
    measure = Measure(measure)
    angle = euclidean_angle if measure is Measure.EUCLIDEAN else pullback_angle
    return (
        angle(m, ray_toward(m, A, B), ray_toward(m, A, C)),
        angle(m, ray_toward(m, B, C), ray_toward(m, B, A)),
        angle(m, ray_toward(m, C, A), ray_toward(m, C, B)),
    )
