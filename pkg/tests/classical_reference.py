"""Textbook Poincare half-plane, written without hkplane.

Each routine uses a different construction from the library's: circle centres
from perpendicular bisectors, distance from the asinh chord formula, points on
a geodesic from the central angle, intersections from the radical line.
"""

import math


def geodesic(p, q):
    """('v', x) or ('c', centre, radius) through two points (x, y)."""
    (x1, y1), (x2, y2) = p, q
    if x1 == x2:
        return ("v", x1)
    # midpoint M plus s * (-dy, dx) hits y = 0 at s = -My / dx
    mx, my = (x1 + x2) / 2, (y1 + y2) / 2
    dx, dy = x2 - x1, y2 - y1
    centre = mx + my * dy / dx
    return ("c", centre, math.hypot(x1 - centre, y1))


def dist(p, q):
    (x1, y1), (x2, y2) = p, q
    return 2.0 * math.asinh(math.hypot(x2 - x1, y2 - y1) / (2.0 * math.sqrt(y1 * y2)))


def point_at(line, t):
    """Point at signed arc length t from the top of a semicircle (or from y = 1)."""
    if line[0] == "v":
        return (line[1], math.exp(t))
    _, centre, r = line
    theta = 2.0 * math.atan(math.exp(-t))   # t -> +inf walks to the right endpoint
    return (centre + r * math.cos(theta), r * math.sin(theta))


def circle_intersection(c1, r1, c2, r2):
    """Upper intersection of two circles centred on the x-axis, or None."""
    d = c2 - c1
    along = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d)
    h2 = r1 * r1 - along * along
    if h2 <= 0:
        return None
    return (c1 + along, math.sqrt(h2))


def parallel_circle(p, e):
    """Circle through p meeting the x-axis at e: centre equidistant from p and (e, 0)."""
    x, y = p
    centre = (x * x + y * y - e * e) / (2.0 * (x - e))
    return centre, abs(centre - e)


def tangent_toward(p, q):
    """Unit tangent at p of the geodesic pq, pointing along the arc to q."""
    line = geodesic(p, q)
    if line[0] == "v":
        return (0.0, math.copysign(1.0, q[1] - p[1]))
    _, centre, _ = line
    # perpendicular to the radius; the chord lies within 90 degrees of the arc direction
    tx, ty = -p[1], p[0] - centre
    if tx * (q[0] - p[0]) + ty * (q[1] - p[1]) < 0:
        tx, ty = -tx, -ty
    n = math.hypot(tx, ty)
    return (tx / n, ty / n)


def vertex_angle(p, q, r):
    u, v = tangent_toward(p, q), tangent_toward(p, r)
    return math.atan2(abs(u[0] * v[1] - u[1] * v[0]), u[0] * v[0] + u[1] * v[1])
