"""Distance on H_k, the squeeze map to the classical half-plane, and a
quadrature-based arc length used as an independent check on both."""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass

from .errors import QuadratureFailure
from .geodesic import _ordered, line_through, ruler_inverse, shifted_chord, velocity
from .model import HLine, Model, Point, Vertical, same_point

_CLASSICAL = Model(1.0)


@dataclass(frozen=True)
class QuadratureSpec:
    max_depth: int = 40
    tol: float = 1e-8

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError(f"max_depth must be >= 1, got {self.max_depth}")
        if not self.tol > 0:
            raise ValueError(f"tol must be > 0, got {self.tol}")


def squeeze(m: Model, P: Point) -> Point:
    """(x, y) -> (x, k y): carries H_k onto the classical half-plane."""
    return Point(P.x, m.k * P.y)


def unsqueeze(m: Model, P: Point) -> Point:
    return Point(P.x, P.y / m.k)


def _log_ratio_distance(m: Model, P: Point, Q: Point) -> float:
    if same_point(m, P, Q):
        return 0.0
    L = line_through(m, P, Q)
    P, Q = _ordered(P, Q)
    if isinstance(L, Vertical):
        return abs(math.log(Q.y / P.y))
    num = shifted_chord(m, L, P) * Q.y
    den = shifted_chord(m, L, Q) * P.y
    return abs(math.log(num / den))


def distance(m: Model, P: Point, Q: Point) -> float:
    """Closed-form distance |ln((x1-c+a) y2 / ((x2-c+a) y1))| on H_k."""
    return _log_ratio_distance(m, P, Q)


def classical_distance(P: Point, Q: Point, tol: Model | None = None) -> float:
    """Poincare half-plane distance via the semicircle through ``P`` and ``Q``.

    ``tol`` only supplies the tolerance policy (its ``k`` is ignored), so
    branch selection can match a given model.
    """
    base = _CLASSICAL if tol is None else tol
    if base.approx_eq(P.x, Q.x) and base.approx_eq(P.y, Q.y):
        return 0.0
    if base.approx_eq(P.x, Q.x):
        return abs(math.log(Q.y / P.y))
    (x1, y1), (x2, y2) = _ordered(P, Q)
    c = 0.5 * (x1 + x2) + (y1 - y2) * (y1 + y2) / (2.0 * (x1 - x2))
    r = math.hypot(x1 - c, y1)

    def shifted(x, y):
        # x - c + r, rewritten as y^2 / (c + r - x) left of the centre
        return x - c + r if x >= c else y * y / (c + r - x)

    return abs(math.log((shifted(x1, y1) / y1) / (shifted(x2, y2) / y2)))


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-8,
    max_depth: int = 40,
) -> float:
    """Integrate ``f`` over [a, b] by recursive Simpson bisection.

    Each half gets half of the parent's tolerance; a panel is accepted when
    ``|S_left + S_right - S| <= 15 * tol`` (with Richardson correction).

    Raises:
        QuadratureFailure: if a panel still misses its tolerance at ``max_depth``.
    """
    if a == b:
        return 0.0
    if a > b:
        return -adaptive_simpson(f, b, a, tol, max_depth)

    def simpson(fa, fm, fb, h):
        return h / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(lo, hi, flo, fmid, fhi, whole, eps, depth):
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        left = simpson(flo, flm, fmid, mid - lo)
        right = simpson(fmid, frm, fhi, hi - mid)
        delta = left + right - whole
        if abs(delta) <= 15.0 * eps:
            return left + right + delta / 15.0
        if depth >= max_depth:
            raise QuadratureFailure(
                f"no convergence on [{lo}, {hi}] at depth {depth} (error estimate {abs(delta) / 15.0:.3g})"
            )
        return (recurse(lo, mid, flo, flm, fmid, left, eps / 2.0, depth + 1)
                + recurse(mid, hi, fmid, frm, fhi, right, eps / 2.0, depth + 1))

    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    return recurse(a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol, 1)


def length_element(m: Model, P: Point, dx: float, dy: float) -> float:
    """Pullback of the Poincare length element through the squeeze map."""
    ky = m.k * P.y
    return math.hypot(dx, m.k * dy) / ky


def arc_length_oracle(m: Model, L: HLine, t0: float, t1: float,
                      q: QuadratureSpec = QuadratureSpec()) -> float:
    """Length of ``L`` between ruler coordinates ``t0 <= t1``, by quadrature.

    The integrand is the hyperbolic length element evaluated on the
    Euclidean curve; nothing here uses the closed-form distance.
    """
    if t0 > t1:
        raise ValueError(f"need t0 <= t1, got {t0} > {t1}")

    def speed(t):
        dx, dy = velocity(m, L, t)
        return length_element(m, ruler_inverse(m, L, t), dx, dy)

    return adaptive_simpson(speed, t0, t1, q.tol, q.max_depth)
