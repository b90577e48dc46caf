"""Core value types for the generalized half-plane H_k.

A :class:`Model` fixes the squeeze factor ``k`` and the tolerance policy.
Lines never carry their own ``k``; an :class:`Elliptic` line means the
half-ellipse ``(x - c)**2 + k**2 * y**2 == a**2`` of whatever model it is
used with.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import NonFinite, NonPositiveParameter, NotInUpperHalfPlane

DEFAULT_EPS_ABS = 1e-9
DEFAULT_EPS_REL = 1e-12


@dataclass(frozen=True)
class Model:
    k: float = 1.0
    eps_abs: float = DEFAULT_EPS_ABS
    eps_rel: float = DEFAULT_EPS_REL

    def __post_init__(self):
        for name in ("k", "eps_abs", "eps_rel"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise NonFinite(f"{name} must be finite, got {value!r}")
            if value <= 0:
                raise NonPositiveParameter(f"{name} must be > 0, got {value!r}")
            object.__setattr__(self, name, float(value))

    def approx_eq(self, u: float, v: float) -> bool:
        return abs(u - v) <= self.eps_abs + self.eps_rel * max(abs(u), abs(v))


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise NonFinite(f"point coordinates must be finite: ({self.x!r}, {self.y!r})")
        if self.y <= 0:
            raise NotInUpperHalfPlane(f"y must be > 0, got {self.y!r}")

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True)
class Vertical:
    """The Euclidean half-line ``x == p``, ``y > 0``."""

    p: float

    def __post_init__(self):
        if not math.isfinite(self.p):
            raise NonFinite(f"p must be finite, got {self.p!r}")


@dataclass(frozen=True)
class Elliptic:
    """Upper half of ``(x - c)**2 + k**2 * y**2 == a**2``; ``a`` is the x semi-axis."""

    c: float
    a: float

    def __post_init__(self):
        if not (math.isfinite(self.c) and math.isfinite(self.a)):
            raise NonFinite(f"c and a must be finite: ({self.c!r}, {self.a!r})")
        if self.a <= 0:
            raise NonPositiveParameter(f"a must be > 0, got {self.a!r}")

    def b(self, m: Model) -> float:
        """Semi-axis along y under model ``m``."""
        return self.a / m.k


HLine = Union[Vertical, Elliptic]


@dataclass(frozen=True)
class OnAxis:
    x: float


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()
IdealEndpoint = Union[OnAxis, _Infinity]


@dataclass(frozen=True)
class Segment:
    line: HLine
    t0: float
    t1: float

    def __post_init__(self):
        if not (math.isfinite(self.t0) and math.isfinite(self.t1)):
            raise NonFinite("segment bounds must be finite")
        if self.t0 > self.t1:
            raise ValueError(f"segment needs t0 <= t1, got [{self.t0}, {self.t1}]")


def make_model(k: float, eps_abs: float = DEFAULT_EPS_ABS, eps_rel: float = DEFAULT_EPS_REL) -> Model:
    return Model(float(k), float(eps_abs), float(eps_rel))


def make_point(x: float, y: float) -> Point:
    return Point(float(x), float(y))


def approx_eq(m: Model, u: float, v: float) -> bool:
    """Two-tier closeness test; reflexive and symmetric but not transitive."""
    return m.approx_eq(u, v)


def same_point(m: Model, P: Point, Q: Point) -> bool:
    return m.approx_eq(P.x, Q.x) and m.approx_eq(P.y, Q.y)


def same_line(m: Model, L1: HLine, L2: HLine) -> bool:
    if isinstance(L1, Vertical) and isinstance(L2, Vertical):
        return m.approx_eq(L1.p, L2.p)
    if isinstance(L1, Elliptic) and isinstance(L2, Elliptic):
        # compare the ideal endpoints: for huge a the pair (c, a) hides real differences
        return (m.approx_eq(L1.c - L1.a, L2.c - L2.a)
                and m.approx_eq(L1.c + L1.a, L2.c + L2.a))
    return False
