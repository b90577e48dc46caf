"""Exception types raised by hkplane.

Every error is a ``ValueError`` subclass so callers that only care about bad
input can catch one thing.
"""


class GeometryError(ValueError):
    """Base class for precondition failures."""


class NonPositiveParameter(GeometryError):
    pass


class NonFinite(GeometryError):
    pass


class NotInUpperHalfPlane(GeometryError):
    pass


class CoincidentPoints(GeometryError):
    pass


class PointNotOnLine(GeometryError):
    pass


class PointOnLine(GeometryError):
    pass


class NotCollinear(GeometryError):
    pass


class SameLine(GeometryError):
    pass


class BaseMismatch(GeometryError):
    pass


class DegenerateTriangle(GeometryError):
    pass


class QuadratureFailure(ArithmeticError):
    """Adaptive quadrature ran out of depth before meeting its tolerance."""
