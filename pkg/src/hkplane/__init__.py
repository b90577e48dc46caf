"""Computational kernel for the generalized Poincare half-planes H_k.

H_k keeps the upper half-plane but replaces the classical semicircular
geodesics by half-ellipses ``(x - c)**2 + k**2 * y**2 == a**2``; k == 1 is the
classical model.  The map (x, y) -> (x, k y) is an isometry onto it.
"""

from .angle import (
    Measure,
    TangentRay,
    euclidean_angle,
    make_ray,
    pullback_angle,
    tangent_ray,
    triangle_angles,
)
from .errors import (
    BaseMismatch,
    CoincidentPoints,
    DegenerateTriangle,
    GeometryError,
    NonFinite,
    NonPositiveParameter,
    NotCollinear,
    NotInUpperHalfPlane,
    PointNotOnLine,
    PointOnLine,
    QuadratureFailure,
    SameLine,
)
from .geodesic import between, contains, line_through, ruler, ruler_inverse, segment_between
from .incidence import (
    SideLabel,
    are_parallel,
    ideal_endpoints,
    intersect,
    parallels_through,
    segment_crosses,
    side_of,
)
from .metric import (
    QuadratureSpec,
    arc_length_oracle,
    classical_distance,
    distance,
    squeeze,
    unsqueeze,
)
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
    approx_eq,
    make_model,
    make_point,
)

__version__ = "0.1.0"
