"""Rectifiable bundles of circles through the origin.

Exact checks of the cone conditions on quadratic maps, quaternionic
decomposition and classification of bundles in R^4, synthesis of maps that
round lines, and a numerical verifier based on circle fitting.
"""

from .bundles import (
    AT_INFINITY,
    BundleDescriptor,
    Circle,
    LinearQuaternionMap,
    acceleration,
    barycentric_circle,
    barycentric_combine,
    center_from_A,
    circle_from_acceleration,
    common_point,
    decompose_quaternionic,
    descriptor_from_A,
    determine_family,
    fit_bundle,
    lines_subspace,
    quaternionic_gamma,
)
from .circlefit import CircleFit, fit_circle
from .cone import (
    ConditionViolation,
    ConeDivision,
    GeneratingPlane,
    VectorQuadraticMap,
    canonicalize,
    check_conditions,
    cone_divide,
    generating_plane,
    parallel_decompose,
    sample_cone_point,
)
from .poly import Poly, PolyMap
from .quaternions import Quaternion, detect_quaternionic_multiplication, mul_operator, qconj, qinv, qmul
from .transforms import (
    AffineMap,
    FitReport,
    FractionalTransform,
    RectifierMap,
    invert,
    qft_from_A,
    synthesize_rectifier,
    t_a,
    t_a_quadratic,
    verify_rounds_lines,
)

__version__ = "0.1.0"

__all__ = [
    "acceleration",
    "AffineMap",
    "AT_INFINITY",
    "barycentric_circle",
    "barycentric_combine",
    "BundleDescriptor",
    "canonicalize",
    "center_from_A",
    "check_conditions",
    "Circle",
    "circle_from_acceleration",
    "CircleFit",
    "common_point",
    "ConditionViolation",
    "cone_divide",
    "ConeDivision",
    "decompose_quaternionic",
    "descriptor_from_A",
    "detect_quaternionic_multiplication",
    "determine_family",
    "fit_bundle",
    "fit_circle",
    "FitReport",
    "FractionalTransform",
    "generating_plane",
    "GeneratingPlane",
    "invert",
    "LinearQuaternionMap",
    "lines_subspace",
    "mul_operator",
    "parallel_decompose",
    "Poly",
    "PolyMap",
    "qconj",
    "qft_from_A",
    "qinv",
    "qmul",
    "Quaternion",
    "quaternionic_gamma",
    "RectifierMap",
    "sample_cone_point",
    "synthesize_rectifier",
    "t_a",
    "t_a_quadratic",
    "VectorQuadraticMap",
    "verify_rounds_lines",
]
