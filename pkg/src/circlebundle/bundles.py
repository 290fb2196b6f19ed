"""Circles through the origin and complete bundles of them.

A bundle is described by the imaginary part of a linear quaternion-valued
map A and a side: the circle tangent to x at 0 has center
-1/2 (Im A(x))^{-1} x on the left side and -1/2 x (Im A(x))^{-1} on the right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .cone import (
    ConditionViolation,
    UnsupportedDimension,
    VectorQuadraticMap,
    check_conditions,
    cone_divide,
    parallel_decompose,
)
from .poly import Poly, PolyMap
from .quaternions import SIDES, Quaternion, inner, qinv
from .scalars import is_exact, nullspace, rank, solve


class _Infinity:
    """Center of a degenerate circle (a straight line)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "AT_INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


AT_INFINITY = _Infinity()

ORTHO_TOL = 1e-9
FIT_TOL = 1e-9


class DecompositionFailure(ValueError):
    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class OrientationMismatch(ValueError):
    pass


class NeedsMoreSamples(ValueError):
    pass


def _exact_vec(v):
    return all(is_exact(c) for c in v)


@dataclass(frozen=True)
class Circle:
    """Circle (or line, when ``center is AT_INFINITY``) through the origin.

    ``tangent`` is the direction at 0.  Float tangents are normalised; exact
    tangents are kept as given since normalisation would leave Q.  A finite
    center is always orthogonal to the tangent.
    """

    tangent: tuple
    center: object = AT_INFINITY

    def __post_init__(self):
        t = tuple(self.tangent)
        if all(c == 0 for c in t):
            raise ValueError("tangent must be nonzero")
        exact = _exact_vec(t)
        if not exact:
            norm = math.sqrt(sum(float(c) ** 2 for c in t))
            t = tuple(float(c) / norm for c in t)
        object.__setattr__(self, "tangent", t)
        if self.center is AT_INFINITY:
            return
        c = tuple(self.center)
        if len(c) != len(t):
            raise ValueError("center and tangent have different dimensions")
        if all(v == 0 for v in c):
            raise ValueError("a circle through 0 cannot be centred at 0")
        ct = inner(c, t)
        if exact and _exact_vec(c):
            if ct != 0:
                raise ValueError("center must be orthogonal to the tangent")
        else:
            c = tuple(float(v) for v in c)
            scale = math.sqrt(sum(v * v for v in c))
            if abs(float(ct)) > ORTHO_TOL * scale:
                raise ValueError("center must be orthogonal to the tangent")
        object.__setattr__(self, "center", c)

    @property
    def is_line(self):
        return self.center is AT_INFINITY

    @property
    def radius(self) -> float:
        if self.is_line:
            return math.inf
        return math.sqrt(sum(float(v) ** 2 for v in self.center))

    @property
    def unit_tangent(self):
        norm = math.sqrt(sum(float(c) ** 2 for c in self.tangent))
        return tuple(float(c) / norm for c in self.tangent)

    def distance(self, p) -> float:
        """Euclidean distance from a point to this circle (float)."""
        p = np.asarray([float(v) for v in p])
        t = np.asarray(self.unit_tangent)
        if self.is_line:
            return float(np.linalg.norm(p - np.dot(p, t) * t))
        c = np.asarray([float(v) for v in self.center])
        r = np.linalg.norm(c)
        e1 = c / r
        d = p - c
        inplane = np.dot(d, e1) * e1 + np.dot(d, t) * t
        out = d - inplane
        return float(math.hypot(np.linalg.norm(inplane) - r, np.linalg.norm(out)))


# -- acceleration --------------------------------------------------------------


def acceleration(gamma: VectorQuadraticMap, x) -> list:
    """Natural-parameter acceleration at 0 of the circle tangent to x.

    w = 2 (Gamma(x) - (Gamma(x), x) x / (x, x)) / (x, x); invariant under
    adding lam(x) x to Gamma.
    """
    xx = inner(x, x)
    if xx == 0:
        raise ValueError("x must be nonzero")
    g = gamma(x)
    gx = inner(g, x)
    return [2 * (gi - gx * xi / xx) / xx for gi, xi in zip(g, x)]


def circle_from_acceleration(x, w) -> Circle:
    exact = _exact_vec(x) and _exact_vec(w)
    wx = inner(w, x)
    if exact:
        if wx != 0:
            raise ValueError("acceleration must be orthogonal to the tangent")
    elif abs(float(wx)) > ORTHO_TOL * max(1.0, math.sqrt(float(inner(w, w)) * float(inner(x, x)))):
        raise ValueError("acceleration must be orthogonal to the tangent")
    ww = inner(w, w)
    if ww == 0:
        return Circle(tuple(x), AT_INFINITY)
    return Circle(tuple(x), tuple(wi / ww for wi in w))


def _require_conditions(gamma):
    res = check_conditions(gamma)
    if not res.satisfied:
        raise ConditionViolation("map violates the cone conditions", res.remainders)
    return res


def common_point(gamma: VectorQuadraticMap):
    """Second common point b/(b, b) of the bundle, AT_INFINITY or None."""
    _require_conditions(gamma)
    dec = parallel_decompose(gamma)
    if dec is None:
        return None
    bb = inner(dec.b, dec.b)
    if bb == 0:
        return AT_INFINITY
    return tuple(v / bb for v in dec.b)


# -- quaternionic decomposition ------------------------------------------------


@dataclass(frozen=True)
class LinearQuaternionMap:
    """x -> quaternion with coordinates ``matrix @ x``."""

    matrix: tuple

    def __post_init__(self):
        m = tuple(tuple(r) for r in self.matrix)
        if len(m) != 4 or any(len(r) != 4 for r in m):
            raise ValueError("a linear quaternion map is a 4x4 matrix")
        object.__setattr__(self, "matrix", m)

    def __call__(self, x) -> Quaternion:
        return Quaternion(*[sum((a * b for a, b in zip(row, x)), row[0] * 0) for row in self.matrix])

    def imaginary(self) -> "LinearQuaternionMap":
        zero = self.matrix[0][0] * 0
        return LinearQuaternionMap(((zero,) * 4,) + self.matrix[1:])

    def real_form(self):
        return list(self.matrix[0])

    def coefficients(self):
        return [v for r in self.matrix for v in r]

    def to_float(self):
        return LinearQuaternionMap([[float(v) for v in r] for r in self.matrix])


def _x_quaternion(n=4):
    return Quaternion(*Poly.variables(n))


def _family_product(gamma, side):
    G = Quaternion(*gamma.polymap())
    xbar = _x_quaternion().conj()
    prod = G * xbar if side == "left" else xbar * G
    return PolyMap(prod)


def determine_family(gamma: VectorQuadraticMap) -> Optional[str]:
    """Which generating family Gamma preserves: left, right, both or None."""
    if gamma.n != 4:
        raise UnsupportedDimension("families are defined for n = 4 only")
    ok = {s: cone_divide(_family_product(gamma, s)).exact for s in SIDES}
    if ok["left"] and ok["right"]:
        return "both"
    if ok["left"]:
        return "left"
    if ok["right"]:
        return "right"
    return None


def decompose_quaternionic(gamma: VectorQuadraticMap, side: str) -> LinearQuaternionMap:
    """Linear A with Gamma(x) = A(x) x (left) or x A(x) (right)."""
    if gamma.n != 4:
        raise UnsupportedDimension("quaternionic decomposition needs n = 4")
    if side not in SIDES:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    div = cone_divide(_family_product(gamma, side))
    if not div.exact:
        raise DecompositionFailure(f"Gamma does not factor on the {side}", div.remainder)
    A = LinearQuaternionMap([q.linear_coeffs() for q in div.quotient])
    # re-expand exactly
    Aq = Quaternion(*div.quotient)
    X = _x_quaternion()
    back = Aq * X if side == "left" else X * Aq
    if PolyMap(back) != gamma.polymap():
        raise DecompositionFailure("re-expansion does not reproduce Gamma")
    return A


def quaternionic_gamma(A: LinearQuaternionMap, side: str) -> VectorQuadraticMap:
    """Gamma(x) = A(x) x or x A(x) as a vector quadratic map."""
    xs = Poly.variables(4)
    Aq = Quaternion(*[Poly.linear(list(r)) for r in A.matrix])
    X = Quaternion(*xs)
    prod = Aq * X if side == "left" else X * Aq
    return VectorQuadraticMap.from_polymap(PolyMap(prod))


# -- centers and lines ----------------------------------------------------------


def center_from_A(A: LinearQuaternionMap, x, side: str = "left") -> Circle:
    """Circle of the bundle generated by A tangent to x at the origin."""
    if side not in SIDES:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    m = A(x).im
    if m.is_zero():
        return Circle(tuple(x), AT_INFINITY)
    minv = qinv(m)
    X = Quaternion(*x)
    c = (minv * X if side == "left" else X * minv) * (-Fraction(1, 2) if is_exact(m.x) else -0.5)
    return Circle(tuple(x), tuple(c))


def lines_subspace(A: LinearQuaternionMap, side: str = "left"):
    """Basis of the kernel of x -> Im A(x): the union of the bundle's lines.

    The kernel does not depend on the side.
    """
    rows = [list(r) for r in A.matrix[1:]]
    if all(v == 0 for r in rows for v in r):
        return [[Fraction(int(i == j)) for j in range(4)] for i in range(4)]
    return nullspace(rows)


# -- descriptors ---------------------------------------------------------------


@dataclass(frozen=True)
class BundleDescriptor:
    """Side plus Im A as a 4x4 matrix whose first row is zero.

    For ``side == "both"`` the stored matrix is the left representation
    Im(b conj(x)).
    """

    side: str
    imA: tuple

    def __post_init__(self):
        if self.side not in ("left", "right", "both"):
            raise ValueError(f"bad side {self.side!r}")
        m = tuple(tuple(r) for r in self.imA)
        if len(m) != 4 or any(len(r) != 4 for r in m):
            raise ValueError("imA must be a 4x4 matrix")
        if any(v != 0 for v in m[0]):
            raise ValueError("imA must take pure-imaginary values (first row zero)")
        if self.side == "both" and common_point_vector(m, "left") is None:
            raise ValueError("a 'both' descriptor must have the form Im(b conj(x))")
        object.__setattr__(self, "imA", m)

    @property
    def A(self) -> LinearQuaternionMap:
        return LinearQuaternionMap(self.imA)

    def matrix_for(self, side: str):
        """Im A on the requested side (converts common-point descriptors)."""
        if self.side == side:
            return self.imA
        if self.side != "both":
            raise OrientationMismatch(f"{self.side} descriptor has no {side} form")
        if side == "left":
            return self.imA
        b = common_point_vector(self.imA, "left")
        return _common_point_imA(b, "right")

    def circle(self, x) -> Circle:
        side = "left" if self.side == "both" else self.side
        return center_from_A(self.A, x, side)

    def gamma(self) -> VectorQuadraticMap:
        side = "left" if self.side == "both" else self.side
        return quaternionic_gamma(self.A, side)

    def coefficients(self):
        return [v for r in self.imA for v in r]


def _common_point_imA(b, side):
    """Im(b conj(x)) (left) or Im(conj(x) b) (right) as a matrix in x."""
    bq = Quaternion(*b)
    zero = b[0] * 0
    cols = []
    for k in range(4):
        e = [zero] * 4
        e[k] = zero + 1
        xbar = Quaternion(*e).conj()
        val = bq * xbar if side == "left" else xbar * bq
        cols.append(val.im.vector())
    return tuple(tuple(cols[k][r] for k in range(4)) for r in range(4))


def common_point_vector(imA, side: str = "left", tol: float = FIT_TOL):
    """b with imA(x) = Im(b conj(x)) (left) or Im(conj(x) b) (right), or None.

    Such maps are exactly the common-point bundles, whose circles all pass
    through b / (b, b).
    """
    exact = all(is_exact(v) for r in imA for v in r)
    zero = Fraction(0) if exact else 0.0
    columns = []
    for k in range(4):
        e = [zero] * 4
        e[k] = zero + 1
        columns.append([v for r in _common_point_imA(e, side)[1:] for v in r])
    target = [v for r in list(imA)[1:] for v in r]
    rows = [[columns[k][i] for k in range(4)] for i in range(12)]
    if exact:
        sol = solve(rows, [[t] for t in target])
        return None if sol is None else [s[0] for s in sol]
    Mb = np.array(rows, dtype=float)
    tv = np.array(target, dtype=float)
    b, *_ = np.linalg.lstsq(Mb, tv, rcond=None)
    scale = max(1.0, float(np.max(np.abs(tv))))
    if np.max(np.abs(Mb @ b - tv)) > tol * scale:
        return None
    return [float(v) for v in b]


def normalized_descriptor(side: str, im) -> BundleDescriptor:
    """Descriptor for Im A on ``side``, promoted to "both" for common-point maps."""
    b = common_point_vector(im, side)
    if b is not None:
        return BundleDescriptor("both", _common_point_imA(b, "left"))
    return BundleDescriptor(side, im)


def descriptor_from_A(A: LinearQuaternionMap, side: str) -> BundleDescriptor:
    return normalized_descriptor(side, A.imaginary().matrix)


# -- inverse problem -----------------------------------------------------------

def _target_im(circle: Circle, side: str):
    """Im A(x) demanded by one circle under the given side hypothesis."""
    x = circle.tangent
    exact = _exact_vec(x) and (circle.is_line or _exact_vec(circle.center))
    if circle.is_line:
        z = Fraction(0) if exact else 0.0
        return [z, z, z]
    X = Quaternion(*x)
    cinv = qinv(Quaternion(*circle.center))
    half = Fraction(1, 2) if exact else 0.5
    m = (X * cinv if side == "left" else cinv * X) * (-half)
    return [m.x, m.y, m.z]


def _fit_side(samples: Sequence[Circle], side: str, exact: bool):
    xs = [list(s.tangent) for s in samples]
    ms = [_target_im(s, side) for s in samples]
    if exact:
        X = solve(xs, ms)
        if X is None:
            return None
        imA = [[Fraction(0)] * 4] + [[X[c][r] for c in range(4)] for r in range(3)]
        return imA
    Xa = np.array(xs, dtype=float)
    Ma = np.array(ms, dtype=float)
    sol, *_ = np.linalg.lstsq(Xa, Ma, rcond=None)
    scale = max(float(np.max(np.abs(Ma))), 1e-300)
    resid = float(np.max(np.abs(Xa @ sol - Ma)))
    if resid > FIT_TOL * scale:
        return None
    return [[0.0] * 4] + [[float(sol[c, r]) for c in range(4)] for r in range(3)]


def fit_bundle(samples: Sequence[Circle]) -> Optional[BundleDescriptor]:
    """Recover (side, Im A) from circles of a bundle; None if inconsistent.

    The left hypothesis is tried first.  Data fitting the left side with a
    common-point map are reported as side "both".  With exactly four
    samples both hypotheses always fit, so the left one wins.
    """
    samples = list(samples)
    if any(len(s.tangent) != 4 for s in samples):
        raise UnsupportedDimension("bundle fitting is defined for n = 4 only")
    exact = all(_exact_vec(s.tangent) and (s.is_line or _exact_vec(s.center)) for s in samples)
    xs = [list(s.tangent) for s in samples]
    r = rank(xs) if exact else int(np.linalg.matrix_rank(np.array(xs, dtype=float)))
    if r < 4:
        raise NeedsMoreSamples(f"tangents span only {r} dimensions; need 4")
    left = _fit_side(samples, "left", exact)
    if left is not None:
        return normalized_descriptor("left", left)
    right = _fit_side(samples, "right", exact)
    if right is not None:
        return normalized_descriptor("right", right)
    return None


# -- barycentric combination ---------------------------------------------------


def half_inversion(c):
    """c -> c / (2 (c, c)); swaps circle centers and feet of inverted lines."""
    cc = inner(c, c)
    return tuple(v / (2 * cc) for v in c)


def barycentric_circle(s1: Circle, s2: Circle, t) -> Circle:
    """Combine two circles tangent at 0 by combining their inverted lines."""
    x = s1.tangent
    if rank([list(x), list(s2.tangent)], 0 if _exact_vec(x) and _exact_vec(s2.tangent) else 1e-12) != 1:
        raise ValueError("circles must share the tangent direction at 0")
    zero = x[0] * 0
    p1 = (zero,) * len(x) if s1.is_line else half_inversion(s1.center)
    p2 = (zero,) * len(x) if s2.is_line else half_inversion(s2.center)
    p = tuple(t * a + (1 - t) * b for a, b in zip(p1, p2))
    if all(v == 0 for v in p):
        return Circle(x, AT_INFINITY)
    return Circle(x, half_inversion(p))


def barycentric_combine(b1: BundleDescriptor, b2: BundleDescriptor, t) -> BundleDescriptor:
    """t * Im A1 + (1 - t) * Im A2 for descriptors of the same orientation."""
    sides = {b1.side, b2.side} - {"both"}
    if len(sides) > 1:
        raise OrientationMismatch("cannot combine left and right bundles")
    side = sides.pop() if sides else "left"
    m1, m2 = b1.matrix_for(side), b2.matrix_for(side)
    im = tuple(tuple(t * a + (1 - t) * b for a, b in zip(r1, r2)) for r1, r2 in zip(m1, m2))
    return normalized_descriptor(side, im)
