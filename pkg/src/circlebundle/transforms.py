"""Maps that round lines, and a numerical check that they do."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence

import numpy as np

from .bundles import LinearQuaternionMap
from .circlefit import CircleFit, FitError, fit_circle
from .cone import ConditionViolation, VectorQuadraticMap, check_conditions
from .poly import Poly
from .quaternions import SIDES, Quaternion, inner, mul_operator, qinv
from .scalars import is_exact, matvec


class PoleError(ZeroDivisionError):
    """The map is evaluated on the zero locus of its denominator."""


class OutOfDomain(ValueError):
    pass


def invert(x):
    """Inversion in the unit sphere centred at 0."""
    xx = inner(x, x)
    if xx == 0:
        raise ValueError("cannot invert the origin")
    return [v / xx for v in x]


def t_a(a, x):
    """Reflection in a-perp followed by inversion in the sphere |y - a| = |a|.

    Closed form ((a,a) x + (x,x) a) / ((a,a) + 2 (a,x) + (x,x)); fixes 0 and
    has identity differential there.
    """
    aa = inner(a, a)
    if aa == 0:
        raise ValueError("a must be nonzero")
    xx = inner(x, x)
    den = aa + 2 * inner(a, x) + xx
    if den == 0:
        raise PoleError("T^a has a pole at x = -a")
    return [(aa * xi + xx * ai) / den for xi, ai in zip(x, a)]


def t_a_quadratic(a) -> VectorQuadraticMap:
    """Second-order term ((x,x) a - 2 (a,x) x) / (a,a) of T^a."""
    n = len(a)
    aa = inner(a, a)
    if aa == 0:
        raise ValueError("a must be nonzero")
    mats = []
    for k in range(n):
        M = [[Fraction(0) if is_exact(aa) else 0.0 for _ in range(n)] for _ in range(n)]
        for i in range(n):
            M[i][i] = M[i][i] + a[k] / aa
            # -2 (a, x) x_k contributes -a_i x_i x_k
            M[i][k] = M[i][k] - a[i] / aa
            M[k][i] = M[k][i] - a[i] / aa
        mats.append(M)
    return VectorQuadraticMap(mats)


# -- quaternionic fractional transformations ----------------------------------


@dataclass(frozen=True)
class AffineMap:
    linear: tuple
    const: tuple

    def __post_init__(self):
        lin = tuple(tuple(r) for r in self.linear)
        const = tuple(self.const)
        if len(lin) != len(const) or any(len(r) != len(const) for r in lin):
            raise ValueError("affine map needs a square linear part matching the constant")
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "const", const)

    @classmethod
    def identity(cls, n=4, one=Fraction(1)):
        zero = one * 0
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], [zero] * n)

    @classmethod
    def constant(cls, c):
        zero = c[0] * 0
        n = len(c)
        return cls([[zero] * n for _ in range(n)], c)

    def __call__(self, x):
        return [c + v for c, v in zip(self.const, matvec(self.linear, x))]

    def coefficients(self):
        return [v for r in self.linear for v in r] + list(self.const)

    def is_zero(self):
        return all(v == 0 for v in self.coefficients())

    def to_float(self):
        return AffineMap([[float(v) for v in r] for r in self.linear], [float(v) for v in self.const])


@dataclass(frozen=True)
class FractionalTransform:
    """x -> B(x)^{-1} A(x) (left) or A(x) B(x)^{-1} (right) in quaternions."""

    side: str
    numerator: AffineMap
    denominator: AffineMap

    def __post_init__(self):
        if self.side not in SIDES:
            raise ValueError(f"side must be 'left' or 'right', got {self.side!r}")
        if len(self.numerator.const) != 4 or len(self.denominator.const) != 4:
            raise ValueError("fractional transforms act on R^4")
        if self.denominator.is_zero():
            raise ValueError("denominator is identically zero")

    def __call__(self, x):
        num = Quaternion(*self.numerator(x))
        den = Quaternion(*self.denominator(x))
        n2 = den.norm2()
        if n2 == 0 or (not is_exact(n2) and n2 < 1e-300):
            raise PoleError(f"denominator vanishes at {list(x)}")
        inv = qinv(den)
        out = inv * num if self.side == "left" else num * inv
        return out.vector()

    def to_float(self):
        return FractionalTransform(self.side, self.numerator.to_float(), self.denominator.to_float())


def qft_from_A(A: LinearQuaternionMap, side: str = "left") -> FractionalTransform:
    """x -> (1 - A(x))^{-1} x (left) or x (1 - A(x))^{-1} (right)."""
    m = A.matrix
    one = m[0][0] * 0 + 1
    zero = one * 0
    den = AffineMap([[-v for v in r] for r in m], [one, zero, zero, zero])
    return FractionalTransform(side, AffineMap.identity(4, one), den)


def quaternionic_projective(a, b, c, d) -> FractionalTransform:
    """x -> (x a + b)^{-1} (x c + d)."""
    a, b, c, d = (q if isinstance(q, Quaternion) else Quaternion(*q) for q in (a, b, c, d))
    return FractionalTransform(
        "left",
        AffineMap(mul_operator(c, "right"), d.vector()),
        AffineMap(mul_operator(a, "right"), b.vector()),
    )


# -- rectifier synthesis --------------------------------------------------------


def _float_tensor(gamma: VectorQuadraticMap):
    return np.array([[[float(v) for v in r] for r in M] for M in gamma.matrices])


def _quadratic_matrix(p: Poly):
    n = p.nvars
    M = np.zeros((n, n))
    for mono, c in p.terms.items():
        idx = [i for i, e in enumerate(mono) for _ in range(e)]
        i, j = idx
        if i == j:
            M[i, i] += float(c)
        else:
            M[i, j] += float(c) / 2
            M[j, i] += float(c) / 2
    return M


@dataclass(frozen=True)
class RectifierMap:
    """x -> T^a(x + Gamma'(x) f(x)) with f = 2 / (1 + sqrt(1 - 4 mu(x))).

    ``a`` is None when no T^a stage is needed.  ``radius`` certifies
    1 - 4 mu > 0 (in fact 4 |mu| <= 1/2) and keeps clear of the T^a pole.
    """

    gamma: VectorQuadraticMap
    gamma_prime: VectorQuadraticMap
    mu: Poly
    a: Optional[list]
    radius: float
    _tensor: np.ndarray = field(repr=False, compare=False, default=None)
    _mu_matrix: np.ndarray = field(repr=False, compare=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "_tensor", _float_tensor(self.gamma_prime))
        object.__setattr__(self, "_mu_matrix", _quadratic_matrix(self.mu))

    @property
    def n(self):
        return self.gamma.n

    def f(self, x):
        x = np.asarray(x, dtype=float)
        mu = float(x @ self._mu_matrix @ x)
        disc = 1.0 - 4.0 * mu
        if disc <= 0:
            raise OutOfDomain(f"1 - 4 mu(x) = {disc} <= 0 at x = {x.tolist()}")
        return 2.0 / (1.0 + math.sqrt(disc))

    def __call__(self, x):
        x = np.asarray([float(v) for v in x])
        g = np.einsum("kij,i,j->k", self._tensor, x, x)
        y = x + g * self.f(x)
        if self.a is None:
            return y.tolist()
        return t_a([float(v) for v in self.a], y.tolist())


def certified_radius(mu: Poly, a=None) -> float:
    """Radius with 4 sup|mu| <= 1/2 and |x| <= |a|/4 on the ball."""
    norm1 = sum(abs(float(c)) for c in mu.terms.values())
    r = math.inf if norm1 == 0 else math.sqrt(1.0 / (8.0 * norm1))
    if a is not None:
        r = min(r, math.sqrt(float(inner(a, a))) / 4)
    return r


def synthesize_rectifier(gamma: VectorQuadraticMap) -> RectifierMap:
    """Germ with identity differential and quadratic term Gamma that rounds lines."""
    res = check_conditions(gamma)
    if not res.satisfied:
        raise ConditionViolation("map violates the cone conditions", res.remainders)
    a = None
    gamma_prime = gamma
    mu = res.mu
    if not res.lam.is_zero():
        v = res.lam.linear_coeffs()
        vv = inner(v, v)
        # lam(x) = -(a, x)/(a, a)
        a = [-c / vv for c in v]
        gamma_prime = gamma - t_a_quadratic(a)
        res2 = check_conditions(gamma_prime)
        assert res2.satisfied and res2.lam.is_zero()
        mu = res2.mu
    return RectifierMap(gamma, gamma_prime, mu, a, certified_radius(mu, a))


# -- numeric verification ----------------------------------------------------------


@dataclass(frozen=True)
class LineFit:
    direction: List[float]
    fit: Optional[CircleFit]
    residual: float
    relative_residual: float
    passed: bool
    pole: bool = False
    error: str = ""


@dataclass(frozen=True)
class FitReport:
    lines: List[LineFit]
    max_residual: float
    tol: float
    passed: bool


def chebyshev_parameters(radius: float, count: int) -> np.ndarray:
    k = np.arange(count)
    return radius * np.cos((2 * k + 1) * np.pi / (2 * count))


def verify_rounds_lines(
    transform: Callable,
    directions: Sequence,
    radius: float,
    tol: float,
    samples_per_line: int = 24,
) -> FitReport:
    """Check that ``transform`` maps each line t*d (|t| <= radius) onto a circle.

    A line passes when the largest distance from its image points to the
    fitted circle is below tol * radius_of_fit (tol for fitted lines).
    """
    if samples_per_line < 20:
        raise ValueError("need at least 20 samples per line")
    ts = chebyshev_parameters(radius, samples_per_line)
    out = []
    for d in directions:
        d = np.asarray([float(v) for v in d])
        d = d / np.linalg.norm(d)
        try:
            pts = [transform((t * d).tolist()) for t in ts]
        except (PoleError, ZeroDivisionError, OutOfDomain) as exc:
            out.append(LineFit(d.tolist(), None, math.inf, math.inf, False, True, str(exc)))
            continue
        try:
            fit = fit_circle(pts)
        except FitError as exc:
            out.append(LineFit(d.tolist(), None, math.inf, math.inf, False, False, str(exc)))
            continue
        scale = 1.0 if fit.is_line else fit.radius
        rel = fit.residual / scale
        out.append(LineFit(d.tolist(), fit, fit.residual, rel, rel < tol))
    worst = max((lf.relative_residual for lf in out), default=0.0)
    return FitReport(out, worst, tol, all(lf.passed for lf in out))
