"""Polynomial algebra modulo the asymptotic cone (x, x) = 0.

The cone form is monic in x0^2, so division by it is plain substitution
x0^2 -> -(x1^2 + ... + x{n-1}^2).  Remainders are reduced to the normal form
in which no monomial contains x0 to a power >= 2; a polynomial vanishes on
the complex cone exactly when that remainder is zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .poly import Poly, PolyMap
from .quaternions import QI, QJ, QK, mul_operator
from .scalars import Gaussian, I as GAUSS_I, matvec, rank, require_exact


class ConditionViolation(ValueError):
    """Raised when a quadratic map fails the rectifiability conditions."""

    def __init__(self, message, remainders=None):
        super().__init__(message)
        self.remainders = remainders or {}


class UnsupportedDimension(ValueError):
    pass


# -- vector quadratic maps ---------------------------------------------------


def _symmetrize(M):
    n = len(M)
    M = [[Fraction(v) if isinstance(v, int) else v for v in row] for row in M]
    return tuple(tuple((M[i][j] + M[j][i]) / 2 for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class VectorQuadraticMap:
    """Homogeneous quadratic map R^n -> R^n; output k is x^T M_k x."""

    matrices: Tuple[Tuple[Tuple[object, ...], ...], ...]

    def __post_init__(self):
        mats = tuple(tuple(tuple(row) for row in M) for M in self.matrices)
        n = len(mats)
        for M in mats:
            if len(M) != n or any(len(r) != n for r in M):
                raise ValueError(f"expected {n} matrices of size {n}x{n}")
            if any(M[i][j] != M[j][i] for i in range(n) for j in range(i)):
                raise ValueError("coefficient matrices must be symmetric")
        object.__setattr__(self, "matrices", mats)

    @property
    def n(self):
        return len(self.matrices)

    @classmethod
    def from_matrices(cls, matrices, symmetrize=True):
        if symmetrize:
            matrices = [_symmetrize(M) for M in matrices]
        return cls(matrices)

    @classmethod
    def zero(cls, n, zero=Fraction(0)):
        return cls([[[zero] * n for _ in range(n)] for _ in range(n)])

    @classmethod
    def from_polymap(cls, P: PolyMap):
        n = P.nvars
        if len(P) != n:
            raise ValueError("a vector quadratic map needs n components in n variables")
        mats = []
        for comp in P:
            if not comp.is_homogeneous(2):
                raise ValueError(f"component is not a quadratic form: {comp}")
            M = [[Fraction(0)] * n for _ in range(n)]
            for mono, c in comp.terms.items():
                idx = [i for i, e in enumerate(mono) for _ in range(e)]
                i, j = idx
                if i == j:
                    M[i][i] = c
                else:
                    M[i][j] = M[j][i] = c / 2
            mats.append(M)
        return cls(mats)

    def polymap(self) -> PolyMap:
        return PolyMap(Poly.quadratic_form(M) for M in self.matrices)

    def __call__(self, x):
        out = []
        for M in self.matrices:
            total = 0
            for i in range(self.n):
                if x[i] == 0:
                    continue
                row = M[i]
                s = 0
                for j in range(self.n):
                    s = s + row[j] * x[j]
                total = total + x[i] * s
            out.append(total)
        return out

    def __add__(self, other):
        return VectorQuadraticMap(
            [[[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)] for A, B in zip(self.matrices, other.matrices)]
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s):
        return VectorQuadraticMap([[[a * s for a in r] for r in M] for M in self.matrices])

    def coefficients(self):
        return [v for M in self.matrices for r in M for v in r]

    def is_zero(self):
        return all(v == 0 for v in self.coefficients())

    def coordinate_vector(self):
        """Coefficients in the monomial basis x_i x_j (i <= j), component-major.

        Length n * n(n+1)/2; used for exact rank computations.
        """
        out = []
        for M in self.matrices:
            for i in range(self.n):
                for j in range(i, self.n):
                    out.append(M[i][i] if i == j else 2 * M[i][j])
        return out

    def to_float(self):
        return VectorQuadraticMap([[[float(v) for v in r] for r in M] for M in self.matrices])


def gauge_map(lam: Poly) -> VectorQuadraticMap:
    """The pure-gauge map x -> lam(x) x for a linear form lam."""
    n = lam.nvars
    return VectorQuadraticMap.from_polymap(PolyMap.identity(n).scale(lam))


def common_point_map(b) -> VectorQuadraticMap:
    """x -> b (x, x)."""
    n = len(b)
    zero = b[0] * 0
    return VectorQuadraticMap([[[b[k] if i == j else zero for j in range(n)] for i in range(n)] for k in range(n)])


# -- cone division -----------------------------------------------------------


@dataclass(frozen=True)
class ConeDivision:
    quotient: object  # Poly or PolyMap
    remainder: object

    @property
    def exact(self):
        return self.remainder.is_zero()


def _divide_poly(P: Poly) -> Tuple[Poly, Poly]:
    n = P.nvars
    work = dict(P.terms)
    quot: Dict[tuple, object] = {}
    rem: Dict[tuple, object] = {}
    while work:
        mono = max(work, key=lambda m: m[0])
        c = work.pop(mono)
        if c == 0:
            continue
        if mono[0] < 2:
            rem[mono] = rem.get(mono, 0) + c
            continue
        # x0^e * m = x0^(e-2) * m * ((x,x) - (x1^2 + ... + x{n-1}^2))
        base = list(mono)
        base[0] -= 2
        base = tuple(base)
        quot[base] = quot.get(base, 0) + c
        for k in range(1, n):
            e = list(base)
            e[k] += 2
            e = tuple(e)
            work[e] = work.get(e, 0) - c
    return Poly(n, quot), Poly(n, rem)


def cone_divide(P) -> ConeDivision:
    """Divide a polynomial (or polynomial map) by (x, x) exactly.

    ``P == (x, x) * quotient + remainder`` with the remainder in normal form.
    """
    require_exact(P.coefficients(), "cone division")
    if isinstance(P, Poly):
        return ConeDivision(*_divide_poly(P))
    pairs = [_divide_poly(p) for p in P]
    return ConeDivision(PolyMap(q for q, _ in pairs), PolyMap(r for _, r in pairs))


# -- rectifiability conditions ----------------------------------------------


@dataclass(frozen=True)
class ConditionCheck:
    satisfied: bool
    lam: Optional[Poly]
    mu: Optional[Poly]
    remainders: Dict[str, Poly] = field(default_factory=dict)


def check_conditions(gamma: VectorQuadraticMap) -> ConditionCheck:
    """Test (Gamma, x) = (Gamma, Gamma) = 0 on the cone.

    On success returns lam = (Gamma, x)/(x, x) and mu = (Gamma, Gamma)/(x, x).
    """
    require_exact(gamma.coefficients(), "check_conditions")
    G = gamma.polymap()
    x = PolyMap.identity(gamma.n)
    d1 = cone_divide(G.dot(x))
    d2 = cone_divide(G.dot(G))
    rem = {}
    if not d1.exact:
        rem["gamma_x"] = d1.remainder
    if not d2.exact:
        rem["gamma_gamma"] = d2.remainder
    if rem:
        return ConditionCheck(False, None, None, rem)
    return ConditionCheck(True, d1.quotient, d2.quotient)


def _require(gamma) -> ConditionCheck:
    res = check_conditions(gamma)
    if not res.satisfied:
        raise ConditionViolation("map violates the cone conditions", res.remainders)
    return res


def canonicalize(gamma: VectorQuadraticMap) -> VectorQuadraticMap:
    """Representative of the gauge class with (Gamma, x) identically zero."""
    res = _require(gamma)
    if res.lam.is_zero():
        return gamma
    return gamma - gauge_map(res.lam)


# -- parallel decomposition --------------------------------------------------


@dataclass(frozen=True)
class ParallelDecomposition:
    b: List[object]
    lam: Poly


def parallel_decompose(gamma: VectorQuadraticMap) -> Optional[ParallelDecomposition]:
    """Write Gamma(x) = b (x, x) + lam(x) x, or return None.

    Succeeds iff Gamma is parallel to x on the cone.  Every wedge component
    Gamma_i x_j - Gamma_j x_i is divided by (x, x); b is read off the linear
    quotients, and the reconstruction is re-expanded and checked exactly.
    """
    require_exact(gamma.coefficients(), "parallel_decompose")
    n = gamma.n
    G = gamma.polymap()
    xs = Poly.variables(n)
    zero = Fraction(0)
    quotients = {}
    for i in range(n):
        for j in range(i + 1, n):
            d = cone_divide(G[i] * xs[j] - G[j] * xs[i])
            if not d.exact:
                return None
            quotients[i, j] = d.quotient

    # quotient_ij = b_i x_j - b_j x_i
    b = []
    for i in range(n):
        j = 1 if i == 0 else 0
        if i < j:
            b.append(quotients[i, j].linear_coeffs()[j])
        else:
            b.append(-quotients[j, i].linear_coeffs()[j])

    rest = (G - common_point_map(b).polymap())
    lam = rest[0].divide_by_var(0)
    if lam is None:
        return None
    if not lam.is_zero() and not lam.is_homogeneous(1):
        return None
    lam = lam if not lam.is_zero() else Poly.zero(n)
    if rest != PolyMap.identity(n).scale(lam):
        return None
    return ParallelDecomposition([zero + v for v in b], lam)


# -- Segre sampling and generating planes (n = 4) ----------------------------


def _unit_i(values):
    if any(isinstance(v, complex) for v in values):
        return 1j
    return GAUSS_I


def sample_cone_point(u, v):
    """Point of the complex cone in C^4 from Segre parameters u, v in C^2.

    Coordinates a = x0 + i x1, b = x0 - i x1, c = x2 + i x3, d = x2 - i x3
    turn the cone into ab + cd = 0, parameterised by a = u0 v0, b = u1 v1,
    c = u0 v1, d = -u1 v0.
    """
    u0, u1 = u
    v0, v1 = v
    if all(t == 0 for t in (u0, u1)) or all(t == 0 for t in (v0, v1)):
        raise ValueError("Segre parameters must be nonzero")
    i = _unit_i([u0, u1, v0, v1])
    a, b = u0 * v0, u1 * v1
    c, d = u0 * v1, -(u1 * v0)
    half = Fraction(1, 2) if i is GAUSS_I else 0.5
    x = [(a + b) * half, (a - b) * half / i, (c + d) * half, (c - d) * half / i]
    if i is GAUSS_I:
        x = [Gaussian(0) + t for t in x]
        assert sum((t * t for t in x), Gaussian(0)) == 0
    return x


def _quaternion_units(family):
    if family not in ("left", "right"):
        raise ValueError(f"family must be 'left' or 'right', got {family!r}")
    return [mul_operator(q, family) for q in (QI, QJ, QK)]


def _bilinear(u, v):
    total = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        total = total + a * b
    return total


@dataclass(frozen=True)
class GeneratingPlane:
    basis: Tuple[Tuple[object, ...], Tuple[object, ...]]
    family: str

    def contains(self, v) -> bool:
        return rank([list(self.basis[0]), list(self.basis[1]), list(v)]) == 2

    def same_as(self, other: "GeneratingPlane") -> bool:
        return all(self.contains(v) for v in other.basis) and all(other.contains(v) for v in self.basis)

    def is_null(self) -> bool:
        v1, v2 = self.basis
        return _bilinear(v1, v1) == 0 and _bilinear(v1, v2) == 0 and _bilinear(v2, v2) == 0


def generating_plane(x, family: str = "left") -> GeneratingPlane:
    """The plane of the given ruling of the cone through the null vector x.

    It is span{x, Ix, Jx, Kx} for the complexified left (or right)
    multiplications by i, j, k.
    """
    if len(x) != 4:
        raise UnsupportedDimension("generating planes are defined for n = 4 only")
    require_exact(x, "generating_plane")
    x = [Gaussian(0) + t for t in x]
    if all(t == 0 for t in x):
        raise ValueError("x must be nonzero")
    if _bilinear(x, x) != 0:
        raise ValueError("x is not on the cone")
    candidates = [x] + [matvec(U, x) for U in _quaternion_units(family)]
    basis = [x]
    for v in candidates[1:]:
        if rank(basis + [v]) > len(basis):
            basis.append(v)
    if len(basis) != 2 or rank(candidates) != 2:
        raise AssertionError("span{x, Ix, Jx, Kx} must have rank 2 on the cone")
    plane = GeneratingPlane((tuple(basis[0]), tuple(basis[1])), family)
    assert plane.is_null()
    return plane
