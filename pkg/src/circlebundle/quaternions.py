"""Quaternion arithmetic over exact rationals, floats or any commutative ring.

Coordinates are always ordered (1, i, j, k) <-> (x0, x1, x2, x3).  The
component type is left open so the same class multiplies Fractions, floats,
Gaussian rationals and polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, NamedTuple, Optional

from .scalars import is_exact, matmul, transpose

Side = Literal["left", "right"]
SIDES = ("left", "right")


@dataclass(frozen=True)
class Quaternion:
    w: object
    x: object = 0
    y: object = 0
    z: object = 0

    @classmethod
    def from_vector(cls, v):
        w, x, y, z = v
        return cls(w, x, y, z)

    @classmethod
    def real(cls, r):
        return cls(r, r * 0, r * 0, r * 0)

    def __iter__(self):
        return iter((self.w, self.x, self.y, self.z))

    def __getitem__(self, idx):
        return (self.w, self.x, self.y, self.z)[idx]

    def coefficients(self):
        return (self.w, self.x, self.y, self.z)

    def vector(self):
        return [self.w, self.x, self.y, self.z]

    def __add__(self, other):
        if not isinstance(other, Quaternion):
            return Quaternion(self.w + other, self.x, self.y, self.z)
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Quaternion):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        a1, b1, c1, d1 = self
        a2, b2, c2, d2 = other
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __rmul__(self, other):
        # scalar * quaternion; scalars are central
        return Quaternion(other * self.w, other * self.x, other * self.y, other * self.z)

    def __truediv__(self, other):
        if isinstance(other, Quaternion):
            return self * qinv(other)
        return Quaternion(self.w / other, self.x / other, self.y / other, self.z / other)

    def conj(self):
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self):
        """(a, a) = a * conj(a), as a scalar."""
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    @property
    def re(self):
        return self.w

    @property
    def im(self):
        return Quaternion(self.w * 0, self.x, self.y, self.z)

    def is_zero(self):
        return not any(c != 0 for c in self)

    def __repr__(self):
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


ONE = Quaternion(Fraction(1), Fraction(0), Fraction(0), Fraction(0))
QI = Quaternion(Fraction(0), Fraction(1), Fraction(0), Fraction(0))
QJ = Quaternion(Fraction(0), Fraction(0), Fraction(1), Fraction(0))
QK = Quaternion(Fraction(0), Fraction(0), Fraction(0), Fraction(1))
BASIS = (ONE, QI, QJ, QK)


def qmul(a: Quaternion, b: Quaternion) -> Quaternion:
    return a * b


def qconj(a: Quaternion) -> Quaternion:
    return a.conj()


def qinv(a: Quaternion) -> Quaternion:
    n = a.norm2()
    if n == 0:
        raise ZeroDivisionError("cannot invert the zero quaternion")
    c = a.conj()
    return Quaternion(c.w / n, c.x / n, c.y / n, c.z / n)


def inner(u, v):
    """Euclidean inner product of coordinate sequences (bilinear, no conjugation)."""
    total = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        total = total + a * b
    return total


def mul_operator(a: Quaternion, side: Side = "left"):
    """4x4 matrix of x -> a*x (left) or x -> x*a (right), as nested lists."""
    if side not in SIDES:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    cols = []
    for e in BASIS:
        img = a * e if side == "left" else e * a
        cols.append(img.vector())
    return transpose(cols)


class Detection(NamedTuple):
    side: str  # "left" | "right" | "both"
    a: Quaternion


def _max_abs(rows):
    return max(abs(v) for r in rows for v in r)


def detect_quaternionic_multiplication(M, tol: float = 1e-9) -> Optional[Detection]:
    """Recognise M as a quaternionic multiplication, or return None.

    M must be a scalar plus a skew-symmetric matrix and a scalar multiple of
    an orthogonal one.  The quaternion is the first column; the side follows
    from the signs of the entries (1,2), (1,3), (2,3).  Exact input is
    compared exactly; float input uses ``tol`` relative to max|M|.
    """
    exact = all(is_exact(v) for r in M for v in r)
    scale = _max_abs(M)
    if exact:
        close = lambda u, v: u == v  # noqa: E731
    else:
        gate = tol * (scale if scale else 1.0)
        close = lambda u, v: abs(u - v) <= gate  # noqa: E731

    # almost skew-symmetric: M + M^T = 2 a0 * identity
    a0 = M[0][0]
    for i in range(4):
        if not close(M[i][i], a0):
            return None
        for j in range(i + 1, 4):
            if not close(M[i][j], -M[j][i]):
                return None

    # almost orthogonal: M^T M = c * identity
    gram = matmul(transpose(M), M)
    c = gram[0][0]
    if exact:
        ortho_ok = all(gram[i][j] == (c if i == j else 0) for i in range(4) for j in range(4))
    else:
        gate2 = tol * (scale * scale if scale else 1.0)
        ortho_ok = all(
            abs(gram[i][j] - (c if i == j else 0)) <= gate2 for i in range(4) for j in range(4)
        )
    if not ortho_ok:
        return None

    a = Quaternion(M[0][0], M[1][0], M[2][0], M[3][0])
    alpha, beta, gamma = M[1][2], M[1][3], M[2][3]
    # Hamilton convention ij = k, matrices acting on column vectors
    left = close(alpha, -a.z) and close(beta, a.y) and close(gamma, -a.x)
    right = close(alpha, a.z) and close(beta, -a.y) and close(gamma, a.x)
    if left and right:
        return Detection("both", a)
    if left:
        return Detection("left", a)
    if right:
        return Detection("right", a)
    return None
