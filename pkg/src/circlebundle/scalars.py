"""Scalar backends and small exact linear algebra.

Two backends are supported: exact rationals (:class:`fractions.Fraction`)
and binary floats.  Complexified quantities use :class:`Gaussian` on the
exact backend and the builtin ``complex`` on the float backend.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

EXACT = "exact"
FLOAT = "float"


class UnsupportedBackend(TypeError):
    """An exact-only operation received floating-point data."""


def is_exact(value) -> bool:
    if isinstance(value, (Rational, Gaussian)):
        return True
    if isinstance(value, (float, complex)):
        return False
    coeffs = getattr(value, "coefficients", None)
    if coeffs is not None:
        return all(is_exact(c) for c in coeffs())
    raise TypeError(f"not a scalar: {value!r}")


def require_exact(values, what="operation"):
    for v in values:
        if not is_exact(v):
            raise UnsupportedBackend(f"{what} requires the exact backend, got {v!r}")


@dataclass(frozen=True)
class Gaussian:
    """Element of Q(i): ``re + im*i`` with rational parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def _lift(other):
        if isinstance(other, Gaussian):
            return other
        if isinstance(other, Rational):
            return Gaussian(Fraction(other))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Gaussian(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Gaussian(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Gaussian(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self):
        return Gaussian(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        p = self * o.conjugate()
        return Gaussian(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        out, base = Gaussian(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"Gaussian({fmt_exact(self.re)}, {fmt_exact(self.im)})"


I = Gaussian(0, 1)


# -- serialization -----------------------------------------------------------

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def fmt_exact(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_exact(text) -> Fraction:
    """Parse ``"p/q"`` (or a bare integer) into a Fraction."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational scalar: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"exact scalars must be strings 'p/q', got {text!r}")
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"malformed rational scalar {text!r}")
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


def dump_scalar(value):
    if isinstance(value, Gaussian):
        return {"re": fmt_exact(value.re), "im": fmt_exact(value.im)}
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, Rational):
        return fmt_exact(value)
    return float(value)


def load_scalar(value, backend: str):
    if backend == EXACT:
        return parse_exact(value)
    if backend == FLOAT:
        if isinstance(value, str):
            return float(parse_exact(value)) if "/" in value else float(value)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError(f"malformed float scalar {value!r}")
        return float(value)
    raise ValueError(f"unknown backend {backend!r}")


def to_float(value) -> float:
    return float(value)


# -- exact (and float) elimination -------------------------------------------


def _is_zero(v, tol):
    return abs(v) <= tol if tol else v == 0


def rref(rows, tol=0):
    """Reduced row echelon form. Returns (matrix, pivot_columns).

    Works over any field whose elements support + - * /; ``tol`` > 0 switches
    to partial pivoting with an absolute zero threshold for floats.
    """
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        if tol:
            best = max(range(r, len(m)), key=lambda k: abs(m[k][c]))
            if _is_zero(m[best][c], tol):
                continue
            piv = best
        else:
            piv = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
            if piv is None:
                continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [v / p for v in m[r]]
        for k in range(len(m)):
            if k != r and not _is_zero(m[k][c], 0):
                f = m[k][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows, tol=0) -> int:
    return len(rref(rows, tol)[1])


def nullspace(rows, ncols=None):
    """Basis of {v : rows @ v = 0} over the scalars of ``rows``."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ncols = len(rows[0])
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    zero = rows[0][0] * 0
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = zero + 1
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][f]
        basis.append(v)
    return basis


def solve(rows, rhs):
    """Solve ``rows @ X = rhs`` exactly for X (rhs may have several columns).

    Returns None when the system is inconsistent.  Free variables are set to 0.
    """
    n = len(rows[0])
    k = len(rhs[0])
    aug = [list(r) + list(b) for r, b in zip(rows, rhs)]
    m, pivots = rref(aug)
    if any(p >= n for p in pivots):
        return None
    zero = rows[0][0] * 0
    x = [[zero] * k for _ in range(n)]
    for r, pc in enumerate(pivots):
        x[pc] = m[r][n:]
    return x


def det(rows):
    """Determinant by exact elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    result = m[0][0] * 0 + 1
    for c in range(n):
        piv = next((k for k in range(c, n) if m[k][c] != 0), None)
        if piv is None:
            return result * 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        p = m[c][c]
        result = result * p
        for k in range(c + 1, n):
            f = m[k][c] / p
            if f != 0:
                m[k] = [a - f * b for a, b in zip(m[k], m[c])]
    return result * sign


def matmul(a, b):
    return [[sum((x * y for x, y in zip(row, col)), row[0] * 0) for col in zip(*b)] for row in a]


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v)), row[0] * 0) for row in a]


def transpose(a):
    return [list(c) for c in zip(*a)]


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), u[0] * 0)
