"""Sparse multivariate polynomials with exact (or float) coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Tuple

Monomial = Tuple[int, ...]


class Poly:
    """Polynomial in variables x0..x{n-1}, stored as {exponent tuple: coeff}.

    Zero coefficients are never stored, so ``p.is_zero()`` is a syntactic test.
    Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Monomial, object] | None = None):
        self.nvars = nvars
        clean = {}
        for mono, c in (terms or {}).items():
            if len(mono) != nvars:
                raise ValueError(f"monomial {mono} has wrong arity for n={nvars}")
            if c != 0:
                clean[tuple(mono)] = c
        self.terms = clean

    # constructors
    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def const(cls, n, c):
        return cls(n, {(0,) * n: c})

    @classmethod
    def var(cls, n, i, coeff=Fraction(1)):
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): coeff})

    @classmethod
    def variables(cls, n):
        return [cls.var(n, i) for i in range(n)]

    @classmethod
    def linear(cls, coeffs):
        n = len(coeffs)
        return sum((cls.var(n, i, c) for i, c in enumerate(coeffs)), cls.zero(n))

    @classmethod
    def quadratic_form(cls, M):
        """x^T M x for a square matrix M (symmetry not required)."""
        n = len(M)
        terms: Dict[Monomial, object] = {}
        for i in range(n):
            for j in range(n):
                if M[i][j] == 0:
                    continue
                e = [0] * n
                e[i] += 1
                e[j] += 1
                key = tuple(e)
                terms[key] = terms.get(key, 0) + M[i][j]
        return cls(n, terms)

    @classmethod
    def norm_form(cls, n):
        """(x, x) = x0^2 + ... + x{n-1}^2."""
        return cls.quadratic_form([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    # inspection
    def coefficients(self):
        return self.terms.values()

    def coeff(self, mono: Iterable[int]):
        return self.terms.get(tuple(mono), 0)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self, d=None):
        degs = {sum(m) for m in self.terms}
        if not degs:
            return True
        return len(degs) == 1 and (d is None or d in degs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if other == 0:
            return not self.terms
        return self == Poly.const(self.nvars, other)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different numbers of variables")
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return Poly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(self.nvars, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        terms: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return Poly(self.nvars, terms)

    def __rmul__(self, other):
        return Poly(self.nvars, {m: other * c for m, c in self.terms.items()})

    def __truediv__(self, scalar):
        return Poly(self.nvars, {m: c / scalar for m, c in self.terms.items()})

    def map_coeffs(self, fn):
        return Poly(self.nvars, {m: fn(c) for m, c in self.terms.items()})

    def __call__(self, point):
        total = 0
        for mono, c in self.terms.items():
            term = c
            for x, e in zip(point, mono):
                if e:
                    term = term * x**e
            total = total + term
        return total

    def divide_by_var(self, i):
        """Exact division by x_i; None if some monomial lacks x_i."""
        terms = {}
        for m, c in self.terms.items():
            if m[i] == 0:
                return None
            e = list(m)
            e[i] -= 1
            terms[tuple(e)] = c
        return Poly(self.nvars, terms)

    def linear_coeffs(self):
        """Coefficient vector of a homogeneous linear polynomial."""
        if not self.is_homogeneous(1) and not self.is_zero():
            raise ValueError(f"not a linear form: {self}")
        out = []
        for i in range(self.nvars):
            e = [0] * self.nvars
            e[i] = 1
            out.append(self.terms.get(tuple(e), Fraction(0)))
        return out

    def __repr__(self):
        return f"Poly({self.nvars}, {format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def format_monomial(mono: Monomial) -> str:
    parts = []
    for i, e in enumerate(mono):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) if parts else "1"


def parse_monomial(text: str, n: int) -> Monomial:
    e = [0] * n
    text = text.strip()
    if text == "1":
        return tuple(e)
    for factor in text.split("*"):
        name, _, power = factor.strip().partition("^")
        if not name.startswith("x"):
            raise ValueError(f"malformed monomial {text!r}")
        idx = int(name[1:])
        if not 0 <= idx < n:
            raise ValueError(f"variable {name} out of range for n={n}")
        e[idx] += int(power) if power else 1
    return tuple(e)


def _sort_key(mono):
    return (-sum(mono), tuple(-e for e in mono))


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for mono in sorted(p.terms, key=_sort_key):
        c = p.terms[mono]
        out.append(f"({c})*{format_monomial(mono)}" if any(mono) else f"({c})")
    return " + ".join(out)


def sorted_terms(p: Poly):
    """Terms in the canonical (graded, then lexicographic) order."""
    return [(m, p.terms[m]) for m in sorted(p.terms, key=_sort_key)]


class PolyMap(tuple):
    """Vector of polynomials sharing one variable set (a polynomial map)."""

    def __new__(cls, components):
        comps = tuple(components)
        if not comps:
            raise ValueError("a polynomial map needs at least one component")
        n = comps[0].nvars
        if any(c.nvars != n for c in comps):
            raise ValueError("components live in different numbers of variables")
        return super().__new__(cls, comps)

    @property
    def nvars(self):
        return self[0].nvars

    def coefficients(self):
        return [c for p in self for c in p.coefficients()]

    def is_zero(self):
        return all(p.is_zero() for p in self)

    def __add__(self, other):
        return PolyMap(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return PolyMap(a - b for a, b in zip(self, other))

    def __neg__(self):
        return PolyMap(-a for a in self)

    def scale(self, s):
        """Multiply every component by a scalar or scalar polynomial."""
        return PolyMap(a * s for a in self)

    def dot(self, other):
        total = self[0] * other[0]
        for a, b in zip(self[1:], other[1:]):
            total = total + a * b
        return total

    def __call__(self, point):
        return [p(point) for p in self]

    def __eq__(self, other):
        return isinstance(other, tuple) and len(self) == len(other) and all(
            a == b for a, b in zip(self, other)
        )

    def __hash__(self):
        return super().__hash__()

    @classmethod
    def identity(cls, n):
        return cls(Poly.variables(n))
