"""Random exact test data shared by the test modules."""

from fractions import Fraction
import random

from circlebundle.bundles import LinearQuaternionMap, quaternionic_gamma
from circlebundle.cone import VectorQuadraticMap
from circlebundle.quaternions import Quaternion
from circlebundle.scalars import Gaussian, solve


def frac(rng: random.Random, bound=100, nonzero=False):
    while True:
        q = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if q or not nonzero:
            return q


def unit_frac(rng, bound=20):
    """Rational in [-1, 1]."""
    den = rng.randint(1, bound)
    return Fraction(rng.randint(-den, den), den)


def vec(rng, n, bound=100):
    while True:
        v = [frac(rng, bound) for _ in range(n)]
        if any(v):
            return v


def quaternion(rng, bound=100):
    return Quaternion(*[frac(rng, bound) for _ in range(4)])


def nonreal_quaternion(rng, bound=100):
    while True:
        q = quaternion(rng, bound)
        if q.x or q.y or q.z:
            return q


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def rational_orthogonal(rng, n, bound=5):
    """Cayley transform (I - S)(I + S)^{-1} of a random rational skew S."""
    S = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            S[i][j] = frac(rng, bound)
            S[j][i] = -S[i][j]
    Id = identity(n)
    plus = [[Id[i][j] + S[i][j] for j in range(n)] for i in range(n)]
    minus = [[Id[i][j] - S[i][j] for j in range(n)] for i in range(n)]
    # Q = minus @ plus^{-1}  <=>  plus^T Q^T = minus^T
    plusT = [list(r) for r in zip(*plus)]
    minusT = [list(r) for r in zip(*minus)]
    QT = solve(plusT, minusT)
    return [list(r) for r in zip(*QT)]


def cone_point(rng, n, bound=20):
    """Exact null vector u + i v (u ⟂ v, |u| = |v|) in C^n, n >= 2."""
    a, b = frac(rng, bound, nonzero=True), frac(rng, bound)
    u = [a, b] + [Fraction(0)] * (n - 2)
    v = [-b, a] + [Fraction(0)] * (n - 2)
    Q = rational_orthogonal(rng, n)
    qu = [sum(Q[i][j] * u[j] for j in range(n)) for i in range(n)]
    qv = [sum(Q[i][j] * v[j] for j in range(n)) for i in range(n)]
    return [Gaussian(p, q) for p, q in zip(qu, qv)]


def linear_map(rng, real_part=True, bound=20):
    """Random A : R^4 -> H with entries in [-1, 1] (zero real row if asked)."""
    rows = [[unit_frac(rng, bound) for _ in range(4)] for _ in range(4)]
    if not real_part:
        rows[0] = [Fraction(0)] * 4
    return LinearQuaternionMap(rows)


def quaternionic_quadratic(rng, side, real_part=True):
    A = linear_map(rng, real_part)
    return A, quaternionic_gamma(A, side)


def random_quadratic(rng, n, bound=5):
    mats = []
    for _ in range(n):
        M = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                M[i][j] = M[j][i] = frac(rng, bound)
        mats.append(M)
    return VectorQuadraticMap(mats)


def e(k, n=4):
    return [Fraction(int(i == k)) for i in range(n)]


def conformal_conjugate(gamma, Q, s):
    """x -> L^{-1} gamma(L x) for L = s Q with Q orthogonal."""
    n = gamma.n
    out = []
    for k in range(n):
        # sum_m (Q^T)_{km} / s * M_m, then congruence by L
        S = [[sum(Q[m][k] * gamma.matrices[m][i][j] for m in range(n)) / s for j in range(n)] for i in range(n)]
        out.append([[s * s * sum(Q[p][i] * S[p][q] * Q[q][j] for p in range(n) for q in range(n))
                     for j in range(n)] for i in range(n)])
    return VectorQuadraticMap(out)


def complex_projective():
    """(z1, z2) -> (z1, z2) / (1 + z1) with x = z1 + z2 j, as a left transform.

    Its quadratic term is -(x0 + x1 i) x.
    """
    from circlebundle.transforms import AffineMap, FractionalTransform

    one, zero = Fraction(1), Fraction(0)
    lin = [[one, zero, zero, zero], [zero, one, zero, zero], [zero] * 4, [zero] * 4]
    den = AffineMap(lin, [one, zero, zero, zero])
    return FractionalTransform("left", AffineMap.identity(4), den)


def complex_projective_A():
    m = [[Fraction(0)] * 4 for _ in range(4)]
    m[0][0] = Fraction(-1)
    m[1][1] = Fraction(-1)
    return LinearQuaternionMap(m)


def second_difference(phi, d, h=1e-3):
    """(phi(h d) + phi(-h d)) / (2 h^2) for unit d; phi(0) = 0.

    Returns (d, estimate of the quadratic term at d).
    """
    import numpy as np

    d = np.asarray([float(v) for v in d])
    d = d / np.linalg.norm(d)
    return d, (np.asarray(phi((h * d).tolist())) + np.asarray(phi((-h * d).tolist()))) / (2 * h * h)
