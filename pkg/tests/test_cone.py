import random
from fractions import Fraction

import pytest
import sympy

from circlebundle.cone import (
    ConditionViolation,
    UnsupportedDimension,
    VectorQuadraticMap,
    canonicalize,
    check_conditions,
    common_point_map,
    cone_divide,
    gauge_map,
    generating_plane,
    parallel_decompose,
    sample_cone_point,
)
from circlebundle.poly import Poly, PolyMap
from circlebundle.quaternions import QI, QK, mul_operator
from circlebundle.scalars import Gaussian, UnsupportedBackend, rank

import _gen

I = Gaussian(0, 1)


def x0_times_ix():
    """Gamma(x) = x0 * (i x)."""
    L = mul_operator(QI, "left")
    x = Poly.variables(4)
    comps = [x[0] * sum((L[k][j] * x[j] for j in range(4)), Poly.zero(4)) for k in range(4)]
    return VectorQuadraticMap.from_polymap(PolyMap(comps))


def random_poly(rng, n, degree, terms=6):
    out = Poly.zero(n)
    for _ in range(terms):
        mono = [0] * n
        for _ in range(degree):
            mono[rng.randrange(n)] += 1
        out = out + Poly(n, {tuple(mono): _gen.frac(rng, 9)})
    return out


def to_sympy(p: Poly, xs):
    return sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod([v**e for v, e in zip(xs, m)])
               for m, c in p.terms.items())


# -- cone division ------------------------------------------------------------


def test_cone_divide_examples():
    n = 4
    x = Poly.variables(n)
    N = Poly.norm_form(n)
    d = cone_divide(N * x[2])
    assert d.quotient == x[2] and d.remainder.is_zero()
    d = cone_divide(x[0] * x[0])
    assert d.quotient == Poly.const(n, Fraction(1))
    assert d.remainder == -(x[1] * x[1] + x[2] * x[2] + x[3] * x[3])
    G = x0_times_ix().polymap()
    d = cone_divide(G.dot(PolyMap.identity(4)))
    assert d.exact and d.quotient.is_zero()


def test_cone_divide_rejects_floats():
    with pytest.raises(UnsupportedBackend):
        cone_divide(Poly(2, {(2, 0): 1.5}))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_cone_divide_matches_sympy_reduction(n):
    rng = random.Random(n)
    xs = sympy.symbols(f"x0:{n}")
    cone = sum(v**2 for v in xs)
    for _ in range(10):
        P = random_poly(rng, n, rng.randint(2, 4))
        d = cone_divide(P)
        (q,), r = sympy.reduced(to_sympy(P, xs), [cone], *xs, order="lex")
        assert sympy.expand(to_sympy(d.remainder, xs) - r) == 0
        assert sympy.expand(to_sympy(d.quotient, xs) - q) == 0
        assert all(m[0] < 2 for m in d.remainder.terms)
        assert Poly.norm_form(n) * d.quotient + d.remainder == P


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_cone_divide_inverts_multiplication(n):
    rng = random.Random(10 + n)
    for _ in range(10):
        Q = random_poly(rng, n, rng.randint(0, 3))
        d = cone_divide(Poly.norm_form(n) * Q)
        assert d.quotient == Q and d.exact


@pytest.mark.parametrize("n", [2, 3, 4])
def test_remainder_agrees_with_polynomial_on_cone(n):
    rng = random.Random(20 + n)
    for _ in range(10):
        P = random_poly(rng, n, 3)
        r = cone_divide(P).remainder
        z = _gen.cone_point(rng, n)
        assert sum((t * t for t in z), Gaussian(0)) == 0
        assert P(z) == r(z)


# -- conditions -----------------------------------------------------------------


def test_check_conditions_examples():
    b = _gen.e(0)
    res = check_conditions(common_point_map(b))
    assert res.satisfied
    assert res.lam == Poly.var(4, 0)
    # (Gamma, Gamma) = (b, b)(x, x)^2, so mu = (b, b)(x, x)
    assert res.mu == Poly.norm_form(4)

    res = check_conditions(x0_times_ix())
    assert res.satisfied and res.lam.is_zero()
    assert res.mu == Poly.var(4, 0) * Poly.var(4, 0)

    x = Poly.variables(4)
    z = Poly.zero(4)
    bad = VectorQuadraticMap.from_polymap(PolyMap([x[0] * x[1], z, z, z]))
    res = check_conditions(bad)
    assert not res.satisfied
    assert res.remainders["gamma_x"] == -x[1] * (x[1] * x[1] + x[2] * x[2] + x[3] * x[3])


def test_canonicalize_examples():
    b = _gen.e(0)
    G = common_point_map(b)
    assert canonicalize(G) == G - gauge_map(Poly.var(4, 0))
    ix = x0_times_ix()
    assert canonicalize(ix) == ix
    assert canonicalize(gauge_map(Poly.var(4, 0))).is_zero()
    x = Poly.variables(4)
    z = Poly.zero(4)
    with pytest.raises(ConditionViolation) as info:
        canonicalize(VectorQuadraticMap.from_polymap(PolyMap([x[0] * x[1], z, z, z])))
    assert "gamma_x" in info.value.remainders


def test_canonicalize_idempotent_and_gauge_invariant():
    rng = random.Random(5)
    for side in ("left", "right"):
        for _ in range(10):
            _, G = _gen.quaternionic_quadratic(rng, side)
            C = canonicalize(G)
            assert check_conditions(C).lam.is_zero()
            assert canonicalize(C) == C
            lam = Poly.linear(_gen.vec(rng, 4, 9))
            assert canonicalize(G + gauge_map(lam)) == C


def test_conditions_are_gauge_invariant_in_mu_shift():
    # (Gamma + lam x) keeps the conditions; lambda shifts by lam
    rng = random.Random(6)
    _, G = _gen.quaternionic_quadratic(rng, "left")
    lam = Poly.linear(_gen.vec(rng, 4, 9))
    r1, r2 = check_conditions(G), check_conditions(G + gauge_map(lam))
    assert r2.satisfied and r2.lam == r1.lam + lam


# -- parallel decomposition -----------------------------------------------------


def test_parallel_decompose_examples():
    b = _gen.e(0)
    x1 = Poly.var(4, 1)
    res = parallel_decompose(common_point_map(b) + gauge_map(x1))
    assert res.b == b and res.lam == x1
    assert parallel_decompose(x0_times_ix()) is None
    res = parallel_decompose(VectorQuadraticMap.zero(4))
    assert res.b == [0, 0, 0, 0] and res.lam.is_zero()


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_parallel_decompose_round_trip(n):
    rng = random.Random(30 + n)
    for _ in range(10):
        b = [_gen.frac(rng, 20) for _ in range(n)]
        lam = Poly.linear([_gen.frac(rng, 20) for _ in range(n)])
        res = parallel_decompose(common_point_map(b) + gauge_map(lam))
        assert res is not None
        assert res.b == b and res.lam == lam


@pytest.mark.parametrize("n", [2, 3])
def test_low_dimensional_condition_maps_are_parallel(n):
    # complete description of condition-satisfying maps for n = 2: solve the
    # linear condition (Gamma, x) = lam (x, x) and test the quadratic one
    rng = random.Random(40 + n)
    for _ in range(20):
        G = _gen.random_quadratic(rng, n, 3)
        res = check_conditions(G)
        if res.satisfied:
            assert parallel_decompose(G) is not None
    # generic parallel maps satisfy the conditions
    for _ in range(20):
        b = _gen.vec(rng, n, 9)
        G = common_point_map(b) + gauge_map(Poly.linear(_gen.vec(rng, n, 9)))
        assert check_conditions(G).satisfied
        assert parallel_decompose(G) is not None


def test_non_parallel_rejected_in_higher_dimension():
    rng = random.Random(7)
    for _ in range(5):
        _, G = _gen.quaternionic_quadratic(rng, "left", real_part=False)
        if parallel_decompose(G) is None:
            break
    else:
        pytest.fail("a generic quaternionic map should not be parallel")


# -- Segre sampling and planes --------------------------------------------------


def test_sample_cone_point_examples():
    one, zero = Gaussian(1), Gaussian(0)
    assert sample_cone_point((one, zero), (one, zero)) == [Fraction(1, 2), -I / 2, 0, 0]
    assert sample_cone_point((zero, one), (zero, one)) == [Fraction(1, 2), I / 2, 0, 0]
    with pytest.raises(ValueError):
        sample_cone_point((zero, zero), (one, zero))


def _random_segre(rng):
    def g():
        return Gaussian(_gen.frac(rng, 100), _gen.frac(rng, 100))

    while True:
        u, v = (g(), g()), (g(), g())
        if any(u) and any(v):
            return sample_cone_point(u, v)


def test_generating_plane_examples():
    x = [Gaussian(Fraction(1, 2)), -I / 2, Gaussian(0), Gaussian(0)]
    left = generating_plane(x, "left")
    right = generating_plane(x, "right")
    assert not left.same_as(right)
    assert rank([list(v) for v in left.basis + right.basis]) == 3
    assert generating_plane([2 * t for t in x], "left").same_as(left)
    K = [[Gaussian(c) for c in row] for row in mul_operator(QK, "left")]
    Kx = [sum((K[i][j] * x[j] for j in range(4)), Gaussian(0)) for i in range(4)]
    assert left.contains(Kx)
    with pytest.raises(UnsupportedDimension):
        generating_plane([Gaussian(1), I, Gaussian(0)], "left")
    with pytest.raises(ValueError):
        generating_plane([Gaussian(1), Gaussian(0), Gaussian(0), Gaussian(0)], "left")


def test_planes_null_and_partition():
    rng = random.Random(8)
    for _ in range(100):
        x = _random_segre(rng)
        for fam in ("left", "right"):
            plane = generating_plane(x, fam)
            assert plane.is_null()
            c1, c2 = Gaussian(_gen.frac(rng, 9)), Gaussian(_gen.frac(rng, 9), _gen.frac(rng, 9))
            y = [c1 * p + c2 * q for p, q in zip(*plane.basis)]
            assert sum((t * t for t in y), Gaussian(0)) == 0
            if any(y):
                assert generating_plane(y, fam).same_as(plane)
