import math
import random
from collections import Counter

import pytest

from supersingular.arith import Fp2
from supersingular.curve import (
    Curve,
    Point,
    curve_from_j,
    default_walk_steps,
    gen_ordinary,
    gen_supersingular,
    isogeny_step_2,
    j_invariant,
    modular_poly_2,
    phi2_value,
    random_point,
    scalar_mul,
    two_isogenous_js,
)
from supersingular.errors import PreconditionError, UnsupportedPrime
from supersingular.sstest.oracle import (
    is_supersingular_by_count,
    point_count,
    supersingular_j_invariants,
)


def all_points(E):
    F = E.field
    pts = [E.infinity]
    for x in F.elements():
        for y in F.elements():
            if y * y == E.rhs(x):
                pts.append(Point(E, x, y))
    return pts


def test_singular_curve_rejected():
    with pytest.raises(ValueError):
        Curve.from_ints(7, 0, 0)
    with pytest.raises(ValueError):
        Curve.from_ints(7, -3, 2)  # (x-1)^2 (x+2)


def test_point_on_curve_check():
    E = Curve.from_ints(7, 1, 0)
    with pytest.raises(ValueError):
        E.point(1, 1)
    assert E.contains(E.point(0, 0))


def test_order_of_points_on_x3_plus_x_over_f7():
    """y^2 = x^3 + x over F_7 has 8 points; over F_49 it has 64."""
    F = Fp2.of(7)
    E = Curve.from_ints(7, 1, 0)
    base_pts = [P for P in all_points(E) if P.is_infinity or (P.x.c1 == 0 and P.y.c1 == 0)]
    assert len(base_pts) == 8
    for P in base_pts:
        assert scalar_mul(8, P).is_infinity
    assert point_count(E) == 64
    rng = random.Random(0)
    for _ in range(30):
        P = random_point(E, rng)
        assert scalar_mul(64, P).is_infinity
    assert F.q == 49


@pytest.mark.parametrize("p,a,b", [(5, 1, 1), (7, (2, 3), (1, 1)), (11, (0, 1), 4)])
def test_group_law_exhaustive(p, a, b):
    E = Curve.from_ints(p, a, b)
    pts = all_points(E)
    assert len(pts) == point_count(E)
    rng = random.Random(p)
    sample = [rng.choice(pts) for _ in range(25)]
    O = E.infinity
    for P in sample:
        assert P + O == P and O + P == P
        assert P + (-P) == O
        assert E.contains(P + P)
        assert scalar_mul(len(pts), P) == O
    for P in sample[:8]:
        for Q in sample[:8]:
            assert P + Q == Q + P
            assert E.contains(P + Q)
            for R in sample[:4]:
                assert (P + Q) + R == P + (Q + R)


def test_scalar_mul_matches_repeated_addition():
    E = Curve.from_ints(13, (3, 1), (5, 2))
    rng = random.Random(1)
    P = random_point(E, rng)
    acc = E.infinity
    for n in range(40):
        assert scalar_mul(n, P) == acc
        assert scalar_mul(-n, P) == -acc
        acc = acc + P


def test_random_point_uniform():
    """Every affine point of y^2 = x^3 + 1 over F_25 is hit equally often."""
    E = Curve.from_ints(5, 0, 1)
    pts = [P for P in all_points(E) if not P.is_infinity]
    rng = random.Random(2024)
    n = 10_000
    hits = Counter(random_point(E, rng) for _ in range(n))
    assert set(hits) <= set(pts)
    expected = n / len(pts)
    sigma = math.sqrt(n * (1 / len(pts)) * (1 - 1 / len(pts)))
    for P in pts:
        assert abs(hits[P] - expected) < 5 * sigma
    # points with y = 0 are included too
    assert any(P.y == 0 for P in pts)


def test_j_examples():
    assert j_invariant(Curve.from_ints(7, 1, 0)) == 1728
    assert j_invariant(Curve.from_ints(7, 0, 1)) == 0


@pytest.mark.parametrize("p", [5, 7, 13])
def test_curve_from_j_roundtrip(p):
    F = Fp2.of(p)
    for j in F.elements():
        assert j_invariant(curve_from_j(j)) == j
        assert j_invariant(curve_from_j(j, twist=True)) == j


@pytest.mark.parametrize("p", [7, 11, 13])
def test_twist_negates_trace(p):
    F = Fp2.of(p)
    for j in F.elements():
        if j == 0 or j == 1728:
            continue
        t = F.q + 1 - point_count(curve_from_j(j))
        t2 = F.q + 1 - point_count(curve_from_j(j, twist=True))
        assert t2 == -t


def test_j_invariant_is_isomorphism_invariant():
    F = Fp2.of(11)
    rng = random.Random(5)
    for _ in range(30):
        E = gen_ordinary(11, rng)
        c = F.random_nonzero(rng)
        E2 = Curve(c**4 * E.a, c**6 * E.b)
        assert j_invariant(E2) == j_invariant(E)
        assert point_count(E2) == point_count(E)


def test_phi2_symmetric():
    F = Fp2.of(13)
    rng = random.Random(3)
    for _ in range(20):
        x, y = F.random(rng), F.random(rng)
        assert phi2_value(x, y) == phi2_value(y, x)
    assert modular_poly_2(F.zero).degree == 3


@pytest.mark.parametrize("p", [7, 11, 13, 17, 19, 23])
def test_supersingular_j_has_three_neighbours(p):
    rng = random.Random(p)
    ss = set(supersingular_j_invariants(p))
    for j in ss:
        rs = two_isogenous_js(j, rng)
        assert len(rs) == 3
        assert set(rs) <= ss


def test_isogeny_step_avoids_backtracking():
    rng = random.Random(8)
    p = 23
    ss = supersingular_j_invariants(p)
    for j in ss:
        for prev in two_isogenous_js(j, rng):
            for _ in range(5):
                nxt = isogeny_step_2(j, prev, rng)
                rs = two_isogenous_js(j, rng)
                if rs.count(prev) == 1 and len(set(rs)) == 3:
                    assert nxt != prev


def test_gen_ordinary_deterministic_and_nonsingular():
    a = gen_ordinary(101, random.Random(42))
    b = gen_ordinary(101, random.Random(42))
    assert a == b
    assert a.discriminant_factor()


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47])
def test_gen_supersingular_small(p):
    for seed in range(4):
        E = gen_supersingular(p, random.Random(seed))
        assert is_supersingular_by_count(E)
    assert gen_supersingular(p, random.Random(9)) == gen_supersingular(p, random.Random(9))


def test_gen_supersingular_large_primes_stay_on_graph():
    for p in (2**31 - 1, 2**61 - 1):
        assert p % 12 != 1
        E = gen_supersingular(p, random.Random(0))
        assert E.p == p
    assert default_walk_steps(2**61 - 1) == 120


def test_gen_supersingular_unsupported():
    from supersingular.arith import next_prime

    p = next_prime(10**9)
    while p % 12 != 1:
        p = next_prime(p)
    with pytest.raises(UnsupportedPrime):
        gen_supersingular(p, random.Random(0))


def test_gen_rejects_bad_prime():
    with pytest.raises(PreconditionError):
        gen_ordinary(9, random.Random(0))
    with pytest.raises(PreconditionError):
        gen_supersingular(3, random.Random(0))


def test_text_roundtrip():
    rng = random.Random(4)
    for p in (5, 101, 2**61 - 1):
        E = gen_ordinary(p, rng)
        assert Curve.parse(str(E)) == E
    for bad in ["", "7; 1", "8; 1; 1", "x; 1; 1", "7; 0; 0"]:
        with pytest.raises(ValueError):
            Curve.parse(bad)
