import random
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supersingular.curve import Curve, gen_ordinary, j_invariant, random_point, scalar_mul
from supersingular.divpoly import (
    base_polys,
    eval_fn_at,
    expand_fn,
    f_n,
    f_triple,
    f_values_at,
    mult_by_n,
    phi_psi2,
    window_at,
)
from supersingular.errors import PreconditionError
from supersingular.poly import Poly
from supersingular.sstest.oracle import all_curves, is_supersingular_by_count, isomorphism_class_representatives


def reference_fs(E, top):
    """f_0..f_top from the textbook psi recursion rewritten without y.

    f_{2m+1} = F^2 f_{m+2} f_m^3 - f_{m-1} f_{m+1}^3      (m even)
    f_{2m+1} = f_{m+2} f_m^3 - F^2 f_{m-1} f_{m+1}^3      (m odd)
    f_{2m}   = f_m (f_{m+2} f_{m-1}^2 - f_{m-2} f_{m+1}^2)
    """
    Fq = E.field
    a, b = E.a, E.b
    P = lambda cs: Poly.from_coeffs(Fq, cs)  # noqa: E731
    F = P([4 * b, 4 * a, 0, 4])
    F2 = F * F
    psi3 = P([-a * a, 12 * b, 6 * a, 0, 3])
    # psi_4 / psi_2 = 2 (x^6 + 5a x^4 + 20b x^3 - 5a^2 x^2 - 4ab x - 8b^2 - a^3)
    f4 = P([2 * (-8 * b * b - a**3), -8 * a * b, -10 * a * a, 40 * b, 10 * a, 0, 2])

    @lru_cache(maxsize=None)
    def f(n):
        if n < 0:
            return -f(-n)
        if n <= 4:
            return [P([]), P([1]), P([1]), psi3, f4][n]
        m, odd = divmod(n, 2)
        if odd:
            if m % 2 == 0:
                return F2 * f(m + 2) * f(m) ** 3 - f(m - 1) * f(m + 1) ** 3
            return f(m + 2) * f(m) ** 3 - F2 * f(m - 1) * f(m + 1) ** 3
        return f(m) * (f(m + 2) * f(m - 1) ** 2 - f(m - 2) * f(m + 1) ** 2)

    return [f(n) for n in range(top + 1)]


def test_base_examples():
    E = Curve.from_ints(13, 2, 3)
    ctx = base_polys(E)
    Fq = E.field
    assert ctx.f(0) == Poly.zero(Fq)
    assert ctx.f(1) == Poly.const(Fq, 1) == ctx.f(2)
    assert ctx.f(3) == Poly.from_coeffs(Fq, [-4, 36, 12, 0, 3])
    assert ctx.F == Poly.from_coeffs(Fq, [12, 8, 0, 4])
    assert ctx.f(-3) == -ctx.f(3)


@pytest.mark.parametrize("p", [5, 13, 2**61 - 1])
def test_degrees(p):
    E = gen_ordinary(p, random.Random(p))
    ctx = base_polys(E)
    for n in range(1, 30):
        if n % p == 0:
            continue
        d = (n * n - 1) // 2 if n % 2 else (n * n - 4) // 2
        f = expand_fn(ctx, n)
        assert f.degree == d
        assert f.lc == (n if n % 2 else n // 2)


@pytest.mark.parametrize("p", [7, 13, 101])
def test_matches_textbook_recursion(p):
    rng = random.Random(p)
    for _ in range(3):
        E = gen_ordinary(p, rng)
        ref = reference_fs(E, 40)
        ctx = base_polys(E)
        for n in range(41):
            assert f_n(ctx, n) == ref[n]


@pytest.mark.parametrize("p", [13, 2**61 - 1])
def test_window_mod_matches_exact(p):
    rng = random.Random(p + 1)
    E = gen_ordinary(p, rng)
    ctx = base_polys(E)
    F = E.field
    g = Poly.from_coeffs(F, [F.random(rng) for _ in range(9)] + [1])
    for m in [3, 4, 5, 6, 7, 11, 16, 23, 37, 64]:
        exact = window_at(ctx, m)
        red = window_at(ctx, m, g)
        assert red.modulus == g
        for n in range(m - 3, m + 6):
            assert red[n] == exact[n] % g
        with pytest.raises(IndexError):
            red[m + 6]


def test_window_requires_centre_at_least_three():
    ctx = base_polys(Curve.from_ints(13, 1, 1))
    with pytest.raises(PreconditionError):
        window_at(ctx, 2)
    with pytest.raises(PreconditionError):
        expand_fn(ctx, 10**4)


def test_f_triple():
    E = Curve.from_ints(101, 3, 7)
    ctx = base_polys(E)
    g = Poly.from_coeffs(E.field, [5, 0, 1, 1])
    a, b, c = f_triple(ctx, 101, g)
    w = window_at(ctx, 101, g)
    assert (a, b, c) == (w[100], w[101], w[102])


@pytest.mark.parametrize("p", [5, 7, 11])
def test_torsion_characterisation(p):
    """f_n(x_P) = 0 exactly when nP = O, for P with y != 0 (and all P when n is odd)."""
    rng = random.Random(p)
    curves = all_curves(p)
    for E in rng.sample(curves, 6):
        ctx = base_polys(E)
        pts = [random_point(E, rng) for _ in range(25)]
        for P in pts:
            for n in range(1, 13):
                if n % 2 == 0 and P.y == 0:
                    continue
                zero = eval_fn_at(ctx, n, P.x) == 0
                assert zero == scalar_mul(n, P).is_infinity


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 60))
def test_mult_by_n_matches_group_law(seed, n):
    rng = random.Random(seed)
    E = gen_ordinary(10007, rng)
    ctx = base_polys(E)
    P = random_point(E, rng)
    assert mult_by_n(ctx, n, P) == scalar_mul(n, P)
    assert mult_by_n(ctx, -n, P) == scalar_mul(-n, P)


def test_mult_by_n_torsion_and_zero():
    E = Curve.from_ints(7, 1, 0)
    ctx = base_polys(E)
    T = E.point(0, 0)
    assert mult_by_n(ctx, 2, T).is_infinity
    assert mult_by_n(ctx, 3, T) == T
    assert mult_by_n(ctx, 0, T).is_infinity
    assert mult_by_n(ctx, 5, E.infinity).is_infinity


def test_phi_psi2_small_cases():
    E = gen_ordinary(101, random.Random(3))
    ctx = base_polys(E)
    F = E.field
    x = Poly.x(F)
    phi1, psi1 = phi_psi2(ctx, 1)
    assert phi1 == x and psi1 == Poly.const(F, 1)
    phi2, psi2 = phi_psi2(ctx, 2)
    assert psi2 == ctx.F
    rng = random.Random(4)
    for _ in range(20):
        P = random_point(E, rng)
        if P.y == 0:
            continue
        D = P + P
        assert phi2.eval(P.x) == D.x * psi2.eval(P.x)


@pytest.mark.parametrize("s", [3, 4, 7, 12, 13])
def test_phi_psi2_gives_x_of_multiple(s):
    E = gen_ordinary(1009, random.Random(s))
    ctx = base_polys(E)
    rng = random.Random(s + 1)
    g = Poly.from_coeffs(E.field, [E.field.random(rng) for _ in range(6)] + [1])
    phi, psi2 = phi_psi2(ctx, s)
    phr, psr = phi_psi2(ctx, s, g)
    assert phr == phi % g and psr == psi2 % g
    for _ in range(10):
        P = random_point(E, rng)
        Q = scalar_mul(s, P)
        if Q.is_infinity:
            continue
        assert phi.eval(P.x) == Q.x * psi2.eval(P.x)


def test_eval_matches_polynomial():
    E = gen_ordinary(2**61 - 1, random.Random(0))
    ctx = base_polys(E)
    rng = random.Random(1)
    x0 = E.field.random(rng)
    for n in [0, 1, 2, 3, 9, 10, 11, 17, 33, -5]:
        assert eval_fn_at(ctx, n, x0) == f_n(ctx, n).eval(x0)
    vals = f_values_at(ctx, 20, 28, x0)
    assert vals == {n: f_n(ctx, n).eval(x0) for n in range(20, 29)}
    with pytest.raises(ValueError):
        f_values_at(ctx, 0, 9, x0)


def test_eval_examples():
    E = Curve.from_ints(13, 2, 3)
    ctx = base_polys(E)
    F = E.field
    assert eval_fn_at(ctx, 3, F(1)) == 3 + 6 * 2 + 12 * 3 - 4
    assert eval_fn_at(ctx, 1, F(5)) == 1


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23])
def test_f_p_is_constant_on_supersingular(p):
    """f_p is +-1 when j != 0, 1728; for the extra twists at j = 0 or 1728 it is
    a root of unity of order dividing 6 or 4."""
    for E in isomorphism_class_representatives(p):
        if not is_supersingular_by_count(E):
            continue
        f = expand_fn(base_polys(E), p)
        assert f.degree == 0
        c = f.coeff(0)
        j = j_invariant(E)
        if j == 0:
            assert c**6 == 1
        elif j == 1728:
            assert c**4 == 1
        else:
            assert c in (1, -1)


def test_f_p_is_plus_minus_one_on_f_p_rational_j1728():
    E = Curve.from_ints(7, 1, 0)
    ctx = base_polys(E)
    g = Poly.from_coeffs(E.field, [3, 1, 0, 1])
    assert window_at(ctx, 7, g).center in (Poly.const(E.field, 1), Poly.const(E.field, -1))
    for x0 in E.field.elements():
        assert eval_fn_at(ctx, 7, x0) in (1, -1)


@pytest.mark.parametrize("p", [5, 7])
def test_f_p_degree_on_ordinary(p):
    for E in all_curves(p)[::7]:
        if is_supersingular_by_count(E):
            continue
        assert expand_fn(base_polys(E), p).degree == p * (p - 1) // 2
