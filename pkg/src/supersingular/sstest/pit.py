"""Division-polynomial identity tests: random evaluation and a Schoof-style check."""

from __future__ import annotations

from fractions import Fraction
from typing import List

from ..arith import is_prime
from ..curve import Curve
from ..divpoly import CurveContext, base_polys, eval_fn_at, f_n, phi_psi2, window_at
from ..poly import Modulus, Poly, poly_gcd, powmod
from .verdict import Method, Result, Verdict, instrumented, shortcut_verdict


def is_plus_minus_one(v) -> bool:
    return v == 1 or v == -1


@instrumented
def sz_pit_test(E: Curve, rng) -> Verdict:
    """Evaluate f_p at one uniform point of F_{p^2}.

    For a supersingular curve with j != 0, 1728 f_p is the constant +1 or -1
    (j = 0 and 1728 are decided beforehand, since their extra twists give other
    roots of unity).  For an ordinary
    curve f_p is a p-th power of a polynomial of degree (p-1)/2, so at most
    p - 1 points give +-1 and the false-positive probability is below (p-1)/p^2.
    """
    sc = shortcut_verdict(E, Method.SZ_PIT)
    if sc is not None:
        return sc
    p = E.p
    ctx = base_polys(E)
    a = E.field.random(rng)
    v = eval_fn_at(ctx, p, a)
    if is_plus_minus_one(v):
        return Verdict(
            Result.SUPERSINGULAR, Method.SZ_PIT, Fraction(p - 1, p * p), {"point": a, "sign": 1 if v == 1 else -1}
        )
    return Verdict(Result.ORDINARY, Method.SZ_PIT, Fraction(0), {"witness": a, "value": v})


def schoof_primes(p: int) -> List[int]:
    """2, 3, 5, ... (skipping p) until the product is at least 4p."""
    out, prod, r = [], 1, 2
    while prod < 4 * p:
        if r != p and is_prime(r):
            out.append(r)
            prod *= r
        r += 1
    return out


def _w_numerator(ctx: CurveContext, s: int, mod: Modulus) -> Poly:
    """f_{s+2} f_{s-1}^2 - f_{s-2} f_{s+1}^2 mod the modulus."""
    if s + 2 <= 10:
        vals = {n: mod.reduce(f_n(ctx, n)) for n in range(s - 2, s + 3)}
    else:
        w = window_at(ctx, s, mod)
        vals = {n: w[n] for n in range(s - 2, s + 3)}
    m = mod.mul
    return m(vals[s + 2], m(vals[s - 1], vals[s - 1])) - m(vals[s - 2], m(vals[s + 1], vals[s + 1]))


def frobenius_check(ctx: CurveContext, r: int):
    """For an odd prime r != p, test whether Frobenius acts as +-p on E[r].

    Returns (x_ok, sign) where x_ok is the identity x^q psi_s^2 = phi_s mod f_r
    (s = p mod r) and sign in {+1, -1, None} is the sign with y^q = sign * y([s]P)
    for all r-torsion P, or None if neither sign holds.
    """
    E = ctx.curve
    p, q = E.p, E.q
    s = p % r
    mod = Modulus(f_n(ctx, r).monic())
    x = Poly.x(E.field)
    xq = powmod(x, q, mod)
    phi, psi2 = phi_psi2(ctx, s, mod)
    if mod.mul(xq, psi2) != phi:
        return False, None
    # y^q = y (x^3 + ax + b)^((q-1)/2); clear y and denominators:
    # odd s:  Y f_s^3 = sign * W;   even s: F^2 Y f_s^3 = sign * W
    Y = powmod(Poly.from_coeffs(E.field, [E.b, E.a, 0, 1]), (q - 1) // 2, mod)
    fs = mod.reduce(f_n(ctx, s))
    lhs = mod.mul(Y, mod.mul(fs, mod.sqr(fs)))
    if s % 2 == 0:
        F = mod.reduce(ctx.F)
        lhs = mod.mul(lhs, mod.sqr(F))
    W = _w_numerator(ctx, s, mod)
    if lhs == W:
        return True, 1
    if lhs == -W:
        return True, -1
    return True, None


@instrumented
def schoof_like_test(E: Curve) -> Verdict:
    """Deterministic test that Frobenius equals [p] or [-p] on E[r] for enough small r.

    Parity of the trace comes from rational 2-torsion; every odd r in the
    prime set must satisfy the x-coordinate identity, and the sign read off
    the y-coordinate must be the same for all r.  Then t = +-2p by the
    Chinese remainder theorem and the Hasse bound.
    """
    sc = shortcut_verdict(E, Method.SCHOOF_LIKE)
    if sc is not None:
        return sc
    ctx = base_polys(E)
    p, q = E.p, E.q
    primes = schoof_primes(p)
    cubic = Poly.from_coeffs(E.field, [E.b, E.a, 0, 1])
    x = Poly.x(E.field)
    g = poly_gcd(powmod(x, q, cubic) - x, cubic)
    if g.degree < 1:
        return Verdict(Result.ORDINARY, Method.SCHOOF_LIKE, Fraction(0), {"failed_prime": 2, "reason": "odd order"})
    signs = {}
    for r in primes:
        if r == 2:
            continue
        x_ok, sign = frobenius_check(ctx, r)
        if not x_ok or sign is None:
            return Verdict(Result.ORDINARY, Method.SCHOOF_LIKE, Fraction(0), {"failed_prime": r, "reason": "x" if not x_ok else "y"})
        signs[r] = sign
        if len(set(signs.values())) > 1:
            return Verdict(Result.ORDINARY, Method.SCHOOF_LIKE, Fraction(0), {"failed_prime": r, "reason": "sign", "signs": signs})
    return Verdict(Result.SUPERSINGULAR, Method.SCHOOF_LIKE, Fraction(0), {"primes": primes, "signs": signs})
