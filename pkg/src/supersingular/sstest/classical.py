"""Baseline testers: the Hasse-invariant coefficient test and the Monte Carlo point test."""

from __future__ import annotations

from fractions import Fraction

from ..curve import Curve, random_point, scalar_mul
from ..errors import PreconditionError
from ..poly import Poly
from .verdict import Method, Result, Verdict, instrumented, shortcut_verdict

NAIVE_MAX_P = 10**5


def _truncated_power(base: Poly, e: int, k: int) -> Poly:
    """base^e mod x^k."""
    result = Poly.const(base.field, 1)
    for bit in bin(e)[2:]:
        result = result.square().truncate(k)
        if bit == "1":
            result = (result * base).truncate(k)
    return result


@instrumented
def naive_coeff_test(E: Curve) -> Verdict:
    """Supersingular iff x^(p-1) has coefficient 0 in (x^3 + ax + b)^((p-1)/2)."""
    p = E.p
    if p > NAIVE_MAX_P:
        raise PreconditionError(f"coefficient test needs p <= {NAIVE_MAX_P}, got {p}")
    f = Poly.from_coeffs(E.field, [E.b, E.a, 0, 1])
    h = _truncated_power(f, (p - 1) // 2, p).coeff(p - 1)
    res = Result.SUPERSINGULAR if not h else Result.ORDINARY
    return Verdict(res, Method.NAIVE, Fraction(0), {"hasse_invariant": h})


@instrumented
def monte_carlo_test(E: Curve, iters: int, rng) -> Verdict:
    """Check (p - 1)P = 0 or (p + 1)P = 0 on ``iters`` random points.

    A failing point proves the curve ordinary.  Curves with j = 0 or 1728 are
    decided from p mod 3 / p mod 4, since their twists need not have the
    group structure the test relies on.
    """
    if iters < 1:
        raise PreconditionError("iters must be at least 1")
    sc = shortcut_verdict(E, Method.MONTE_CARLO)
    if sc is not None:
        return sc
    p = E.p
    for i in range(iters):
        P = random_point(E, rng)
        if not scalar_mul(p - 1, P).is_infinity and not scalar_mul(p + 1, P).is_infinity:
            return Verdict(
                Result.ORDINARY, Method.MONTE_CARLO, Fraction(0), {"witness": [P.x, P.y], "trial": i}
            )
    return Verdict(Result.SUPERSINGULAR, Method.MONTE_CARLO, Fraction(1, p) ** iters, {"iters": iters})
