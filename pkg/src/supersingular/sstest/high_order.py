"""Supersingularity test through a point of large order on a cyclotomic extension.

Let r be a prime with p a primitive root mod r, so q = p^2 has order
d = (r - 1)/2 mod r and the r-th cyclotomic polynomial splits over F_q into
two irreducible factors of degree d.  Taking one factor g, the residue of x
in K = F_q[x]/(g) has order r.  A supersingular curve (j != 0, 1728)
satisfies, as polynomial identities,

    f_p = e  with e in {+1, -1},
    f_{p-1} f_{p+1} F = x - x^q,

(the second is psi_{p-1} psi_{p+1} = x psi_p^2 - phi_p with psi_{p+-1} =
psi_2 f_{p+-1}, psi_2^2 = F, and phi_p = x^q).  When the binomial bound
below holds, an ordinary curve cannot satisfy both congruences modulo g.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..arith import Fp2, is_prime
from ..curve import Curve
from ..divpoly import base_polys, eval_fn_at, window_at
from ..errors import PreconditionError, SearchCapExceeded
from ..poly import Modulus, Poly, cyclotomic, cyclotomic_frobenius, factor_equal_degree, powmod
from .pit import is_plus_minus_one
from .verdict import CONJECTURAL, Method, Result, Verdict, instrumented, shortcut_verdict

R_SEARCH_CAP = 10**6
EPSILON_GRID = tuple(k / 20 for k in range(1, 20))


@dataclass(frozen=True)
class HighOrderParams:
    r: int
    epsilon: float
    heuristic_poonen: bool = False
    poonen_c: Optional[float] = None
    g: Optional[Poly] = None  # optionally a precomputed degree-d factor of Phi_r

    @property
    def d(self) -> int:
        return (self.r - 1) // 2


def binom_bound(r: int, epsilon: float, p: int = 0) -> int:
    """C(N, K) with N = floor(floor(r/2)^(1 - eps/3) - r^(eps/3)), K = floor(floor(r/2)^(2 eps)).

    ``p`` is accepted for symmetry with the requirement C(N, K) >= 2p + 2 and
    does not enter the value.
    """
    h = r // 2
    N = math.floor(h ** (1 - epsilon / 3) - r ** (epsilon / 3))
    K = math.floor(h ** (2 * epsilon))
    if N <= 0 or N < K:
        return 0
    return math.comb(N, K)


def _prime_factors(n: int):
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def is_primitive_root(p: int, r: int) -> bool:
    """Whether p mod r generates (Z/rZ)^* for the prime r."""
    if r < 3 or p % r == 0:
        return False
    return all(pow(p, (r - 1) // ell, r) != 1 for ell in _prime_factors(r - 1))


def select_r(p: int, epsilon: Optional[float] = None, poonen_c: Optional[float] = None) -> HighOrderParams:
    """Smallest admissible r, with eps searched over a grid unless given.

    With ``poonen_c`` set, the binomial condition is replaced by r >= ceil(1/(2c)).
    """
    if epsilon is not None and not 0 < epsilon < 1:
        raise PreconditionError("epsilon must lie in (0, 1)")
    if poonen_c is not None:
        if poonen_c <= 0:
            raise PreconditionError("poonen_c must be positive")
        r = max(3, math.ceil(1 / (2 * poonen_c)))
        while r <= R_SEARCH_CAP:
            if r != p and is_prime(r) and is_primitive_root(p, r):
                return HighOrderParams(r, epsilon if epsilon is not None else 0.0, True, poonen_c)
            r += 1
        raise SearchCapExceeded(f"no admissible r <= {R_SEARCH_CAP}")
    grid = (epsilon,) if epsilon is not None else EPSILON_GRID
    target = 2 * p + 2
    r = 3
    while r <= R_SEARCH_CAP:
        if r != p and is_prime(r) and is_primitive_root(p, r):
            for eps in grid:
                if binom_bound(r, eps, p) >= target:
                    return HighOrderParams(r, eps)
        r += 2
    raise SearchCapExceeded(f"no admissible r <= {R_SEARCH_CAP}")


def cyclotomic_factor(p: int, r: int, rng) -> Poly:
    """A monic irreducible factor of degree (r-1)/2 of Phi_r over F_{p^2}."""
    F = Fp2.of(p)
    return factor_equal_degree(cyclotomic(r, F), (r - 1) // 2, rng, frobenius=cyclotomic_frobenius(r, F.q))


def strong_congruences(E: Curve, r: int, g: Poly):
    """(sign or None, second identity holds) for the two congruences mod g."""
    ctx = base_polys(E)
    p, q = E.p, E.q
    gmod = Modulus(g)
    x = Poly.x(E.field)
    xq = powmod(x, q, gmod)
    # The window is built mod x^r - 1, a multiple of g, where reduction is a fold.
    w = window_at(ctx, p, Modulus.cyclic(E.field, r))
    fm, fp_, fpl = (gmod.reduce(w[p - 1]), gmod.reduce(w[p]), gmod.reduce(w[p + 1]))
    sign = 1 if fp_ == 1 else (-1 if fp_ == -1 else None)
    lhs = gmod.mul(gmod.mul(fm, fpl), gmod.reduce(ctx.F))
    return sign, lhs == gmod.reduce(x) - xq


@instrumented
def high_order_test(E: Curve, params: Optional[HighOrderParams] = None, rng=None) -> Verdict:
    sc = shortcut_verdict(E, Method.HIGH_ORDER)
    if sc is not None:
        return sc
    if rng is None:
        raise PreconditionError("high_order_test needs an rng")
    p = E.p
    ctx = base_polys(E)
    a = E.field.random(rng)
    v = eval_fn_at(ctx, p, a)
    if not is_plus_minus_one(v):
        return Verdict(Result.ORDINARY, Method.HIGH_ORDER, Fraction(0), {"stage": "prefilter", "witness": a, "value": v})
    if params is None:
        params = select_r(p)
    elif params.r == p or not is_prime(params.r) or not is_primitive_root(p, params.r):
        raise PreconditionError(f"r = {params.r} is not a prime with p as primitive root")
    r = params.r
    g = params.g if params.g is not None else cyclotomic_factor(p, r, rng)
    sign, second = strong_congruences(E, r, g)
    bound = CONJECTURAL if params.heuristic_poonen else Fraction(0)
    cert = {"r": r, "epsilon": params.epsilon, "g": g, "sign": sign}
    if sign is not None and second:
        return Verdict(Result.SUPERSINGULAR, Method.HIGH_ORDER, bound, cert)
    cert["stage"] = "congruence"
    cert["second_identity"] = second
    return Verdict(Result.ORDINARY, Method.HIGH_ORDER, Fraction(0), cert)
