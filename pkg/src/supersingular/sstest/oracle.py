"""Brute-force point counting over F_{p^2} for small p."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from ..arith import Fp2, FqElem
from ..curve import Curve, curve_from_j
from ..errors import PreconditionError
from .verdict import Method, Result, Verdict, instrumented

ORACLE_MAX_P = 200


@lru_cache(maxsize=None)
def _tables(p: int):
    nqr = Fp2.of(p).nqr
    idx = np.arange(p * p, dtype=np.int64)
    x0 = idx % p
    x1 = idx // p
    # x^2 and x^3 in F_p[u]/(u^2 - nqr)
    s0 = (x0 * x0 + nqr * x1 * x1) % p
    s1 = (2 * x0 * x1) % p
    c0 = (s0 * x0 + nqr * s1 * x1) % p
    c1 = (s0 * x1 + s1 * x0) % p
    chi = np.full(p, -1, dtype=np.int64)
    chi[(np.arange(p, dtype=np.int64) ** 2) % p] = 1
    chi[0] = 0
    for arr in (x0, x1, c0, c1, chi):
        arr.setflags(write=False)
    return x0, x1, c0, c1, chi, nqr


def point_count(E: Curve) -> int:
    """#E(F_{p^2}) by summing quadratic characters over every x."""
    p = E.p
    if p > ORACLE_MAX_P:
        raise PreconditionError(f"brute-force counting needs p <= {ORACLE_MAX_P}, got {p}")
    x0, x1, c0, c1, chi, nqr = _tables(p)
    a0, a1, b0, b1 = E.a.c0, E.a.c1, E.b.c0, E.b.c1
    r0 = (c0 + a0 * x0 + nqr * a1 % p * x1 + b0) % p
    r1 = (c1 + a0 * x1 + a1 * x0 + b1) % p
    # chi_q(z) = chi_p(norm z)
    nrm = (r0 * r0 - nqr * (r1 * r1 % p)) % p
    return p * p + 1 + int(chi[nrm].sum())


def is_supersingular_by_count(E: Curve) -> bool:
    return (E.p * E.p + 1 - point_count(E)) % E.p == 0


@instrumented
def _oracle(E: Curve) -> Verdict:
    n = point_count(E)
    p = E.p
    t = p * p + 1 - n
    assert abs(t) <= 2 * p, "Hasse bound violated"
    res = Result.SUPERSINGULAR if t % p == 0 else Result.ORDINARY
    return Verdict(res, Method.ORACLE, Fraction(0), {"count": n, "trace": t})


def oracle_brute_force(E: Curve) -> Tuple[int, int, Verdict]:
    """(#E, trace, verdict); supersingular iff p divides the trace."""
    v = _oracle(E)
    return v.certificate["count"], v.certificate["trace"], v


@lru_cache(maxsize=None)
def supersingular_j_invariants(p: int) -> Tuple[FqElem, ...]:
    """Every supersingular j in F_{p^2}, by counting points on one curve per j."""
    F = Fp2.of(p)
    return tuple(j for j in F.elements() if is_supersingular_by_count(curve_from_j(j)))


def all_curves(p: int) -> List[Curve]:
    """Every nonsingular (a, b) over F_{p^2}."""
    F = Fp2.of(p)
    els = list(F.elements())
    out = []
    for a in els:
        a3 = 4 * a * a * a
        for b in els:
            if a3 + 27 * b * b:
                out.append(Curve(a, b))
    return out


def _generator(F: Fp2) -> FqElem:
    """A generator of the multiplicative group of F_{p^2}."""
    n = F.q - 1
    primes = [ell for ell in range(2, n + 1) if n % ell == 0 and all(ell % k for k in range(2, int(ell**0.5) + 1))]
    for g in F.elements():
        if g and all(g ** (n // ell) != 1 for ell in primes):
            return g
    raise AssertionError("no generator")  # pragma: no cover


def isomorphism_class_representatives(p: int) -> List[Curve]:
    """One curve per F_{p^2}-isomorphism class.

    Classes with j != 0, 1728 are a curve and its quadratic twist; j = 1728
    has four classes (y^2 = x^3 + g^i x) and j = 0 six (y^2 = x^3 + g^i).
    """
    F = Fp2.of(p)
    g = _generator(F)
    out = [Curve(F.zero, g**i) for i in range(6)]
    out += [Curve(g**i, F.zero) for i in range(4)]
    for j in F.elements():
        if j == 0 or j == 1728:
            continue
        out.append(curve_from_j(j))
        out.append(curve_from_j(j, twist=True))
    return out
