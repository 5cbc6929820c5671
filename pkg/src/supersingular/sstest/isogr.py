"""Isogeny-graph baseline: walks in the 2-isogeny graph.

On an ordinary component the 2-isogeny graph is a volcano of depth at most
floor(log2 p) + 1; a non-backtracking walk that leaves the crater downwards
reaches the floor, where no forward step exists.  Of the three walks started
from a vertex with three neighbours at least one goes down.  Supersingular
vertices always have all three 2-isogenous j-invariants in F_{p^2}.
"""

from __future__ import annotations

import random
from fractions import Fraction

from ..curve import Curve, j_invariant, two_isogenous_js
from .verdict import Method, Result, Verdict, instrumented


def walk_length(p: int) -> int:
    return p.bit_length()  # floor(log2 p) + 1


@instrumented
def isogr_baseline_test(E: Curve, rng=None) -> Verdict:
    """Deterministic verdict; ``rng`` only drives root extraction."""
    if rng is None:
        rng = random.Random(0)
    j = j_invariant(E)
    first = two_isogenous_js(j, rng)
    if len(first) < 3:
        return Verdict(Result.ORDINARY, Method.ISOGR, Fraction(0), {"stuck_at": 0, "roots": len(first)})
    m = walk_length(E.p)
    for w, start in enumerate(first):
        prev, cur = j, start
        for step in range(1, m + 1):
            nxt = two_isogenous_js(cur, rng)
            if len(nxt) < 3:
                return Verdict(
                    Result.ORDINARY, Method.ISOGR, Fraction(0), {"walk": w, "stuck_at": step, "j": cur}
                )
            nxt.remove(prev)
            prev, cur = cur, nxt[0]
    return Verdict(Result.SUPERSINGULAR, Method.ISOGR, Fraction(0), {"walk_length": m})
