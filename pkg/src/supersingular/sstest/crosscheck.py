"""Run several testers on one curve and compare them."""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

from ..curve import Curve
from .classical import monte_carlo_test, naive_coeff_test
from .high_order import high_order_test
from .isogr import isogr_baseline_test
from .oracle import ORACLE_MAX_P, oracle_brute_force
from .pit import schoof_like_test, sz_pit_test
from .verdict import DETERMINISTIC, Method, Result, Verdict

# Most authoritative first.
AUTHORITY = (
    Method.ORACLE,
    Method.NAIVE,
    Method.SCHOOF_LIKE,
    Method.HIGH_ORDER,
    Method.ISOGR,
    Method.SZ_PIT,
    Method.MONTE_CARLO,
)


def method_rng(seed: int, method: Method) -> random.Random:
    """Independent, reproducible stream per (seed, method)."""
    return random.Random(f"{seed}:{method.value}")


def run_method(E: Curve, method: Method, seed: int = 0, iters: int = 2, params=None) -> Verdict:
    rng = method_rng(seed, method)
    if method is Method.ORACLE:
        return oracle_brute_force(E)[2]
    if method is Method.NAIVE:
        return naive_coeff_test(E)
    if method is Method.MONTE_CARLO:
        return monte_carlo_test(E, iters, rng)
    if method is Method.SZ_PIT:
        return sz_pit_test(E, rng)
    if method is Method.SCHOOF_LIKE:
        return schoof_like_test(E)
    if method is Method.HIGH_ORDER:
        return high_order_test(E, params, rng)
    if method is Method.ISOGR:
        return isogr_baseline_test(E, rng)
    raise ValueError(f"unknown method {method}")


@dataclass
class CrossCheckReport:
    verdicts: Dict[Method, Verdict] = field(default_factory=dict)
    reference: Optional[Method] = None
    disagreements: List[Method] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.disagreements

    def allowed_direction(self) -> bool:
        """True when every disagreement is a probabilistic method calling an ordinary curve supersingular."""
        if self.reference is None:
            return True
        ref = self.verdicts[self.reference].result
        return all(m not in DETERMINISTIC and ref is Result.ORDINARY for m in self.disagreements)


def cross_check(
    E: Curve,
    methods: Iterable[Method],
    seed: int = 0,
    iters: int = 2,
    parallel: bool = False,
) -> CrossCheckReport:
    methods = sorted(set(methods), key=AUTHORITY.index)
    if Method.ORACLE in methods and E.p > ORACLE_MAX_P:
        methods.remove(Method.ORACLE)
    report = CrossCheckReport()
    if not methods:
        return report
    if parallel and len(methods) > 1:
        with ThreadPoolExecutor(max_workers=len(methods)) as ex:
            futs = {m: ex.submit(run_method, E, m, seed, iters) for m in methods}
            report.verdicts = {m: futs[m].result() for m in methods}
    else:
        report.verdicts = {m: run_method(E, m, seed, iters) for m in methods}
    report.reference = methods[0]
    ref = report.verdicts[report.reference].result
    report.disagreements = [m for m in methods[1:] if report.verdicts[m].result is not ref]
    return report
