"""Verdict objects shared by every tester."""

from __future__ import annotations

import enum
import functools
import json
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Dict, Optional, Union

from ..arith import FqElem, op_counter
from ..curve import Curve, j_invariant


class Result(str, enum.Enum):
    SUPERSINGULAR = "supersingular"
    ORDINARY = "ordinary"


class Method(str, enum.Enum):
    ORACLE = "oracle"
    NAIVE = "naive"
    MONTE_CARLO = "monte_carlo"
    SZ_PIT = "sz_pit"
    SCHOOF_LIKE = "schoof_like"
    HIGH_ORDER = "high_order"
    ISOGR = "isogr"


DETERMINISTIC = frozenset({Method.ORACLE, Method.NAIVE, Method.SCHOOF_LIKE, Method.HIGH_ORDER, Method.ISOGR})

ErrorBound = Union[Fraction, str]
CONJECTURAL = "conjectural"


def _jsonable(v: Any) -> Any:
    if isinstance(v, FqElem):
        return str(v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, enum.Enum):
        return v.value
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "c0") and hasattr(v, "field"):  # polynomials
        return str(v)
    return v


@dataclass(frozen=True)
class Verdict:
    result: Result
    method: Method
    error_bound: ErrorBound = Fraction(0)
    certificate: Dict[str, Any] = field(default_factory=dict)
    field_op_count: int = 0
    wall_time_ns: int = 0

    @property
    def supersingular(self) -> bool:
        return self.result is Result.SUPERSINGULAR

    def to_dict(self, timings: bool = True) -> Dict[str, Any]:
        d = {
            "method": self.method.value,
            "result": self.result.value,
            "error_bound": _jsonable(self.error_bound),
            "certificate": _jsonable(self.certificate),
            "field_op_count": self.field_op_count,
        }
        if timings:
            d["wall_time_ns"] = self.wall_time_ns
        return d

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True)

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "Verdict":
        eb = d["error_bound"]
        return cls(
            result=Result(d["result"]),
            method=Method(d["method"]),
            error_bound=eb if eb == CONJECTURAL else Fraction(eb),
            certificate=d.get("certificate", {}),
            field_op_count=d.get("field_op_count", 0),
            wall_time_ns=d.get("wall_time_ns", 0),
        )


def instrumented(fn):
    """Fill in field_op_count and wall_time_ns of the returned Verdict."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter_ns()
        with op_counter() as ops:
            v = fn(*args, **kwargs)
        dt = time.perf_counter_ns() - t0
        return replace(v, field_op_count=ops.count, wall_time_ns=dt)

    return wrapper


def j_shortcut(E: Curve) -> Optional[Result]:
    """Verdict for j = 0 and j = 1728 from p mod 3 and p mod 4; None otherwise."""
    j = j_invariant(E)
    p = E.p
    if j == 0:
        return Result.SUPERSINGULAR if p % 3 == 2 else Result.ORDINARY
    if j == 1728:
        return Result.SUPERSINGULAR if p % 4 == 3 else Result.ORDINARY
    return None


def shortcut_verdict(E: Curve, method: Method) -> Optional[Verdict]:
    r = j_shortcut(E)
    if r is None:
        return None
    return Verdict(r, method, Fraction(0), {"shortcut": "j=0" if j_invariant(E) == 0 else "j=1728"})
