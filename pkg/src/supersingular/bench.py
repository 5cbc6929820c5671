"""Benchmark harness: mean time and field-operation counts per (size, class, method)."""

from __future__ import annotations

import csv
import io
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Iterable, List, Sequence, Tuple

from .arith import is_prime
from .curve import Curve, gen_ordinary, gen_supersingular
from .sstest.crosscheck import run_method
from .sstest.verdict import Method

CLASSES = ("ordinary", "supersingular")
CSV_COLUMNS = ("p_bits", "class", "method", "n_curves", "mean_time_s", "mean_field_ops", "seed")


@dataclass(frozen=True)
class BenchRecord:
    p_bits: int
    curve_class: str
    method: str
    n_curves: int
    mean_time_s: float
    mean_field_ops: int
    seed: int

    def __post_init__(self):
        if self.n_curves < 1:
            raise ValueError("n_curves must be at least 1")
        if self.mean_time_s < 0:
            raise ValueError("times are non-negative")
        if self.curve_class not in CLASSES:
            raise ValueError(f"unknown curve class {self.curve_class!r}")

    def row(self) -> dict:
        d = asdict(self)
        d["class"] = d.pop("curve_class")
        return {k: d[k] for k in CSV_COLUMNS}


def bench_prime(bits: int, seed: int) -> int:
    """A random prime of the given size that is not 1 mod 12.

    Both curve classes can then be generated without a search over j.
    """
    if bits < 3:
        raise ValueError("need at least 3 bits")
    rng = random.Random(f"{seed}:prime:{bits}")
    while True:
        n = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        while not (is_prime(n) and n % 12 != 1):
            n += 2
        if n.bit_length() == bits and n > 3:
            return n


def bench_curves(p: int, cls: str, n: int, seed: int) -> List[Curve]:
    out = []
    for i in range(n):
        rng = random.Random(f"{seed}:{p}:{cls}:{i}")
        out.append(gen_ordinary(p, rng) if cls == "ordinary" else gen_supersingular(p, rng))
    return out


def time_one(job: Tuple[Curve, Method, int]) -> Tuple[float, int, str]:
    E, method, seed = job
    t0 = time.perf_counter()
    v = run_method(E, method, seed)
    dt = time.perf_counter() - t0
    return dt, v.field_op_count, v.result.value


def run_bench(
    bits_list: Sequence[int],
    methods: Iterable[Method] = (Method.HIGH_ORDER, Method.ISOGR),
    n_curves: int = 10,
    seed: int = 0,
    serial: bool = False,
    deterministic: bool = False,
) -> List[BenchRecord]:
    methods = list(methods)
    jobs = []
    keys = []
    for bits in bits_list:
        p = bench_prime(bits, seed)
        for cls in CLASSES:
            curves = bench_curves(p, cls, n_curves, seed)
            for m in methods:
                for i, E in enumerate(curves):
                    jobs.append((E, m, seed * 1000003 + i))
                    keys.append((bits, cls, m))
    if serial or len(jobs) == 1:
        results = [time_one(j) for j in jobs]
    else:
        with ProcessPoolExecutor() as ex:
            results = list(ex.map(time_one, jobs))
    acc = {}
    for key, (dt, ops, _) in zip(keys, results):
        acc.setdefault(key, []).append((dt, ops))
    out = []
    for (bits, cls, m), vals in acc.items():
        mt = 0.0 if deterministic else sum(v[0] for v in vals) / len(vals)
        mo = round(sum(v[1] for v in vals) / len(vals))
        out.append(BenchRecord(bits, cls, m.value, len(vals), mt, mo, seed))
    return out


def records_to_csv(records: Iterable[BenchRecord]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in records:
        row = r.row()
        row["mean_time_s"] = repr(r.mean_time_s)
        w.writerow(row)
    return buf.getvalue()


def records_from_csv(text: str) -> List[BenchRecord]:
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        out.append(
            BenchRecord(
                p_bits=int(row["p_bits"]),
                curve_class=row["class"],
                method=row["method"],
                n_curves=int(row["n_curves"]),
                mean_time_s=float(row["mean_time_s"]),
                mean_field_ops=int(row["mean_field_ops"]),
                seed=int(row["seed"]),
            )
        )
    return out


def records_to_json(records: Iterable[BenchRecord]) -> str:
    return json.dumps([r.row() for r in records], sort_keys=True)


def records_from_json(text: str) -> List[BenchRecord]:
    out = []
    for d in json.loads(text):
        d = dict(d)
        d["curve_class"] = d.pop("class")
        out.append(BenchRecord(**d))
    return out
