"""Command-line interface: test, gen, bench, divpoly, oracle."""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import List, Optional

from .arith import random_prime
from .bench import records_to_csv, records_to_json, run_bench
from .curve import Curve, gen_ordinary, gen_supersingular, j_invariant
from .divpoly import base_polys, f_n
from .errors import PreconditionError
from .poly import Poly
from .sstest.classical import NAIVE_MAX_P
from .sstest.crosscheck import AUTHORITY, run_method
from .sstest.high_order import select_r
from .sstest.oracle import ORACLE_MAX_P, oracle_brute_force
from .sstest.verdict import Method

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_PRECONDITION = 3

METHOD_NAMES = [m.value for m in AUTHORITY]


class InvalidInput(ValueError):
    pass


def _curve(text: Optional[str]) -> Curve:
    if not text:
        raise InvalidInput("--curve is required")
    try:
        return Curve.parse(text)
    except ValueError as e:
        raise InvalidInput(str(e)) from None


def _default_methods(p: int) -> List[Method]:
    out = []
    for m in AUTHORITY:
        if m is Method.ORACLE and p > ORACLE_MAX_P:
            continue
        if m is Method.NAIVE and p > NAIVE_MAX_P:
            continue
        if m is Method.SCHOOF_LIKE and p.bit_length() > 40:
            continue
        out.append(m)
    return out


def _prime_from_args(args) -> int:
    if (args.p is None) == (args.p_bits is None):
        raise InvalidInput("give exactly one of --p and --p-bits")
    if args.p is not None:
        from .arith import is_prime

        if args.p <= 3 or not is_prime(args.p):
            raise InvalidInput(f"p must be a prime > 3, got {args.p}")
        return args.p
    if args.p_bits < 3:
        raise InvalidInput("--p-bits must be at least 3")
    return random_prime(args.p_bits, random.Random(f"{args.seed}:prime"))


def cmd_test(args, out) -> int:
    E = _curve(args.curve)
    methods = [Method(m) for m in args.method] if args.method else _default_methods(E.p)
    params = None
    if args.epsilon is not None or args.poonen_c is not None:
        params = select_r(E.p, args.epsilon, args.poonen_c)
    timings = not args.deterministic
    verdicts = [run_method(E, m, args.seed, args.iters, params if m is Method.HIGH_ORDER else None) for m in methods]
    if args.format == "json":
        for v in verdicts:
            out.write(v.to_json(timings) + "\n")
    elif args.format == "csv":
        cols = ["method", "result", "error_bound", "field_op_count"] + (["wall_time_ns"] if timings else [])
        out.write(",".join(cols) + "\n")
        for v in verdicts:
            d = v.to_dict(timings)
            out.write(",".join(str(d[c]) for c in cols) + "\n")
    else:
        for v in verdicts:
            line = f"{v.method.value}: {v.result.value} (error bound {v.error_bound}, {v.field_op_count} field ops"
            if timings:
                line += f", {v.wall_time_ns / 1e9:.6f} s"
            out.write(line + ")\n")
    return EXIT_OK


def cmd_gen(args, out) -> int:
    p = _prime_from_args(args)
    rng = random.Random(f"{args.seed}:gen")
    if args.curve_class == "ordinary":
        E = gen_ordinary(p, rng)
    else:
        E = gen_supersingular(p, rng, args.walk_steps)
    if args.format == "json":
        out.write(json.dumps({"curve": str(E), "j": str(j_invariant(E))}, sort_keys=True) + "\n")
    else:
        out.write(str(E) + "\n")
    return EXIT_OK


def cmd_bench(args, out) -> int:
    if not args.bits:
        raise InvalidInput("give at least one bit size")
    if args.n_curves < 1:
        raise InvalidInput("--n-curves must be at least 1")
    methods = [Method(m) for m in args.method] if args.method else [Method.HIGH_ORDER, Method.ISOGR]
    recs = run_bench(args.bits, methods, args.n_curves, args.seed, args.serial, args.deterministic)
    if args.format == "json":
        out.write(records_to_json(recs) + "\n")
    elif args.format == "csv":
        out.write(records_to_csv(recs))
    else:
        for r in recs:
            out.write(
                f"{r.p_bits:>4} bits  {r.curve_class:<13} {r.method:<11} "
                f"{r.mean_time_s:.6f} s  {r.mean_field_ops} ops  (n={r.n_curves})\n"
            )
    return EXIT_OK


def cmd_divpoly(args, out) -> int:
    E = _curve(args.curve)
    ctx = base_polys(E)
    modulus = None
    if args.modulus:
        try:
            modulus = Poly.parse(E.field, args.modulus)
        except ValueError as e:
            raise InvalidInput(str(e)) from None
        if modulus.degree < 1:
            raise InvalidInput("modulus must have degree at least 1")
    if args.m < 0:
        raise InvalidInput("--m must be non-negative")
    f = f_n(ctx, args.m, modulus)
    if args.format == "json":
        out.write(json.dumps({"m": args.m, "f": str(f), "degree": f.degree}, sort_keys=True) + "\n")
    else:
        out.write(str(f) + "\n")
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    E = _curve(args.curve)
    n, t, v = oracle_brute_force(E)
    if args.format == "json":
        out.write(json.dumps({"count": n, "trace": t, "result": v.result.value}, sort_keys=True) + "\n")
    else:
        out.write(f"count {n}\ntrace {t}\n{v.result.value}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="supersingular", description="Decide supersingularity of curves over F_{p^2}.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, formats=("json", "csv", "text"), default="text"):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("--deterministic", action="store_true", help="omit wall-clock timings from the output")

    t = sub.add_parser("test", help="run supersingularity testers on a curve")
    t.add_argument("--curve", required=True, help='"p; a; b" with coefficients like 3+1*u')
    t.add_argument("--method", action="append", choices=METHOD_NAMES)
    t.add_argument("--iters", type=int, default=2, help="Monte Carlo rounds")
    t.add_argument("--epsilon", type=float)
    t.add_argument("--poonen-c", type=float, help="heuristic small-r mode with this order exponent")
    common(t)

    g = sub.add_parser("gen", help="generate a random curve")
    g.add_argument("--p", type=int)
    g.add_argument("--p-bits", type=int)
    g.add_argument("--class", dest="curve_class", choices=["ordinary", "supersingular"], default="ordinary")
    g.add_argument("--walk-steps", type=int)
    common(g, ("json", "text"))

    b = sub.add_parser("bench", help="time testers on random curves of several sizes")
    b.add_argument("bits", type=int, nargs="*")
    b.add_argument("--n-curves", type=int, default=10)
    b.add_argument("--method", action="append", choices=METHOD_NAMES)
    b.add_argument("--serial", action="store_true")
    common(b, default="csv")

    d = sub.add_parser("divpoly", help="print the division polynomial f_m")
    d.add_argument("--curve", required=True)
    d.add_argument("--m", type=int, required=True)
    d.add_argument("--modulus", help="reduce modulo this polynomial")
    common(d, ("json", "text"))

    o = sub.add_parser("oracle", help="count points by brute force")
    o.add_argument("--curve", required=True)
    common(o, ("json", "text"))
    return ap


COMMANDS = {"test": cmd_test, "gen": cmd_gen, "bench": cmd_bench, "divpoly": cmd_divpoly, "oracle": cmd_oracle}


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except InvalidInput as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except PreconditionError as e:
        print(f"precondition failed: {e}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
