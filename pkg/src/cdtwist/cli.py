"""Command line front end: ``cdtwist twist|table|reduce|multiply|verify|bench``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from . import __version__
from .automaton import twist, twist_array, walk
from .basis import ALL_VARIANTS, ContractError, ProductVariant, check_index, format_path, format_sign, shuffle_doublets
from .kernel import KernelStats, TwistCache, multiply_fast, twist_memo
from .oracle import DenseVector, multiply, oracle_twist
from .periodicity import Rule, canonicalize
from .verify import MAX_VERIFY_BITS, run_suites

ORACLE_TWIST_BITS = 20
PRETTY_TABLE_BITS = 8
DATA_TABLE_BITS = 12
ORACLE_MULTIPLY_LEVEL = 12
FAST_MULTIPLY_LEVEL = 20
BENCH_BITS = 14
CHECK_TOLERANCE = 1e-12


class UsageError(Exception):
    """Bad arguments or input files; exit status 2."""


def dumps(obj) -> str:
    """JSON with sorted keys and floats written to 17 significant digits."""
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            raise UsageError(f"cannot write non-finite number {obj}")
        return format(float(obj), ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(obj[k])}" for k in sorted(obj)) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if obj is None:
        return "null"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def read_vector(path: str) -> DenseVector:
    """Load a ``{"level": N, "coefficients": [...]}`` document."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, ValueError) as exc:
        raise UsageError(f"{path}: {exc}") from None
    if not isinstance(doc, dict) or set(doc) != {"level", "coefficients"}:
        raise UsageError(f"{path}: expected exactly the keys 'level' and 'coefficients'")
    level, coeffs = doc["level"], doc["coefficients"]
    if isinstance(level, bool) or not isinstance(level, int) or level < 0 or level > FAST_MULTIPLY_LEVEL:
        raise UsageError(f"{path}: level must be an integer in [0, {FAST_MULTIPLY_LEVEL}]")
    if not isinstance(coeffs, list) or len(coeffs) != 1 << level:
        raise UsageError(f"{path}: need {1 << level} coefficients for level {level}")
    if not all(isinstance(c, (int, float)) and not isinstance(c, bool) and math.isfinite(c) for c in coeffs):
        raise UsageError(f"{path}: coefficients must be finite numbers")
    return DenseVector(np.array(coeffs, dtype=np.float64))


def vector_document(x: DenseVector) -> str:
    return dumps({"level": x.level, "coefficients": x.coefficients.tolist()})


def _variant(args) -> ProductVariant:
    names = args.variant or ["P3"]
    if len(names) > 1:
        raise UsageError("this command takes a single --variant")
    return ProductVariant.parse(names[0])


def _index(value: str) -> int:
    try:
        return check_index(int(value))
    except (ValueError, ContractError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


# --- commands ---------------------------------------------------------------


def cmd_twist(args, out) -> int:
    variant = _variant(args)
    p, q = args.p, args.q
    engine = args.engine
    if engine == "oracle":
        if max(p.bit_length(), q.bit_length()) > ORACLE_TWIST_BITS:
            raise UsageError(f"oracle engine is limited to indices below 2**{ORACLE_TWIST_BITS}")
        sign = oracle_twist(p, q, variant)
    elif engine == "automaton":
        sign = twist(p, q, variant)
    else:
        sign = twist_memo(p, q, variant)
    print(format_sign(sign), file=out)
    if args.trace:
        if variant.is_transpose:
            print(f"{variant} is the transpose of {variant.transpose}: walking [{q};{p}]", file=out)
            a, b = q, p
        else:
            a, b = p, q
        print(f"[{a};{b}] = {format_path(shuffle_doublets(a, b))}", file=out)
        for d, state in walk(p, q, variant):
            print(f"  {d} -> {state}", file=out)
        print(f"e_{p} e_{q} = {'+' if sign > 0 else '-'}e_{p ^ q}", file=out)
    return 0


def cmd_table(args, out) -> int:
    variant = _variant(args)
    fmt = args.format or "pretty"
    cap = PRETTY_TABLE_BITS if fmt == "pretty" else DATA_TABLE_BITS
    if not 0 <= args.bits <= cap:
        raise UsageError(f"--bits must be in [0, {cap}] for {fmt} output")
    n = 1 << args.bits
    idx = np.arange(n, dtype=np.int64)
    matrix = twist_array(idx[:, None], idx[None, :], variant)
    if fmt == "json":
        print(dumps({"bits": args.bits, "variant": str(variant), "matrix": matrix.tolist()}), file=out)
    elif fmt == "csv":
        print("p\\q," + ",".join(str(q) for q in range(n)), file=out)
        for p in range(n):
            print(f"{p}," + ",".join(format_sign(s) for s in matrix[p]), file=out)
    else:
        width = max(2, len(str(n - 1)))
        print(f"{variant}  " + " ".join(str(q).rjust(width) for q in range(n)), file=out)
        for p in range(n):
            print(str(p).rjust(len(str(variant))) + "  " + " ".join(format_sign(s).rjust(width) for s in matrix[p]), file=out)
    return 0


def cmd_reduce(args, out) -> int:
    trace = canonicalize(args.p, args.q)
    p, q = trace.canonical
    if p == 0 or q == 0:
        note = "omega=+1 (zero index)"
    elif p == q:
        note = "omega=-1 (equal indices)"
    else:
        note = None
    if args.format == "json":
        steps = [
            {
                "rule": s.rule.value,
                "before": list(s.before),
                "after": list(s.after),
                "sign_factor": s.sign_factor,
                "octave_N": s.octave_N,
            }
            for s in trace.steps
        ]
        doc = {"original": list(trace.original), "canonical": [p, q], "total_sign": trace.total_sign, "steps": steps}
        if note:
            doc["note"] = note
        print(dumps(doc), file=out)
        return 0
    print(f"canonical: {p} {q}", file=out)
    print(f"sign: {format_sign(trace.total_sign)}", file=out)
    print(f"steps: {len(trace.steps)}", file=out)
    for s in trace.steps:
        octave = "" if s.rule is Rule.SWAP_ANTISYM else f" N={s.octave_N}"
        print(f"  {s.rule.value}{octave}: {s.before} -> {s.after} factor {format_sign(s.sign_factor)}", file=out)
    if note:
        print(note, file=out)
    return 0


def cmd_multiply(args, out) -> int:
    variant = _variant(args)
    x, y = read_vector(args.lhs), read_vector(args.rhs)
    if x.level != y.level:
        raise UsageError(f"level mismatch: {x.level} vs {y.level}")
    if args.engine == "oracle" and x.level > ORACLE_MULTIPLY_LEVEL:
        raise UsageError(f"oracle engine is limited to level {ORACLE_MULTIPLY_LEVEL}")
    product = multiply(x, y, variant) if args.engine == "oracle" else multiply_fast(x, y, variant)
    status = 0
    if args.check:
        if x.level > ORACLE_MULTIPLY_LEVEL:
            raise UsageError(f"--check runs the oracle, which is limited to level {ORACLE_MULTIPLY_LEVEL}")
        other = multiply_fast(x, y, variant) if args.engine == "oracle" else multiply(x, y, variant)
        diff = float(np.abs(product.coefficients - other.coefficients).max())
        ok = diff <= CHECK_TOLERANCE
        print(f"check: fast vs oracle max abs difference {diff:.3g} ({'ok' if ok else 'MISMATCH'})", file=sys.stderr)
        status = 0 if ok else 1
    print(vector_document(product), file=out)
    return status


def cmd_verify(args, out) -> int:
    if not 0 <= args.max_bits <= MAX_VERIFY_BITS:
        raise UsageError(f"--max-bits must be in [0, {MAX_VERIFY_BITS}]")
    variants = [ProductVariant.parse(v) for v in args.variant] if args.variant else list(ALL_VARIANTS)
    results = run_suites(args.max_bits, variants, seed=args.seed)
    if args.format == "json":
        print(dumps([{"suite": r.name, "checked": r.checked, "failures": r.failures, "example": r.example} for r in results]), file=out)
    else:
        for r in results:
            print(r.line(), file=out)
    failed = [r.name for r in results if not r.passed]
    if args.format != "json":
        print("all suites passed" if not failed else "failed suites: " + ", ".join(failed), file=out)
    return 1 if failed else 0


def _best_time(fn, reps):
    best, result = math.inf, None
    for _ in range(reps):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def cmd_bench(args, out) -> int:
    variant = _variant(args)
    bits, reps = args.bits, args.reps
    if not 0 <= bits <= BENCH_BITS:
        raise UsageError(f"--bits must be in [0, {BENCH_BITS}]")
    if reps < 1:
        raise UsageError("--reps must be at least 1")
    rng = np.random.default_rng(args.seed)
    x = DenseVector(rng.normal(size=1 << bits))
    y = DenseVector(rng.normal(size=1 << bits))

    uncached_stats = KernelStats()
    uncached_time, _ = _best_time(lambda: multiply_fast(x, y, variant), reps)
    plain = multiply_fast(x, y, variant, stats=uncached_stats)

    cache = TwistCache(variant)
    cold_stats = KernelStats()
    t0 = time.perf_counter()
    cached = multiply_fast(x, y, variant, cache=cache, stats=cold_stats)
    cold_time = time.perf_counter() - t0
    warm_time, warm = _best_time(lambda: multiply_fast(x, y, variant, cache=cache), reps)
    identical = plain == cached and plain == warm

    pairs = rng.integers(0, 1 << bits, size=(20000, 2)).tolist() if bits else [(0, 0)] * 20000
    t0 = time.perf_counter()
    for p, q in pairs:
        twist(p, q, variant)
    scalar_rate = len(pairs) / (time.perf_counter() - t0)

    report = {
        "bits": bits,
        "variant": str(variant),
        "reps": reps,
        "uncached_seconds": uncached_time,
        "uncached_twist_evaluations": uncached_stats.twist_evaluations,
        "cached_cold_seconds": cold_time,
        "cached_warm_seconds": warm_time,
        "cache_entries": len(cache),
        "cached_twist_evaluations": cold_stats.twist_evaluations,
        "cached_lookups": cold_stats.cache_lookups,
        "automaton_evaluations_per_second": scalar_rate,
        "cached_matches_uncached": identical,
    }
    if args.format == "json":
        print(dumps(report), file=out)
    else:
        for key, value in report.items():
            if isinstance(value, float):
                value = f"{value:.6g}"
            print(f"{key}: {value}", file=out)
    return 0 if identical else 1


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--variant", action="append", metavar="NAME",
                        help="doubling product P0-P3 or T0-T3 (default P3; verify: repeatable, default all)")
    common.add_argument("--format", choices=("pretty", "csv", "json"), help="output format")
    common.add_argument("--trace", action="store_true", help="twist: show the doublet path and visited states")
    common.add_argument("--check", action="store_true", help="multiply: cross-check fast against oracle")

    parser = argparse.ArgumentParser(prog="cdtwist", description="Exact Cayley-Dickson basis twists and products.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("twist", parents=[common], help="sign of e_p e_q")
    p.add_argument("--p", type=_index, required=True)
    p.add_argument("--q", type=_index, required=True)
    p.add_argument("--engine", choices=("auto", "automaton", "oracle", "reduced"), default="auto")
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("table", parents=[common], help="2**bits x 2**bits sign matrix")
    p.add_argument("--bits", type=int, required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("reduce", parents=[common], help="canonical pair and reduction steps")
    p.add_argument("--p", type=_index, required=True)
    p.add_argument("--q", type=_index, required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("multiply", parents=[common], help="product of two vector files")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.add_argument("--engine", choices=("fast", "oracle"), default="fast")
    p.set_defaults(func=cmd_multiply)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suites")
    p.add_argument("--max-bits", type=int, default=7)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[common], help="time the fast kernel")
    p.add_argument("--bits", type=int, default=10)
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format == "csv" and args.command != "table":
        parser.error("csv output is only available for table")
    try:
        return args.func(args, out)
    except (UsageError, ContractError) as exc:
        print(f"cdtwist {args.command}: error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())
