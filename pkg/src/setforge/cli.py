"""``setforge`` command line: check dumps, fuzz, exhaustive runs, benchmarks,
and the property catalog.

Exit status is 0 when everything passed, 1 when an invariant or property
failed, and 2 on usage or parse errors.
"""

import argparse
import logging
import os
import sys

from setforge import textio
from setforge.harness import bench as benchmod
from setforge.harness import faults
from setforge.harness.exhaustive import MAX_BITS, run_exhaustive
from setforge.harness.properties import REGISTRY, property_ids, run_properties, run_property
from setforge.harness.scripts import STRUCTURES
from setforge.bitops import WORD_MASK

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _hex64(text):
    try:
        v = int(text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError("seed must be hexadecimal, got %r" % text) from None
    if not 0 <= v <= WORD_MASK:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _positive(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer, got %r" % text)
    return v


class Out:
    def __init__(self, quiet):
        self.quiet = quiet

    def info(self, *parts):
        if not self.quiet:
            print(*parts)

    def always(self, *parts):
        print(*parts)

    def err(self, *parts):
        print("setforge:", *parts, file=sys.stderr)


def _seed(args, out):
    seed = args.seed if args.seed is not None else int.from_bytes(os.urandom(8), "big")
    out.always("seed=%#018x" % seed)
    return seed


def _table(rows, header):
    widths = [max(len(str(r[i])) for r in rows + [header]) for i in range(len(header))]
    fmt = "  ".join("%%-%ds" % w for w in widths)
    lines = [fmt % tuple(header), fmt % tuple("-" * w for w in widths)]
    lines.extend(fmt % tuple(str(c) for c in r) for r in rows)
    return "\n".join(lines)


def _print_failure(out, result):
    out.always("FAIL %s after %d case(s)" % (result.property_id, result.cases_run))
    out.always(result.diagnostics)
    if result.rules:
        out.always("rules: %s" % " ".join(result.rules))
    if result.counterexample is not None:
        out.always("minimal script (%d ops):" % result.counterexample_ops)
        out.always(result.format_counterexample().rstrip("\n"))


# ---------------------------------------------------------------------------
# commands


def cmd_check(args, out):
    if args.path == "-":
        text = sys.stdin.read()
        name = "<stdin>"
    else:
        try:
            with open(args.path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError("cannot read %s: %s" % (args.path, e.strerror)) from None
        name = args.path
    parse = textio.parse_wbset if args.kind == "wb" else textio.parse_pset
    try:
        tree = parse(text)
    except textio.ParseError as e:
        raise UsageError("%s: parse error at %s" % (name, e)) from None
    report = STRUCTURES[args.kind].check(tree)
    if report.ok:
        out.info("ok")
        return EXIT_OK
    for f in report.failures:
        out.always(str(f))
    return EXIT_FAIL


def _kinds(kind):
    return ("wb", "pt") if kind == "both" else (kind,)


def cmd_fuzz(args, out):
    seed = _seed(args, out)
    status = EXIT_OK
    rows = []
    for i, kind in enumerate(_kinds(args.kind)):
        pid = "%s.wf-after-ops" % kind
        result = run_property(pid, args.cases, (seed + i) & WORD_MASK, max_ops=args.ops, exact_ops=True)
        rows.append((kind, result.cases_run, args.ops, result.status))
        if not result.passed:
            _print_failure(out, result)
            status = EXIT_FAIL
    out.info(_table(rows, ("kind", "scripts", "ops", "status")))
    return status


def cmd_exhaustive(args, out):
    if not 0 <= args.bits <= MAX_BITS:
        raise UsageError("--bits must be between 0 and %d" % MAX_BITS)
    result = run_exhaustive(args.bits)
    out.info(_table([(result.property_id, result.cases_run, result.status)], ("check", "comparisons", "status")))
    if not result.passed:
        _print_failure(out, result)
        return EXIT_FAIL
    return EXIT_OK


def cmd_bench(args, out):
    seed = args.seed if args.seed is not None else 0
    if not args.quiet:
        print("# seed=%#x" % seed, file=sys.stderr)
    try:
        rows = benchmod.bench(args.op, args.size, args.reps, seed)
    except KeyError as e:
        raise UsageError(e.args[0]) from None
    except benchmod.BenchMismatch as e:
        out.err(str(e))
        return EXIT_FAIL
    benchmod.write_csv(rows, sys.stdout)
    if args.op == "wb.union.singleton" and not args.quiet:
        fast, generic = rows[0]["ns_per_op_median"], rows[1]["ns_per_op_median"]
        if generic:
            print("# fast/generic time ratio %.3f (informational)" % (fast / generic), file=sys.stderr)
    return EXIT_OK


def cmd_props(args, out):
    if args.list:
        rows = [(pid, REGISTRY[pid].origin, REGISTRY[pid].arity) for pid in property_ids(args.filter)]
        out.always(_table(rows, ("property", "origin", "arity")))
        return EXIT_OK
    ids = property_ids(args.filter)
    if not ids:
        raise UsageError("no property matches %r" % args.filter)
    seed = _seed(args, out)
    if args.fault:
        out.always("fault injected: %s (%s)" % (args.fault, faults.DESCRIPTIONS[args.fault]))
        with faults.inject(args.fault):
            results = run_properties(ids, args.cases, seed, workers=args.workers)
    else:
        results = run_properties(ids, args.cases, seed, workers=args.workers)
    rows = [(r.property_id, REGISTRY[r.property_id].origin, r.cases_run, r.status) for r in results]
    out.info(_table(rows, ("property", "origin", "cases", "status")))
    failed = [r for r in results if not r.passed]
    for r in failed:
        _print_failure(out, r)
    out.info("%d passed, %d failed" % (len(results) - len(failed), len(failed)))
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _global_flags(parser, suppress):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--seed", type=_hex64, default=default, help="64-bit hex seed (random when omitted)")
    parser.add_argument(
        "--quiet", action="store_true", default=argparse.SUPPRESS if suppress else False, help="print failures only"
    )


def build_parser():
    parser = argparse.ArgumentParser(prog="setforge", description=__doc__.split("\n\n")[0])
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("check", help="validate a tree dump")
    p.add_argument("path", nargs="?", default="-", help="dump file, or - for stdin")
    p.add_argument("--kind", choices=("wb", "pt"), required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("fuzz", help="random scripts, validating every intermediate tree")
    p.add_argument("--kind", choices=("wb", "pt", "both"), default="both")
    p.add_argument("--cases", type=_positive, default=1000)
    p.add_argument("--ops", type=_positive, default=200)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("exhaustive", help="all subsets and pairs of a small universe")
    p.add_argument("--bits", type=int, default=MAX_BITS)
    p.set_defaults(func=cmd_exhaustive)

    p = sub.add_parser("bench", help="timing smoke test, CSV on stdout")
    p.add_argument("--op", required=True, help="one of: " + ", ".join(benchmod.BENCH_OPS))
    p.add_argument("--size", type=_positive, default=10000)
    p.add_argument("--reps", type=int, default=20)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("props", help="run the property catalog")
    p.add_argument("--filter", default=None, help="regular expression on property ids")
    p.add_argument("--cases", type=_positive, default=1000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--fault", choices=sorted(faults.FAULTS), help="run with a deliberately broken operation")
    p.add_argument("--list", action="store_true", help="list matching properties and exit")
    p.set_defaults(func=cmd_props)

    for p in sub.choices.values():
        _global_flags(p, suppress=True)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    out = Out(args.quiet)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    if args.command == "bench" and args.reps < 1:
        out.err("--reps must be at least 1")
        return EXIT_USAGE
    if getattr(args, "filter", None) is not None:
        try:
            property_ids(args.filter)
        except Exception as e:
            out.err("bad --filter expression: %s" % e)
            return EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as e:
        out.err(str(e))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
