"""Command-line front end: ``congrue {test,scan,verify,bench}``.

Exit status: 0 success / prime, 1 composite or suite failure, 2 usage or
domain error, 3 disagreement with the primality oracle.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Sequence

from . import __version__, oracle
from .bench import BenchConfig, aggregate, run_bench
from .congruence import Method, run_test
from .errors import CheckpointError, DomainError, InternalError
from .records import BENCH_FIELDS, RecordWriter, format_report
from .scan import ScanConfig, run_scan
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DISAGREE = 0, 1, 2, 3

log = logging.getLogger("congrue")


class UsageError(Exception):
    pass


def parse_range(text: str) -> tuple[int, int]:
    """``LO:HI`` or ``LO..HI``, inclusive; a lone ``N`` means ``N:N``."""
    for sep in ("..", ":"):
        if sep in text:
            lo, _, hi = text.partition(sep)
            break
    else:
        lo = hi = text
    try:
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; expected LO:HI") from None


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None


def _methods(values: list[str] | None, default: Sequence[Method]) -> tuple[Method, ...]:
    if not values:
        return tuple(default)
    out = []
    for chunk in values:
        for name in chunk.split(","):
            try:
                out.append(Method(name.strip()))
            except ValueError:
                raise UsageError(
                    f"unknown method {name!r}; choose from {', '.join(m.value for m in Method)}"
                ) from None
    return tuple(out)


def _jobs(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("CONGRUE_JOBS")
    if not env:
        return 1
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"CONGRUE_JOBS must be an integer, got {env!r}") from None


def _oracle(n: int) -> bool | None:
    return oracle.miller_rabin_64(n) if 2 <= n < 1 << 64 else None


def cmd_test(args: argparse.Namespace) -> int:
    method = _methods([args.method], [Method.VANTIEGHEM])[0]
    report = run_test(method, args.n, args.base)
    truth = _oracle(args.n)
    agreed = None if truth is None else report.verdict == truth
    sys.stdout.write(format_report(report, agreed, args.format))
    return EXIT_OK if report.verdict else EXIT_FAIL


def cmd_scan(args: argparse.Namespace) -> int:
    config = ScanConfig(
        n_range=args.range,
        bases=tuple(args.bases),
        methods=_methods(args.method, [Method.VANTIEGHEM]),
        jobs=_jobs(args.jobs),
        checkpoint_path=args.checkpoint,
        output_format=args.format,
        timings=args.timings,
    )
    if args.resume and not args.checkpoint:
        raise UsageError("--resume needs --checkpoint")
    try:
        summary = run_scan(config, output_path=args.output, resume=args.resume, restart=args.restart)
    except CheckpointError as exc:
        if args.resume:
            raise CheckpointError(f"{exc}; refusing to resume (pass --restart to start over)") from exc
        raise
    if args.plot:
        from .plotting import plot_scan

        plot_scan(summary.rows, args.plot)
    resumed = f", resumed at n={summary.resumed_from}" if summary.resumed_from else ""
    print(
        f"scan: {summary.records} records, {summary.agreements} agree, "
        f"{summary.disagreements} disagree with oracle{resumed}",
        file=sys.stderr,
    )
    return EXIT_DISAGREE if summary.disagreements else EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    results = run_suite(args.suite, args.bound)
    failed = [r for r in results if not r.passed]
    for r in results:
        if args.quiet and r.passed:
            continue
        if args.format == "json":
            print(json.dumps({"suite": r.suite, "case": r.case, "passed": r.passed, "detail": r.detail}))
        else:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.case:<24} {r.detail}")
    print(f"{args.suite}: {len(results) - len(failed)}/{len(results)} cases passed", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    config = BenchConfig(
        n_range=args.range,
        methods=_methods(args.method, [Method.VANTIEGHEM, Method.TRIAL]),
        base=args.base,
        repeats=args.repeats,
        warmup=args.warmup,
        jobs=_jobs(args.jobs),
        output_format=args.format,
    )
    records = run_bench(config)
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        writer = RecordWriter(out, config.output_format, BENCH_FIELDS)
        writer.header()
        for r in records:
            writer.write(r.row())
    finally:
        if args.output:
            out.close()
    print(f"{'n range':>13}  {'method':<13} {'cells':>5}  {'median ns':>12}", file=sys.stderr)
    for b in aggregate(records):
        print(f"{b.lo:>6}-{b.hi:<6}  {b.method:<13} {b.cells:>5}  {b.median_ns:>12}", file=sys.stderr)
    if args.plot:
        from .plotting import plot_bench

        plot_bench(records, args.plot)
    bad = sum(not r.agreed_with_oracle for r in records)
    return EXIT_DISAGREE if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="congrue", description="Congruence-based primality tests and their verification."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    method_help = "comma-separated subset of " + ", ".join(m.value for m in Method)

    p = sub.add_parser("test", help="run one primality test")
    p.add_argument("n", type=int)
    p.add_argument("--method", default="vantieghem", help=", ".join(m.value for m in Method))
    p.add_argument("--base", type=int, default=None, help="base m for vantieghem (default 2)")
    p.add_argument("--format", choices=("json", "csv", "table"), default="table")
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("scan", help="scan a grid of (n, m, method) against the oracle")
    p.add_argument("--range", type=parse_range, required=True, metavar="LO:HI")
    p.add_argument("--bases", "--base", type=parse_int_list, default=[2], metavar="M[,M...]")
    p.add_argument("--method", action="append", help=method_help)
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default $CONGRUE_JOBS or 1)")
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p.add_argument("--output", "-o", metavar="PATH", help="report file (default stdout)")
    p.add_argument("--checkpoint", metavar="PATH")
    p.add_argument("--resume", action="store_true", help="continue from --checkpoint")
    p.add_argument("--restart", action="store_true", help="ignore any existing checkpoint")
    p.add_argument("--timings", action="store_true", help="record elapsed_ns (makes output nondeterministic)")
    p.add_argument("--plot", metavar="PATH", help="also write a verdict map figure")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="run an identity-verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--bound", "--max-m", "--max-n", dest="bound", type=int, default=None)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--quiet", "-q", action="store_true", help="only print failures")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time methods per n and report medians")
    p.add_argument("--range", type=parse_range, required=True, metavar="LO:HI")
    p.add_argument("--method", action="append", help=method_help)
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--warmup", type=int, default=1)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p.add_argument("--output", "-o", metavar="PATH")
    p.add_argument("--plot", metavar="PATH", help="also write a timing figure")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, DomainError, CheckpointError) as exc:
        print(f"congrue {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalError as exc:
        print(f"congrue {args.command}: internal error: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    except BrokenPipeError:
        # downstream reader went away (e.g. ``| head``)
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
