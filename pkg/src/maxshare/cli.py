"""Command-line front end.

Subcommands:

    taut         check a formula (file or generated benchmark) for
                 tautology; exit 0 iff tautology, 1 iff not, 2 on error
    bench        run a benchmark suite over sizes 1..N, one JSON record
                 per size; exit 3 if any size is not a tautology
    lambda-sort  sort a comma-separated list of naturals through the
                 lambda-calculus quicksort; exit 3 on decode failure

Reports go to stdout as JSON (schema 1), diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Any

from . import formula as fm
from . import lam
from .bdd import BddManager
from .memo import DepthExceededError, MemoError

SCHEMA_VERSION = 1

NO_MEMO_VALUE_LIMIT = 8


@dataclass
class RunReport:
    command: str
    result: Any
    node_count: int
    pool_stats: dict[str, int]
    memo_stats: dict[str, dict[str, int]]
    wall_time_ms: float
    schema: int = SCHEMA_VERSION
    extra: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> str:
        d = asdict(self)
        d.update(d.pop("extra"))
        return json.dumps(d, sort_keys=True)


def _pool_stats_dict(mgr: BddManager | lam.LambdaManager) -> dict[str, int]:
    s = mgr.pool.stats()
    return {"node_count": s.node_count, "intern_hits": s.intern_hits,
            "intern_misses": s.intern_misses}


def _lambda_memo_stats(mgr: lam.LambdaManager) -> dict[str, dict[str, int]]:
    tables = {"lifti": mgr.m_lifti, "subst": mgr.m_subst,
              "hnf": mgr.m_hnf, "nf": mgr.m_nf}
    return {name: {"hits": t.hits, "misses": t.misses,
                   "body_evaluations": t.body_evaluations}
            for name, t in tables.items()}


def _taut_formula(args) -> tuple[str, fm.Formula]:
    if args.urquhart is not None:
        return f"taut --urquhart {args.urquhart}", fm.urquhart(args.urquhart)
    if args.pigeonhole is not None:
        return (f"taut --pigeonhole {args.pigeonhole}",
                fm.pigeonhole(args.pigeonhole))
    with open(args.file, encoding="utf-8") as fh:
        return f"taut --file {args.file}", fm.parse(fh.read())


def _check_size(size: int, suite: str) -> RunReport:
    f = fm.urquhart(size) if suite == "urquhart" else fm.pigeonhole(size)
    mgr = BddManager()
    t0 = time.perf_counter()
    ref = fm.compile(mgr, f)
    taut = mgr.is_tautology(ref)
    ms = (time.perf_counter() - t0) * 1000.0
    return RunReport(
        command=f"bench {suite} --size {size}",
        result=taut,
        node_count=mgr.node_count(ref),
        pool_stats=_pool_stats_dict(mgr),
        memo_stats=mgr.memo_stats(),
        wall_time_ms=ms,
        extra={"size": size},
    )


def cmd_taut(args) -> int:
    try:
        command, f = _taut_formula(args)
    except (fm.FormulaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    mgr = BddManager()
    t0 = time.perf_counter()
    try:
        ref = fm.compile(mgr, f)
    except (fm.FormulaError, MemoError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    taut = mgr.is_tautology(ref)
    ms = (time.perf_counter() - t0) * 1000.0
    report = RunReport(
        command=command,
        result=taut,
        node_count=mgr.node_count(ref),
        pool_stats=_pool_stats_dict(mgr),
        memo_stats=mgr.memo_stats(),
        wall_time_ms=ms,
    )
    print(report.to_json())
    return 0 if taut else 1


def cmd_bench(args) -> int:
    try:
        reports = [_check_size(size, args.suite)
                   for size in range(1, args.max + 1)]
    except (fm.FormulaError, MemoError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for r in reports:
        if args.json:
            print(r.to_json())
        else:
            status = "tautology" if r.result else "NOT A TAUTOLOGY"
            print(f"{args.suite}({r.extra['size']}): {status}, "
                  f"{r.node_count} nodes, {r.wall_time_ms:.1f} ms")
    if not all(r.result for r in reports):
        print("error: benchmark formula was not a tautology "
              "(engine bug)", file=sys.stderr)
        return 3
    return 0


def _parse_csv(text: str) -> list[int]:
    if text.strip() == "":
        return []
    try:
        values = [int(part) for part in text.split(",")]
    except ValueError:
        raise ValueError(f"malformed list {text!r}") from None
    if any(v < 0 for v in values):
        raise ValueError("list values must be naturals")
    return values


def cmd_lambda_sort(args) -> int:
    try:
        values = _parse_csv(args.list)
        if args.no_memo and any(v > NO_MEMO_VALUE_LIMIT for v in values):
            raise ValueError(
                f"--no-memo restricts values to <= {NO_MEMO_VALUE_LIMIT}"
            )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    mgr = lam.LambdaManager()
    t0 = time.perf_counter()
    try:
        def run():
            term = mgr.mk_app(lam.quicksort_term(mgr),
                              lam.church_list(mgr, values))
            if args.no_memo:
                # unshared, unmemoized baseline; re-encode the result
                # into the pool so the output is comparable
                ref = lam.PlainNormalizer()
                out = lam.from_plain(mgr, ref.nf(lam.to_plain(mgr, term)))
                extra = {"reduction_steps": ref.reduction_steps,
                         "allocations": ref.allocations}
            else:
                out = mgr.nf(term)
                extra = {"reduction_steps": mgr.reduction_steps,
                         "allocations": mgr.pool.stats().intern_misses}
            return lam.decode_list(mgr, out), extra
        sorted_values, extra = lam.run_deep(run)
    except (lam.ShapeError, DepthExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    ms = (time.perf_counter() - t0) * 1000.0
    print(",".join(str(v) for v in sorted_values))
    report = RunReport(
        command=f"lambda-sort --list {args.list}"
                + (" --no-memo" if args.no_memo else ""),
        result=sorted_values,
        node_count=len(mgr.pool),
        pool_stats=_pool_stats_dict(mgr),
        memo_stats=_lambda_memo_stats(mgr),
        wall_time_ms=ms,
        extra=extra,
    )
    print(report.to_json())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxshare",
        description="Hash-consed BDD tautology checking and "
                    "lambda-calculus benchmarks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    taut = sub.add_parser("taut", help="check a formula for tautology")
    src = taut.add_mutually_exclusive_group(required=True)
    src.add_argument("--urquhart", type=int, metavar="N")
    src.add_argument("--pigeonhole", type=int, metavar="N")
    src.add_argument("--file", metavar="PATH")
    taut.set_defaults(func=cmd_taut)

    bench = sub.add_parser("bench", help="run a benchmark suite")
    bench.add_argument("suite", choices=["urquhart", "pigeonhole"])
    bench.add_argument("--max", type=int, required=True, metavar="N")
    bench.add_argument("--json", action="store_true")
    bench.set_defaults(func=cmd_bench)

    lsort = sub.add_parser("lambda-sort",
                           help="sort naturals via lambda-term quicksort")
    lsort.add_argument("--list", required=True, metavar="CSV")
    lsort.add_argument("--no-memo", action="store_true")
    lsort.set_defaults(func=cmd_lambda_sort)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "bench" and args.max < 1:
        print("error: --max must be >= 1", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
