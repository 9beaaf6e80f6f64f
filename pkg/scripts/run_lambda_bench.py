#!/usr/bin/env python3
"""Compare the memoized hash-consed normalizer against the unshared
baseline on the quicksort workload.

Usage: python3 scripts/run_lambda_bench.py [--list CSV]
"""

import argparse
import json
import sys
import time

from maxshare.lam import (
    LambdaManager,
    PlainNormalizer,
    church_list,
    decode_list,
    from_plain,
    quicksort_term,
    run_deep,
    to_plain,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--list", default="0,3,5,2,4,1")
    args = parser.parse_args()
    values = ([int(v) for v in args.list.split(",")]
              if args.list.strip() else [])

    mgr = LambdaManager()
    term = mgr.mk_app(quicksort_term(mgr), church_list(mgr, values))

    t0 = time.perf_counter()
    out = run_deep(mgr.nf, term)
    memo_ms = (time.perf_counter() - t0) * 1000.0

    baseline = PlainNormalizer()
    plain = to_plain(mgr, term)
    t0 = time.perf_counter()
    plain_out = run_deep(baseline.nf, plain)
    plain_ms = (time.perf_counter() - t0) * 1000.0

    print(json.dumps({
        "input": values,
        "sorted": decode_list(mgr, out),
        "outputs_agree": from_plain(mgr, plain_out) == out,
        "memoized": {"wall_time_ms": memo_ms,
                     "intern_misses": mgr.pool.stats().intern_misses,
                     "reduction_steps": mgr.reduction_steps},
        "baseline": {"wall_time_ms": plain_ms,
                     "allocations": baseline.allocations,
                     "reduction_steps": baseline.reduction_steps},
    }, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
