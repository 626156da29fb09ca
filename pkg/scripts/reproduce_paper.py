#!/usr/bin/env python3
"""Run the full acceptance battery and print the pass/fail table.

Equivalent to `gmebound reproduce-paper`; exits 1 when any criterion fails.
"""

import argparse
import sys

from gmebound.reproduce import SEED, run_all


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=SEED)
    args = ap.parse_args()

    results = run_all(seed=args.seed)
    for res in results:
        mark = "PASS" if res.passed else "FAIL"
        print(f"[{mark}] #{res.number} {res.name}  ({res.elapsed:.2f}s)")
        if not res.passed:
            print(f"        {res.details}")
    passed = sum(res.passed for res in results)
    print(f"{passed}/{len(results)} criteria passed")
    return 0 if passed == len(results) else 1


if __name__ == "__main__":
    sys.exit(main())
