#!/usr/bin/env python3
"""Q and the dimension certificate for embedded Dicke states.

For each f = 1..d the table evaluates Q on |D_m^f> embedded in local
dimension d.  Above f = 1 the value follows (f-1)(n-m) - (d-1)(n-m-1); the
certificate is the smallest entanglement dimension consistent with it.

    python3 scripts/dimensionality_table.py --n 3 --d 3 --m 1
    python3 scripts/dimensionality_table.py --n 4 --d 3 --m 2
"""

import argparse
import sys

from gmebound.dicke_witness import (
    DickeWitnessSpec,
    dimensionality_certificate,
    q_witness,
)
from gmebound.indices import MultiIndex
from gmebound.states import PureState, embed_pure, make_dicke_state


def table(n: int, d: int, m: int) -> list[tuple[int, float, int]]:
    spec = DickeWitnessSpec(n, d, m)
    rows = []
    for f in range(1, d + 1):
        if f == 1:
            state = PureState(n, d, {MultiIndex((0,) * n, d): 1.0})
        else:
            state = embed_pure(make_dicke_state(n, f, m), d)
        q = q_witness(spec, state.density())
        rows.append((f, q, dimensionality_certificate(q)))
    return rows


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--d", type=int, default=3)
    ap.add_argument("--m", type=int, default=1)
    args = ap.parse_args()

    print(f"n={args.n} d={args.d} m={args.m}")
    print(f"{'f':>3} {'Q':>14} {'certificate':>12} {'(f-1)(n-m)-(d-1)(n-m-1)':>24}")
    for f, q, cert in table(args.n, args.d, args.m):
        literal = (f - 1) * (args.n - args.m) - (args.d - 1) * (args.n - args.m - 1)
        print(f"{f:>3} {q:>14.9f} {cert:>12} {literal if f > 1 else 0:>24}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
