#!/usr/bin/env python3
"""Sweep witness value and Q against white-noise fraction p.

Writes CSV (stdout by default) with one row per grid point; the zero
crossings printed to stderr are the certified noise thresholds.

    python3 scripts/threshold_sweep.py --points 101
    python3 scripts/threshold_sweep.py --preset w --points 51 --out sweep.csv
"""

import argparse
import csv
import sys

from gmebound.dicke_witness import DickeWitnessSpec, noise_threshold_q, q_witness
from gmebound.reproduce import singlet_pairset
from gmebound.states import make_singlet4, make_w_state, white_noise_mix
from gmebound.witness import (
    NRVariant,
    auto_select_R,
    compile_witness,
    evaluate,
    noise_threshold,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--preset", choices=("singlet4", "w"), default="singlet4")
    ap.add_argument("--points", type=int, default=101)
    ap.add_argument("--nr", choices=("min", "max"), default="min")
    ap.add_argument("--out", help="CSV path (default stdout)")
    args = ap.parse_args()

    variant = NRVariant.MINIMAL if args.nr == "min" else NRVariant.MAXIMAL
    if args.preset == "singlet4":
        # the reference selection (four coherences off |0011>), not auto-R:
        # it tolerates more noise than the wide pairs the greedy pass favors
        target = make_singlet4()
        w = compile_witness(singlet_pairset(), variant)
        spec = DickeWitnessSpec(4, 2, 2)
    else:
        target = make_w_state(3)
        w = compile_witness(auto_select_R(target), variant)
        spec = None

    grid = [i / (args.points - 1) for i in range(args.points)]
    rows = []
    for p in grid:
        rho = white_noise_mix(target, p)
        row = [p, evaluate(w, rho)]
        if spec is not None:
            row.append(q_witness(spec, rho))
        rows.append(row)

    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["p", "witness"] + (["q"] if spec is not None else []))
        for row in rows:
            writer.writerow([f"{v:.12g}" for v in row])
    finally:
        if args.out:
            fh.close()

    print(f"witness threshold: {noise_threshold(w, target):.12g}", file=sys.stderr)
    if spec is not None:
        print(f"Q threshold:       {noise_threshold_q(spec, target):.12g}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
