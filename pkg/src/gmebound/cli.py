"""Command-line front end.

Loads states and pair selections, runs each analysis, and emits JSON (CSV for
parameter sweeps).  Exit codes: 0 success, 1 analysis error (degenerate
selection, witness that cannot detect the target), 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Sequence

from .dicke_witness import (
    DickeWitnessSpec,
    dimensionality_certificate,
    em_bound_from_q,
    noise_threshold_q,
    q_witness,
)
from .entropy import gme_measure_pure
from .errors import AnalysisError, InvalidInputError
from .indices import Bipartition, IndexPair, MultiIndex
from .observables import plan_settings
from .ppt import compare_with_witness_bracket
from .reproduce import SEED, run_all
from .states import (
    DensityMatrix,
    PureState,
    embed_pure,
    load_state_json,
    make_dicke_state,
    make_ghz_state,
    make_singlet4,
    make_w_state,
    white_noise_mix,
)
from .witness import (
    NRVariant,
    auto_select_R,
    compile_witness,
    evaluate,
    load_pairset_json,
    noise_threshold,
)

PRESETS = ("w", "ghz", "dicke", "singlet4", "isotropic")


def _thread_count() -> int:
    env = os.environ.get("GMEBOUND_THREADS", "").strip()
    if env:
        try:
            count = int(env)
        except ValueError:
            raise InvalidInputError(f"GMEBOUND_THREADS must be an integer, got {env!r}")
        if count < 1:
            raise InvalidInputError(f"GMEBOUND_THREADS must be positive, got {env!r}")
        return count
    return min(8, os.cpu_count() or 1)


def _round12(obj: Any) -> Any:
    """12 significant digits on every float, recursively (stable JSON output)."""
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    return obj


def _emit_json(payload: dict[str, Any], output: str | None) -> None:
    text = json.dumps(_round12(payload), indent=2)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _emit_csv(header: Sequence[str], rows: list[list[float]], output: str | None) -> None:
    def write(fh: Any) -> None:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([f"{v:.12g}" for v in row])

    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            write(fh)
    else:
        write(sys.stdout)


def _bip_label(g: Bipartition) -> str:
    left = "".join(str(p) for p in g.sorted_parties())
    right = "".join(str(p) for p in g.complement().sorted_parties())
    return f"{left}|{right}"


def _build_preset(args: argparse.Namespace) -> PureState:
    name = args.preset
    if name == "w":
        return make_w_state(args.n or 3)
    if name == "ghz":
        return make_ghz_state(args.n or 3, args.d or 2)
    if name == "dicke":
        if args.n is None or args.d is None or args.m is None:
            raise InvalidInputError("--preset dicke needs --n, --d and --m")
        return make_dicke_state(args.n, args.d, args.m)
    if name == "singlet4":
        return make_singlet4()
    if name == "isotropic":
        d = args.d or 3
        amp = 1.0 / math.sqrt(d)
        return PureState(2, d, {MultiIndex((j, j), d): amp for j in range(d)})
    raise InvalidInputError(f"unknown preset {name!r}")


def _load_target(args: argparse.Namespace) -> tuple[PureState | None, DensityMatrix]:
    """Resolve --state/--preset (+ --p white-noise mixing) to a target.

    Returns the pure state when one is available (file of kind "pure" or a
    preset) alongside the density matrix actually analyzed.
    """
    if args.state and args.preset:
        raise InvalidInputError("give either --state or --preset, not both")
    if args.state:
        loaded = load_state_json(args.state)
        pure = loaded if isinstance(loaded, PureState) else None
        rho = loaded.density() if isinstance(loaded, PureState) else loaded
    elif args.preset:
        pure = _build_preset(args)
        rho = pure.density()
    else:
        raise InvalidInputError("no input state: give --state FILE or --preset NAME")

    p = getattr(args, "p", 1.0)
    if p != 1.0:
        if pure is None:
            raise InvalidInputError("--p mixes white noise into a pure state; input is mixed")
        if not 0.0 <= p <= 1.0:
            raise InvalidInputError(f"--p must lie in [0, 1], got {p}")
        rho = white_noise_mix(pure, p)
    return pure, rho


def _resolve_pairset(args: argparse.Namespace, pure: PureState | None, n: int, d: int):
    if args.r_set:
        return load_pairset_json(args.r_set, n, d)
    if pure is None:
        raise InvalidInputError("no --r-set given and the input is mixed; cannot auto-select")
    return auto_select_R(pure, tau=args.tau)


def _variant(args: argparse.Namespace) -> NRVariant:
    return NRVariant.MINIMAL if args.nr == "min" else NRVariant.MAXIMAL


def _parse_grid(text: str) -> list[float]:
    """Either comma-separated values or start:stop:count."""
    if ":" in text:
        fields = text.split(":")
        if len(fields) != 3:
            raise InvalidInputError(f"grid {text!r} is not start:stop:count")
        start, stop = float(fields[0]), float(fields[1])
        count = int(fields[2])
        if count < 2:
            raise InvalidInputError("grid needs at least 2 points")
        step = (stop - start) / (count - 1)
        return [start + i * step for i in range(count)]
    return [float(v) for v in text.split(",")]


# ---------------------------------------------------------------------------
# subcommands


def cmd_entropy(args: argparse.Namespace) -> int:
    if getattr(args, "p", 1.0) != 1.0:
        raise InvalidInputError("entropy profile is defined for pure states; drop --p")
    pure, _ = _load_target(args)
    if pure is None:
        raise InvalidInputError("entropy profile needs a pure state (kind == 'pure')")
    report = gme_measure_pure(pure, method=args.method)
    payload = {
        "n": pure.n,
        "d": pure.d,
        "method": args.method,
        "entropies": {_bip_label(g): v for g, v in report.entropies.items()},
        "minimizer": _bip_label(report.minimizer),
        "e_m": report.e_m,
    }
    _emit_json(payload, args.output)
    return 0


def cmd_bound(args: argparse.Namespace) -> int:
    pure, rho = _load_target(args)
    r = _resolve_pairset(args, pure, rho.n, rho.d)
    w = compile_witness(r, _variant(args))
    value = evaluate(w, rho)
    payload = {
        "n": rho.n,
        "d": rho.d,
        "variant": args.nr,
        "pairs": r.as_strings(),
        "n_r": w.n_r,
        "prefactor": w.prefactor,
        "n_eta": {str(eta): k for eta, k in w.n_eta.items()},
        "noise_images": {
            f"{pair.first}~{pair.second}": [[str(img.first), str(img.second)] for img in imgs]
            for pair, imgs in w.noise_images.items()
        },
        "uncounted_profile": {_bip_label(g): k for g, k in w.uncounted_profile.items()},
        "value": value,
        "detects_gme": bool(value > args.tol),
    }
    _emit_json(payload, args.output)
    return 0


def cmd_threshold(args: argparse.Namespace) -> int:
    pure, _ = _load_target(args)
    if pure is None:
        raise InvalidInputError("threshold sweeps mix white noise into a pure target")
    r = _resolve_pairset(args, pure, pure.n, pure.d)
    w = compile_witness(r, _variant(args))

    spec = None
    if args.compare_dicke:
        if args.m is None:
            raise InvalidInputError("--compare-dicke needs --m (excitation number)")
        spec = DickeWitnessSpec(pure.n, pure.d, args.m, delta_subsets=args.delta)

    if args.p_grid:
        grid = _parse_grid(args.p_grid)

        def point(p: float) -> list[float]:
            rho = white_noise_mix(pure, p)
            row = [p, evaluate(w, rho)]
            if spec is not None:
                row.append(q_witness(spec, rho))
            return row

        with ThreadPoolExecutor(max_workers=_thread_count()) as pool:
            rows = list(pool.map(point, grid))
        header = ["p", "witness"] + (["q"] if spec is not None else [])
        _emit_csv(header, rows, args.output)
        return 0

    payload: dict[str, Any] = {
        "n": pure.n,
        "d": pure.d,
        "variant": args.nr,
        "pairs": r.as_strings(),
        "threshold": noise_threshold(w, pure, xtol=args.xtol),
    }
    if spec is not None:
        payload["dicke_m"] = args.m
        payload["dicke_threshold"] = noise_threshold_q(spec, pure, xtol=args.xtol)
    _emit_json(payload, args.output)
    return 0


def cmd_dicke(args: argparse.Namespace) -> int:
    if args.n is None or args.d is None or args.m is None:
        raise InvalidInputError("dicke needs --n, --d and --m")
    spec = DickeWitnessSpec(args.n, args.d, args.m, delta_subsets=args.delta)
    if args.state or args.preset:
        _, rho = _load_target(args)
        if rho.n != args.n or rho.d != args.d:
            raise InvalidInputError(
                f"state is (n={rho.n}, d={rho.d}), witness wants (n={args.n}, d={args.d})"
            )
    else:
        target = make_dicke_state(args.n, args.d, args.m)
        p = getattr(args, "p", 1.0)
        rho = white_noise_mix(target, p) if p != 1.0 else target.density()
    q = q_witness(spec, rho)
    bound = em_bound_from_q(spec, q, _variant(args))
    payload = {
        "n": args.n,
        "d": args.d,
        "m": args.m,
        "delta_subsets": args.delta,
        "q": q,
        "certificate": dimensionality_certificate(q, tol=args.tol),
        "noise_weight": spec.noise_weight,
        "em_bound": {
            "weak": bound.weak,
            "strong": bound.strong,
            "r_size": bound.r_size,
            "n_r": bound.n_r,
        },
    }
    _emit_json(payload, args.output)
    return 0


def cmd_ppt_compare(args: argparse.Namespace) -> int:
    _, rho = _load_target(args)
    first, second = (s.strip() for s in args.pair.split(","))
    pair = IndexPair.of(
        MultiIndex.from_string(first, rho.d, rho.n),
        MultiIndex.from_string(second, rho.d, rho.n),
    )
    parties = frozenset(int(tok) for tok in args.gamma.split(","))
    gamma = Bipartition.of(parties, rho.n)
    cmp = compare_with_witness_bracket(pair, gamma, rho)
    payload = {
        "pair": [str(pair.first), str(pair.second)],
        "gamma": sorted(parties),
        "omega": cmp.omega,
        "minus_w": cmp.minus_w,
        "dominance": cmp.dominance,
    }
    _emit_json(payload, args.output)
    return 0


def cmd_measure_plan(args: argparse.Namespace) -> int:
    if args.state or args.preset:
        pure, rho = _load_target(args)
        n, d = rho.n, rho.d
    else:
        pure, n, d = None, args.n, args.d
        if n is None or d is None:
            raise InvalidInputError("measure-plan needs --state/--preset or --r-set with --n --d")
    r = _resolve_pairset(args, pure, n, d)
    w = compile_witness(r, _variant(args))
    plan = plan_settings(w, include_imag=args.include_imag)
    payload = {
        "n": plan.n,
        "d": plan.d,
        "element_count": plan.element_count,
        "setting_count": plan.setting_count,
        "settings": plan.settings_as_strings(),
        "elements": [
            {
                "kind": el.kind,
                "indices": list(el.indices),
                "terms": [
                    {"coeff": c, "labels": [lab if lab is not None else "id" for lab in labs]}
                    for c, labs in el.terms
                ],
            }
            for el in plan.elements
        ],
    }
    _emit_json(payload, args.output)
    return 0


def cmd_dimensionality(args: argparse.Namespace) -> int:
    if args.n is None or args.d is None or args.m is None:
        raise InvalidInputError("dimensionality needs --n, --d and --m")
    spec = DickeWitnessSpec(args.n, args.d, args.m, delta_subsets=args.delta)
    rows = []
    for f in range(1, args.d + 1):
        if f == 1:
            state = PureState(args.n, args.d, {MultiIndex((0,) * args.n, args.d): 1.0})
        else:
            state = embed_pure(make_dicke_state(args.n, f, args.m), args.d)
        q = q_witness(spec, state.density())
        rows.append({"f": f, "q": q, "certificate": dimensionality_certificate(q, tol=args.tol)})
    payload = {"n": args.n, "d": args.d, "m": args.m, "rows": rows}
    _emit_json(payload, args.output)
    return 0


def cmd_reproduce_paper(args: argparse.Namespace) -> int:
    results = run_all(seed=args.seed)
    lines = []
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        lines.append(f"[{status}] #{res.number} {res.name}  ({res.elapsed:.2f}s)")
        if not res.passed:
            lines.append(f"        {res.details}")
    passed = sum(res.passed for res in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    text = "\n".join(lines)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if passed == len(results) else 1


# ---------------------------------------------------------------------------
# parser


def _add_state_flags(sub: argparse.ArgumentParser, with_mix: bool = True) -> None:
    sub.add_argument("--state", help="JSON state file")
    sub.add_argument("--preset", choices=PRESETS, help="named state instead of a file")
    sub.add_argument("--n", type=int, help="party count (presets)")
    sub.add_argument("--d", type=int, help="local dimension (presets)")
    sub.add_argument("--m", type=int, help="excitation number (dicke preset / witnesses)")
    if with_mix:
        sub.add_argument(
            "--p", type=float, default=1.0, help="white-noise mixing: p*rho + (1-p)*I/dim"
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gmebound",
        description="Certified lower bounds on genuine multipartite entanglement "
        "for n-qudit states.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("entropy", help="per-bipartition linear entropies of a pure state")
    _add_state_flags(sp, with_mix=False)
    sp.add_argument("--method", choices=("coeff", "trace"), default="coeff")
    sp.add_argument("--output", help="write JSON here instead of stdout")
    sp.set_defaults(func=cmd_entropy, p=1.0)

    sp = subs.add_parser("bound", help="compile a witness and evaluate the GME bound")
    _add_state_flags(sp)
    sp.add_argument("--r-set", help="JSON pair-selection file (default: auto-select)")
    sp.add_argument("--nr", choices=("min", "max"), default="min")
    sp.add_argument("--tau", type=float, default=1e-6, help="auto-select amplitude cutoff")
    sp.add_argument("--tol", type=float, default=1e-9, help="detection threshold on the value")
    sp.add_argument("--output", help="write JSON here instead of stdout")
    sp.set_defaults(func=cmd_bound)

    sp = subs.add_parser("threshold", help="white-noise robustness of the witness")
    _add_state_flags(sp, with_mix=False)
    sp.add_argument("--r-set", help="JSON pair-selection file (default: auto-select)")
    sp.add_argument("--nr", choices=("min", "max"), default="min")
    sp.add_argument("--tau", type=float, default=1e-6)
    sp.add_argument("--xtol", type=float, default=1e-12, help="root-finder tolerance")
    sp.add_argument("--compare-dicke", action="store_true", help="also cross the Q witness")
    sp.add_argument("--delta", choices=("all", "singles"), default="all")
    sp.add_argument("--p-grid", help="sweep: comma values or start:stop:count (CSV output)")
    sp.add_argument("--output", help="write JSON/CSV here instead of stdout")
    sp.set_defaults(func=cmd_threshold, p=1.0)

    sp = subs.add_parser("dicke", help="dimensionality witness Q and E_m bounds")
    _add_state_flags(sp)
    sp.add_argument("--delta", choices=("all", "singles"), default="all")
    sp.add_argument("--nr", choices=("min", "max"), default="min")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--output", help="write JSON here instead of stdout")
    sp.set_defaults(func=cmd_dicke)

    sp = subs.add_parser("ppt-compare", help="PPT operator vs witness bracket on one pair")
    _add_state_flags(sp)
    sp.add_argument("--pair", required=True, help='antipodal pair, e.g. "001,110"')
    sp.add_argument("--gamma", required=True, help='transposed parties, e.g. "1" or "1,2"')
    sp.add_argument("--output", help="write JSON here instead of stdout")
    sp.set_defaults(func=cmd_ppt_compare)

    sp = subs.add_parser("measure-plan", help="local-observable plan for a compiled witness")
    _add_state_flags(sp, with_mix=False)
    sp.add_argument("--r-set", help="JSON pair-selection file (default: auto-select)")
    sp.add_argument("--nr", choices=("min", "max"), default="min")
    sp.add_argument("--tau", type=float, default=1e-6)
    sp.add_argument("--include-imag", action="store_true")
    sp.add_argument("--output", help="write JSON here instead of stdout")
    sp.set_defaults(func=cmd_measure_plan, p=1.0)

    sp = subs.add_parser("dimensionality", help="q and certificate for embedded Dicke states")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--delta", choices=("all", "singles"), default="all")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--output", help="write JSON here instead of stdout")
    sp.set_defaults(func=cmd_dimensionality)

    sp = subs.add_parser("reproduce-paper", help="run the acceptance battery")
    sp.add_argument("--seed", type=int, default=SEED, help="re-seed the randomized checks")
    sp.add_argument("--output", help="write the table here instead of stdout")
    sp.set_defaults(func=cmd_reproduce_paper)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AnalysisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
