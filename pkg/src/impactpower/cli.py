"""Command-line frontend: single-state reports, family scans, verification.

Exit codes: 0 success, 1 failed verification check, 2 invalid input
(malformed file, violated state invariant, bad parameters).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import correlations, dynamics, states, verify
from .errors import ImpactPowerError

CSV_HEADER = "family_param_or_seed,purity,p_min,p_max,discord,bound_rhs,gap_to_bound"


def _default_seed() -> int:
    raw = os.environ.get("IMPACTPOWER_SEED", "")
    try:
        return int(raw)
    except ValueError:
        return 0


def _default_threads() -> int:
    return os.cpu_count() or 1


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _print_json(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _fail(message: str) -> int:
    sys.stderr.write(f"error: {message}\n")
    return 2


# --- compute ----------------------------------------------------------------


def cmd_compute(args: argparse.Namespace) -> int:
    try:
        rho = states.load_state(args.state_file)
    except ImpactPowerError as exc:
        return _fail(f"invalid state file {args.state_file!r}: {exc}")
    except (OSError, json.JSONDecodeError) as exc:
        return _fail(f"cannot parse state file {args.state_file!r}: {exc}")

    rep = correlations.report(rho, seed=args.seed)
    out = {
        "state": {"dims": list(rho.dims), "purity": rho.purity},
        "report": rep.to_dict(),
    }

    if args.hamiltonian is not None:
        try:
            ham = dynamics.load_hamiltonian(args.hamiltonian)
            res = dynamics.impact_power_result(rho, ham)
        except ImpactPowerError as exc:
            return _fail(f"invalid hamiltonian file {args.hamiltonian!r}: {exc}")
        except (OSError, json.JSONDecodeError) as exc:
            return _fail(f"cannot parse hamiltonian file {args.hamiltonian!r}: {exc}")
        out["hamiltonian"] = {
            "dA": ham.d_a,
            "energies": [float(e) for e in ham.energies],
            "trivial": ham.trivial,
            "fully_nondegenerate": ham.fully_nondegenerate,
        }
        out["impact_power"] = {
            "value": res.value,
            "t_max": res.t_max,
            "exact": res.exact,
            "upper_bound": res.upper_bound,
        }
        if not ham.trivial and args.time_samples > 0:
            levels, _ = ham.distinct_levels()
            span = 2.0 * math.pi / float(np.min(np.diff(levels)))
            profile = []
            for j in range(args.time_samples + 1):
                t = j * span / args.time_samples
                profile.append(
                    {
                        "t": t,
                        "impact": dynamics.impact(rho, ham, t),
                        "trace_impact": dynamics.trace_impact(rho, ham, t),
                    }
                )
            out["impact_profile"] = profile

    _print_json(out)
    return 0


# --- scan ---------------------------------------------------------------------


def _scan_row(param: str, rho: states.DensityMatrix) -> str:
    p_min, p_max = correlations.p_extrema(rho)
    discord = correlations.geometric_discord(rho)[0]
    if rho.dims == (2, 2):
        check = correlations.purity_bound_check(rho)
        bound_rhs, gap = check.rhs, check.rhs - check.lhs
    else:
        bound_rhs, gap = math.nan, math.nan
    cells = [param] + [_fmt(v) for v in (rho.purity, p_min, p_max, discord, bound_rhs, gap)]
    return ",".join(cells)


def cmd_scan(args: argparse.Namespace) -> int:
    rows: list[str]
    if args.family in ("werner", "isotropic"):
        if args.grid < 2:
            return _fail("--grid must be at least 2")
        lo, hi = (-1.0, 1.0) if args.family == "werner" else (0.0, 1.0)
        params = np.linspace(lo, hi, args.grid)
        make = states.werner if args.family == "werner" else states.isotropic
        rows = [_scan_row(_fmt(float(p)), make(float(p))) for p in params]
    else:  # random
        try:
            d_a, d_b = (int(v) for v in args.dims.lower().split("x"))
        except ValueError:
            return _fail(f"cannot parse --dims {args.dims!r}, expected like 2x2")
        if d_a != 2:
            return _fail("random scans need d_A = 2 (closed forms apply to qubit A)")
        if args.samples < 1:
            return _fail("--samples must be positive")
        rank = args.rank if args.rank else d_a * d_b
        if not 1 <= rank <= d_a * d_b:
            return _fail(f"--rank must lie in [1, {d_a * d_b}]")

        def one(i: int) -> str:
            rho = states.random_state((d_a, d_b), rank=rank, seed=[args.seed, i])
            return _scan_row(str(i), rho)

        if args.threads > 1:
            with ThreadPoolExecutor(max_workers=args.threads) as pool:
                rows = list(pool.map(one, range(args.samples)))
        else:
            rows = [one(i) for i in range(args.samples)]

    text = "\n".join([CSV_HEADER] + rows) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# --- verify -------------------------------------------------------------------


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        summary = verify.run_suite(
            args.suite,
            seed=args.seed,
            budget=args.budget,
            threads=args.threads,
            inject_state=args.inject_state,
        )
    except ImpactPowerError as exc:
        return _fail(str(exc))
    _print_json(summary)
    if summary["all_passed"]:
        return 0
    failed = [c for c in summary["checks"] if not c["passed"]]
    for check in failed:
        where = (
            f" (worst item {check['worst_index']}, replay seed {check['replay_seed']})"
            if "worst_index" in check
            else f": {check.get('detail', '')}"
        )
        sys.stderr.write(f"FAILED {check['name']}{where}\n")
    return 1


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="impactpower",
        description="Impact of local unitary evolutions and the quantum "
        "correlations it reveals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser(
        "compute",
        help="correlation report for one state, optionally with a Hamiltonian",
    )
    compute.add_argument("state_file", help="state JSON file")
    compute.add_argument(
        "--hamiltonian",
        help="Hamiltonian JSON file; adds impact power and a time profile",
    )
    compute.add_argument(
        "--time-samples",
        type=int,
        default=32,
        help="points in the impact-vs-time profile (0 disables; default 32)",
    )
    compute.add_argument("--seed", type=int, default=_default_seed())
    compute.set_defaults(func=cmd_compute)

    scan = sub.add_parser("scan", help="family scan emitted as CSV")
    scan.add_argument("family", choices=["werner", "isotropic", "random"])
    scan.add_argument("--grid", type=int, default=101, help="grid points for werner/isotropic")
    scan.add_argument("--samples", type=int, default=1000, help="sample count for random")
    scan.add_argument("--dims", default="2x2", help="dims for random, like 2x2 or 2x3")
    scan.add_argument("--rank", type=int, default=0, help="rank for random (default full)")
    scan.add_argument("--seed", type=int, default=_default_seed())
    scan.add_argument("--threads", type=int, default=_default_threads())
    scan.add_argument("--out", help="write CSV here instead of stdout")
    scan.set_defaults(func=cmd_scan)

    ver = sub.add_parser("verify", help="run the verification batteries")
    ver.add_argument(
        "--suite",
        default="all",
        choices=["all", *verify.SUITES],
    )
    ver.add_argument("--seed", type=int, default=_default_seed())
    ver.add_argument("--budget", default="quick", choices=["quick", "full"])
    ver.add_argument("--threads", type=int, default=_default_threads())
    ver.add_argument("--inject-state", help=argparse.SUPPRESS)
    ver.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
