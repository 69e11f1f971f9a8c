"""``betlab`` command-line front end.

Exit codes: 0 success, 1 unreadable or invalid problem spec, 2 domain
error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import DomainError, SpecError
from .oracle import best_policy_by_enumeration
from .sequential import evaluate_policy, history_independent, solve
from .simultaneous import allocation_report, find_preference_flip, preference_gaps
from .spec import load_spec
from .utility import AlphaSpec, alpha, classify_steps, make_utility

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3
VERIFY_TOLERANCE = 1e-9


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_solve_sequential(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec)
    p = spec.bet_problem()
    sol = solve(p)
    value, wealth = evaluate_policy(p, sol.tree)
    lines = [
        f"root_value={sol.root_value:.6f}",
        f"policy={sol.tree.summary()}",
        f"expected_utility_of_final_wealth={value:.6f}",
    ]
    if history_independent(p, sol):
        lines.append("history_independent=yes (same decision in every state of each stage)")
    else:
        lines.append("history_independent=no")
    lines += ["", "[dp_table]", "stage,state,decision,value"]
    for k, r, d, v in sol.table.rows():
        lines.append(f"{k},{r},{p.names[d]},{v:.6g}")
    lines += ["", "[policy_tree]"]
    _emit("\n".join(lines) + "\n" + sol.tree.to_text(), args.out)
    if args.json:
        doc = {
            "root_value": sol.root_value,
            "policy": sol.tree.summary(),
            "dp_table": [
                {"stage": k, "state": r, "decision": p.names[d], "value": v}
                for k, r, d, v in sol.table.rows()
            ],
            "final_wealth": [{"reward": m, "prob": q} for m, q in wealth],
            "tree": sol.tree.to_dict(),
        }
        Path(args.json).write_text(json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def cmd_analyze_simultaneous(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec)
    p = spec.simultaneous_problem()
    if args.alpha is not None:
        alpha_cal, source = args.alpha, "flag"
    elif spec.calibration_alpha is not None:
        alpha_cal, source = spec.calibration_alpha, "spec"
    else:
        alpha_cal = alpha(p.u, AlphaSpec(0, p.sure_amount, p.prize), 0.0)
        source = "utility"
    report = allocation_report(p, alpha_cal, with_approx=args.with_approx)
    summary = (
        f"# alpha_cal={alpha_cal:.6g} ({source})\n"
        f"# best_k_exact={report.best_k_exact}\n"
        f"# best_k_additive={report.best_k_additive}\n"
        f"# agreement={'yes' if report.best_k_exact == report.best_k_additive else 'no'}\n"
    )
    if args.out:
        Path(args.out).write_text(report.to_csv())
        sys.stdout.write(summary)
    else:
        sys.stdout.write(report.to_csv() + summary)
    return EXIT_OK


def _parse_params(items: list[str]) -> dict:
    params = {}
    for item in items or []:
        key, sep, val = item.partition("=")
        if not sep:
            raise SpecError(f"--param expects KEY=VALUE, got {item!r}")
        try:
            params[key] = int(val)
        except ValueError:
            try:
                params[key] = float(val)
            except ValueError:
                params[key] = val
    return params


def cmd_alpha_curve(args: argparse.Namespace) -> int:
    try:
        u = make_utility(args.utility, _parse_params(args.param), args.domain_max)
    except (TypeError, ValueError) as exc:
        raise SpecError(f"--utility: {exc}") from None
    aspec = AlphaSpec(args.a, args.c, args.b, args.x_min, args.x_max)
    if args.points < 3:
        raise SpecError("--points must be >= 3")
    xs = aspec.grid(args.points)
    values = alpha(u, aspec, xs)
    rows = ["x,alpha"] + [f"{x:.6g},{v:.6g}" for x, v in zip(xs, values)]
    rows.append(f"# classification={classify_steps(values)}")
    _emit("\n".join(rows) + "\n", args.out)
    return EXIT_OK


def cmd_find_threshold(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec)
    n_max = args.n_max or spec.n_max
    if n_max is None:
        raise SpecError("sweep.n_max: missing (give --n-max or a sweep section)")
    template = spec.simultaneous_problem()
    lines = ["n,all_B,all_A,gap"]
    for n, all_b, all_a in preference_gaps(template, n_max):
        lines.append(f"{n},{all_b:.6g},{all_a:.6g},{all_b - all_a:.6g}")
    flip = find_preference_flip(template, n_max)
    lines.append(f"# N={flip}" if flip is not None else "# N=NotFound")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_oracle_check(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec)
    p = spec.bet_problem()
    dp_value = solve(p, build_tree=False).root_value
    oracle_value, _ = best_policy_by_enumeration(p)
    gap = abs(dp_value - oracle_value)
    ok = gap < VERIFY_TOLERANCE
    _emit(
        f"dp_value={dp_value!r}\noracle_value={oracle_value!r}\ngap={gap:.3e}\n"
        f"{'PASS' if ok else 'FAIL'}\n",
        args.out,
    )
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="betlab", description="Repeated-bet utility analysis.")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve-sequential", help="backward induction on a sequential problem")
    s.add_argument("spec")
    s.add_argument("--out", help="text report path (default stdout)")
    s.add_argument("--json", help="also write the structured report here")
    s.set_defaults(func=cmd_solve_sequential)

    s = sub.add_parser("analyze-simultaneous", help="exact vs additive utility of each allocation")
    s.add_argument("spec")
    s.add_argument("--with-approx", action="store_true")
    s.add_argument("--alpha", type=float, help="calibration alpha for the additive column")
    s.add_argument("--out", help="CSV path (default stdout)")
    s.set_defaults(func=cmd_analyze_simultaneous)

    s = sub.add_parser("alpha-curve", help="tabulate alpha(x) and classify its monotonicity")
    s.add_argument("--utility", required=True)
    s.add_argument("--param", action="append", metavar="KEY=VALUE")
    s.add_argument("--domain-max", type=float)
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--c", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--x-min", type=float, default=0.0)
    s.add_argument("--x-max", type=float, required=True)
    s.add_argument("--points", type=int, default=1001)
    s.add_argument("--out")
    s.set_defaults(func=cmd_alpha_curve)

    s = sub.add_parser("find-threshold", help="smallest n from which all-B beats all-A")
    s.add_argument("spec")
    s.add_argument("--n-max", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_find_threshold)

    s = sub.add_parser("oracle-check", help="compare the DP optimum with brute-force enumeration")
    s.add_argument("spec")
    s.add_argument("--out")
    s.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
