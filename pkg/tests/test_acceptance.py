"""Exit criteria for the package, one test per criterion.

Run ``pytest tests/test_acceptance.py`` to see the PASS/FAIL table in the
terminal summary.
"""

import math
import time

import numpy as np

from betlab import (
    AlphaSpec,
    BetProblem,
    Exponential,
    Linear,
    LogShifted,
    Monotonicity,
    NormalizedLog,
    Power,
    SimultaneousProblem,
    additive_allocation_value,
    allocation_report,
    alpha,
    alpha_monotonicity_report,
    approx_allocation_utility,
    best_policy_by_enumeration,
    binomial_total,
    build_policy_tree,
    conditional_utility,
    evaluate_policy,
    exact_allocation_utility,
    make_lottery,
    mean_and_sd,
    solve,
    tail_prob,
)
from betlab.sequential import history_independent

from instances import FAMILIES, instance_sweep

A = make_lottery([(400, 1.0)])
B = make_lottery([(0, 0.5), (1000, 0.5)])


def example3_family(n, u=None):
    return BetProblem(n, [("A", A), ("B", B)], u or LogShifted())


def test_c01_example3(record_criterion):
    start = time.perf_counter()
    u = LogShifted()
    checks = {
        "u(400)": (u(400), 5.994), "u(1000)": (u(1000), 6.909), "u(800)": (u(800), 6.686),
        "u(1400)": (u(1400), 7.245), "u(2000)": (u(2000), 7.601),
        "U(400|400)": (conditional_utility(u, 400, 400), 0.692),
        "U(1000|400)": (conditional_utility(u, 1000, 400), 1.251),
        "U(400|1000)": (conditional_utility(u, 400, 1000), 0.336),
        "U(1000|1000)": (conditional_utility(u, 1000, 1000), 0.693),
    }
    p = example3_family(2)
    b_first = build_policy_tree(p, lambda k, r: 1 if k == 1 else (0 if r == 0 else 1))
    checks["B-first value"] = (evaluate_policy(p, b_first)[0], 6.624)
    sol = solve(p)
    checks["DP root"] = (sol.root_value, 6.686)
    elapsed = time.perf_counter() - start
    bad = [k for k, (got, want) in checks.items() if abs(got - want) > 1e-3]
    ok = not bad and sol.tree.summary() == "A;A" and elapsed < 1.0
    record_criterion(1, "Example 3 reproduction", ok,
                     f"root={sol.root_value:.4f} policy={sol.tree.summary()} off={bad} t={elapsed:.3f}s")


def test_c02_additive_values(record_criterion):
    ok = True
    for a in (0.3, 0.7, math.log(401) / math.log(1001)):
        got = [additive_allocation_value(a, 2, k) for k in (2, 1, 0)]
        ok &= got == [2 * a, a + 0.5, 1.0]
    record_criterion(2, "additive valuation (2a, a+1/2, 1)", ok, "alpha in {0.3, 0.7, ln401/ln1001}")


def test_c03_lln_moments(record_criterion):
    off = []
    for n in (1, 4, 9, 16):
        mean, sd = mean_and_sd(binomial_total(n, 1000, 0.5))
        if abs(mean - 500 * n) > 1e-9 or abs(sd - 250 * math.sqrt(n)) > 1e-9:
            off.append(f"n={n}: mean={mean:g} sd={sd:g} (want {500 * n}, {250 * math.sqrt(n):g})")
    tails = [tail_prob(binomial_total(n, 1000, 0.5), 400 * n) for n in range(1, 61)]
    tail_ok = max(tails) > 0.99
    if not tail_ok:
        off.append(f"max P(B_n > 400n) over n<=60 is {max(tails):.4f}")
    record_criterion(3, "LLN moments and tail", not off, "; ".join(off) or "ok")


def test_c04_alpha_limit(record_criterion):
    spec = AlphaSpec(0, 400, 1000, 0, 1e6)
    u = LogShifted()
    at_limit = alpha(u, spec, 1e6)
    cls = alpha_monotonicity_report(u, spec, 1001)
    ok = abs(at_limit - 0.4) < 0.005 and cls == Monotonicity.DECREASING
    record_criterion(4, "alpha limit for log utility", ok, f"alpha(1e6)={at_limit:.5f} class={cls}")


def test_c05_proposition_suite(record_criterion):
    start = time.perf_counter()
    spec = AlphaSpec(0, 400, 1000, 0, 5000)
    expected = {
        "log_shifted": (LogShifted(), Monotonicity.DECREASING),
        "exponential(0.001)": (Exponential(0.001), Monotonicity.DECREASING),
        "power(2)": (Power(2.0), Monotonicity.INCREASING),
        "linear": (Linear(1.0), Monotonicity.CONSTANT),
    }
    got = {name: alpha_monotonicity_report(u, spec, 1000) for name, (u, _) in expected.items()}
    linear_dev = float(np.max(np.abs(alpha(Linear(1.0), spec, spec.grid(1000)) - spec.ratio)))
    elapsed = time.perf_counter() - start
    wrong = [f"{name}: got {got[name]}, want {want}" for name, (_, want) in expected.items() if got[name] != want]
    ok = not wrong and linear_dev < 1e-12 and elapsed < 1.0
    record_criterion(5, "monotonicity of alpha by curvature", ok,
                     f"{'; '.join(wrong) or 'all classes match'}; linear dev={linear_dev:.1e} t={elapsed:.3f}s")


def test_c06_oracle_equivalence(record_criterion):
    start = time.perf_counter()
    problems = instance_sweep(200)
    worst = 0.0
    for p in problems:
        dp = solve(p, build_tree=False).root_value
        brute, _ = best_policy_by_enumeration(p)
        worst = max(worst, abs(dp - brute))
    elapsed = time.perf_counter() - start
    families = {p.u.family + (f"({p.u.gamma})" if isinstance(p.u, Power) else "") for p in problems}
    horizons = sorted({p.n for p in problems})
    ok = len(problems) >= 200 and worst < 1e-9 and elapsed < 60 and len(families) == len(FAMILIES)
    record_criterion(6, "DP equals brute-force enumeration", ok,
                     f"{len(problems)} instances, n in {horizons}, {len(families)} families, "
                     f"max gap={worst:.1e}, t={elapsed:.1f}s")


def test_c07_adaptivity_dominance(record_criterion):
    margins = {}
    for n in (2, 3, 4):
        root = solve(example3_family(n), build_tree=False).root_value
        sp = SimultaneousProblem(n, LogShifted())
        margins[n] = root - max(exact_allocation_utility(sp, k) for k in range(n + 1))
    ok = all(m >= -1e-12 for m in margins.values()) and any(m > 1e-9 for m in margins.values())
    record_criterion(7, "sequential dominates simultaneous", ok,
                     ", ".join(f"n={n}: {m:+.4f}" for n, m in margins.items()))


def test_c08_plug_the_mean(record_criterion):
    gaps = {}
    for n in (10, 50):
        p = SimultaneousProblem(n, NormalizedLog(n))
        gaps[n] = abs(approx_allocation_utility(p, 0) - exact_allocation_utility(p, 0))
    ok = gaps[50] < 0.01 and gaps[50] < gaps[10]
    record_criterion(8, "plug-the-mean approximation", ok, f"gap n=10: {gaps[10]:.5f}, n=50: {gaps[50]:.5f}")


def test_c09_large_n_optimum(record_criterion):
    report = allocation_report(SimultaneousProblem(50, NormalizedLog(50)), 0.7)
    record_criterion(9, "best allocation at n=50 is all lotteries", report.best_k_exact == 0,
                     f"best_k_exact={report.best_k_exact}")


def test_c10_linear_history_independence(record_criterion):
    p = example3_family(4, Linear(1.0))
    sol = solve(p, build_tree=False)
    per_stage = [sorted({sol.table.decisions[(k, r)] for r in sol.states[k - 1]}) for k in range(1, 5)]
    record_criterion(10, "linear utility ignores history", history_independent(p, sol),
                     f"decision indices per stage: {per_stage}")
