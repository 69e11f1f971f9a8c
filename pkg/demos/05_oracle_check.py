"""
Checking the solver against brute force
=======================================

For small problems every deterministic policy can be listed and scored by
pushing the wealth distribution forward.  The best of them must match the
backward-induction value.
"""

import time

import numpy as np

from betlab import BetProblem, Exponential, LogShifted, Power, best_policy_by_enumeration, make_lottery, solve
from betlab.oracle import policy_count

rng = np.random.default_rng(0)
worst, checked, start = 0.0, 0, time.perf_counter()
while checked < 25:
    n = int(rng.integers(1, 4))
    decisions = []
    for i in range(int(rng.integers(2, 4))):
        rewards = rng.choice(5, size=2, replace=False) * 10
        probs = rng.dirichlet([1.0, 1.0])
        decisions.append((f"d{i}", make_lottery(zip(rewards.tolist(), probs.tolist()))))
    u = [LogShifted(), Power(0.5), Exponential(0.02)][checked % 3]
    p = BetProblem(n, decisions, u)
    if policy_count(p) > 10**5:
        continue
    dp = solve(p, build_tree=False).root_value
    brute, _ = best_policy_by_enumeration(p)
    worst = max(worst, abs(dp - brute))
    checked += 1

print(f"{checked} problems, largest |DP - brute force| = {worst:.2e}, {time.perf_counter() - start:.2f}s")
