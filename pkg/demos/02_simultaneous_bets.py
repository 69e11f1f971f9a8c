"""
Committing to n bets at once
============================

Choose A in k of n bets and B in the other n - k.  Summing single-bet
utilities (alpha for A, 1/2 for B) always picks k = 0 or k = n.  Scoring the
whole portfolio with one utility function does not.
"""

import math

from betlab import (
    LogShifted,
    NormalizedLog,
    SimultaneousProblem,
    allocation_report,
    approx_allocation_utility,
    binomial_total,
    exact_allocation_utility,
    find_preference_flip,
    normal_pmf_weight,
    tail_prob,
)

u = LogShifted()
alpha_cal = u(400) / u(1000)

###############################################################################
# Exact versus additive, for a few horizons.

for n in (1, 2, 5, 10):
    report = allocation_report(SimultaneousProblem(n, u), alpha_cal)
    print(f"n={n:>2}: best k exact = {report.best_k_exact:>2}, additive = {report.best_k_additive:>2}")

print()
print(allocation_report(SimultaneousProblem(4, NormalizedLog(4)), alpha_cal, with_approx=True).to_csv())

###############################################################################
# From which n on does all-B beat all-A?

template = SimultaneousProblem(1, u)
print("log utility flip at N =", find_preference_flip(template, 60))
print("win prob 0.3 flip:", find_preference_flip(SimultaneousProblem(1, u, win_prob=0.3), 60))

# The probability that all-B out-earns all-A grows with n, but slowly.
for n in (10, 60, 150):
    print(f"P(B_{n} > {400 * n}) = {tail_prob(binomial_total(n, 1000, 0.5), 400 * n):.4f}")

###############################################################################
# Plug-the-mean approximation for the normalized log utility.

for n in (10, 50, 200):
    p = SimultaneousProblem(n, NormalizedLog(n))
    ex, ap = exact_allocation_utility(p, 0), approx_allocation_utility(p, 0)
    print(f"n={n:>3}: exact {ex:.5f}  approx {ap:.5f}  gap {abs(ex - ap):.5f}")

# and the normal weight that stands in for the binomial pmf
for r in (4, 16, 100):
    ell = r // 2
    exact = math.comb(r, ell) / 2**r
    print(f"r={r:>3}, ell={ell:>2}: normal {normal_pmf_weight(r, ell):.5f} vs binomial {exact:.5f}")
