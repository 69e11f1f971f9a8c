"""
A single bet: sure cash or a coin flip
======================================

Reward A pays 400 for sure.  Reward B pays 1000 or nothing with equal odds.
With u(0) = 0 and u(1000) = 1, the utility of A is the probability ``alpha``
that makes A as good as the lottery [alpha(1000), (1 - alpha)(0)].
"""

from betlab import (
    AlphaSpec,
    Linear,
    LogShifted,
    Power,
    alpha,
    certainty_equivalent,
    expected_utility,
    make_lottery,
    mean_and_sd,
)

sure = make_lottery([(400, 1.0)])
coin = make_lottery([(1000, 0.5), (0, 0.5)])
print("A =", sure, " B =", coin)
print("mean, sd of B:", mean_and_sd(coin))

# Under u(x) = ln(1 + x), normalized so u(1000) = 1, alpha is u(400) / u(1000).
u = LogShifted()
alpha_cal = alpha(u, AlphaSpec(0, 400, 1000), 0.0)
print(f"\nlog utility: alpha = {alpha_cal:.4f} -> {'A' if alpha_cal > 0.5 else 'B'} preferred")

# Certainty equivalents give the same comparison in cash terms.
for util in (Linear(1.0), Power(0.5), u):
    ce = certainty_equivalent(util, coin)
    print(f"{util.family:>12}: E[u(B)] = {expected_utility(util, coin):9.4f}   CE(B) = {ce:8.2f}")
