"""
Betting one stage at a time
===========================

When bets are sequential, later choices can react to cash already won.
The value of a second installment r2 after r1 is u(r1 + r2) - u(r1), and
backward induction over cumulative cash finds the best contingent plan.
"""

from betlab import (
    BetProblem,
    Linear,
    LogShifted,
    SimultaneousProblem,
    build_policy_tree,
    evaluate_policy,
    exact_allocation_utility,
    make_lottery,
    solve,
    stagewise_myopic_policy,
)

A = make_lottery([(400, 1.0)])
B = make_lottery([(0, 0.5), (1000, 0.5)])
two_stage = BetProblem(2, [("A", A), ("B", B)], LogShifted())

sol = solve(two_stage)
print(f"optimal value {sol.root_value:.3f}, policy {sol.tree.summary()}")
print(sol.tree.to_text())

# Start with B, then take A after a loss and B after a win.
alt = build_policy_tree(two_stage, lambda k, r: 1 if k == 1 else (0 if r == 0 else 1))
value, wealth = evaluate_policy(two_stage, alt)
print(f"B-first plan: {value:.3f}, final wealth {wealth}")

###############################################################################
# Longer horizons: adapting beats any fixed allocation.

for n in (2, 3, 4, 6):
    p = two_stage.with_n(n)
    root = solve(p, build_tree=False).root_value
    sp = SimultaneousProblem(n, LogShifted())
    best_fixed = max(exact_allocation_utility(sp, k) for k in range(n + 1))
    myopic = evaluate_policy(p, stagewise_myopic_policy(p))[0]
    print(f"n={n}: sequential {root:.4f}  best fixed {best_fixed:.4f}  myopic {myopic:.4f}")

print("\nthree stages:", solve(two_stage.with_n(3)).tree.summary())

# Linear utility: every stage is the one-stage problem.
print("linear, four stages:", solve(BetProblem(4, [("A", A), ("B", B)], Linear(1.0))).tree.summary())
