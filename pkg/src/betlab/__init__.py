"""Expected-utility analysis of repeated monetary bets.

Simultaneous (pre-committed) bet portfolios are scored exactly and against
the additive valuation; sequential bets are solved by backward induction on
conditional utility and cross-checked by brute-force policy enumeration.
"""

from .errors import BetlabError, DomainError, DomainExceeded, SpecError, TooLargeToEnumerate
from .lottery import (
    Lottery,
    Money,
    binomial_total,
    convolve,
    make_lottery,
    mean_and_sd,
    point_mass,
    shift,
    tail_prob,
)
from .oracle import EnumeratedPolicy, best_policy_by_enumeration, enumerate_policies, policy_count
from .sequential import (
    BetProblem,
    Decision,
    PolicyTree,
    StateSpace,
    build_policy_tree,
    evaluate_policy,
    reachable_states,
    solve,
    stagewise_myopic_policy,
)
from .simultaneous import (
    SimultaneousProblem,
    additive_allocation_value,
    allocation_report,
    approx_allocation_utility,
    exact_allocation_utility,
    find_preference_flip,
    normal_pmf_weight,
)
from .utility import (
    AlphaSpec,
    Exponential,
    Linear,
    LogShifted,
    Monotonicity,
    NormalizedLog,
    Power,
    Tabulated,
    alpha,
    alpha_monotonicity_report,
    certainty_equivalent,
    conditional_expected_utility,
    conditional_utility,
    evaluate,
    expected_utility,
    load_tabulated_csv,
    make_utility,
)

__version__ = "0.1.0"
