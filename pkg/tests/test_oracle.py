import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from betlab import (
    BetProblem,
    Linear,
    LogShifted,
    SimultaneousProblem,
    best_policy_by_enumeration,
    enumerate_policies,
    exact_allocation_utility,
    make_lottery,
    policy_count,
    reachable_states,
    solve,
)
from betlab.errors import TooLargeToEnumerate
from betlab.oracle import policy_value

from instances import FAMILIES, random_problem


class TestEnumeration:
    def test_example3_count(self, example3):
        policies = list(enumerate_policies(example3))
        assert len(policies) == 16 == policy_count(example3)
        assert policies[0].choices == (0, 0, 0, 0)
        assert policies[-1].choices == (1, 1, 1, 1)
        assert len({p.choices for p in policies}) == 16

    def test_lexicographic(self, example3):
        choices = [p.choices for p in enumerate_policies(example3)]
        assert choices == sorted(choices)

    def test_one_stage(self, example3):
        assert len(list(enumerate_policies(example3.with_n(1)))) == 2

    def test_three_stages(self, example3):
        # |R_0| + |R_1| + |R_2| = 1 + 3 + 6 decision states
        p = example3.with_n(3)
        assert sum(len(reachable_states(p)[k]) for k in range(3)) == 10
        assert policy_count(p) == 2**10

    def test_guard(self, example3):
        with pytest.raises(TooLargeToEnumerate) as err:
            enumerate_policies(example3.with_n(5))
        assert err.value.count == policy_count(example3.with_n(5))
        with pytest.raises(TooLargeToEnumerate):
            best_policy_by_enumeration(example3.with_n(5))


class TestBestPolicy:
    def test_example3(self, example3):
        value, policy = best_policy_by_enumeration(example3)
        assert value == pytest.approx(6.686, abs=1e-3)
        assert set(policy.choices) == {0}

    def test_linear(self, example3):
        p = BetProblem(2, example3.decisions, Linear(1.0))
        value, policy = best_policy_by_enumeration(p)
        assert value == pytest.approx(1000.0)
        # (2, 400) is never reached after B; its choice is a tie left at index 0
        visited = {(1, 0), (2, 0), (2, 1000)}
        assert {c for s, c in zip(policy.states, policy.choices) if s in visited} == {1}

    def test_one_stage(self, example3):
        value, policy = best_policy_by_enumeration(example3.with_n(1))
        assert value == pytest.approx(5.994, abs=1e-3)
        assert policy.choices == (0,)

    def test_vectorized_matches_scalar_scan(self, example3):
        p = example3.with_n(3)
        values = [policy_value(p, pol) for pol in enumerate_policies(p)]
        best = int(np.argmax(values))
        value, policy = best_policy_by_enumeration(p)
        assert value == pytest.approx(values[best], abs=1e-12)
        assert policy == list(enumerate_policies(p))[best]

    @pytest.mark.parametrize("n", [2, 3])
    def test_beats_every_commitment(self, example3, n):
        value, _ = best_policy_by_enumeration(example3.with_n(n))
        sp = SimultaneousProblem(n, LogShifted())
        assert all(value >= exact_allocation_utility(sp, k) - 1e-12 for k in range(n + 1))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(FAMILIES))
def test_dp_matches_enumeration(seed, family):
    p = random_problem(np.random.default_rng(seed), family, budget=2**12)
    sol = solve(p, build_tree=False)
    value, policy = best_policy_by_enumeration(p)
    assert abs(sol.root_value - value) < 1e-9
    # the DP's own assignment is one of the enumerated policies and scores the same
    dp_choices = tuple(sol.table.decisions[s] for s in policy.states)
    from betlab.oracle import EnumeratedPolicy
    assert abs(policy_value(p, EnumeratedPolicy(policy.states, dp_choices)) - value) < 1e-9


def test_degenerate_single_decision():
    p = BetProblem(3, [("only", make_lottery([(0, 0.5), (3, 0.5)]))], LogShifted())
    assert policy_count(p) == 1
    value, _ = best_policy_by_enumeration(p)
    assert abs(value - solve(p).root_value) < 1e-12
