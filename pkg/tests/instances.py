"""Seeded generator of small sequential problems for oracle comparisons."""

from __future__ import annotations

import numpy as np

from betlab import BetProblem, Exponential, Linear, LogShifted, Power, make_lottery
from betlab.oracle import policy_count

FAMILIES = ("linear", "log_shifted", "power_half", "power_two", "exponential")


def family_utility(name: str, unit: int):
    return {
        "linear": Linear(1.0),
        "log_shifted": LogShifted(),
        "power_half": Power(0.5),
        "power_two": Power(2.0),
        "exponential": Exponential(1.0 / (4 * unit)),
    }[name]


def random_problem(rng: np.random.Generator, family: str, budget: int = 10**6) -> BetProblem:
    """Draw until the instance has at most ``budget`` enumerable policies.

    Rewards are multiples of a random unit so supports collide and the state
    space stays small.
    """
    while True:
        n = int(rng.integers(1, 5))
        n_dec = int(rng.choice([1, 2, 2, 3, 3, 3]))
        unit = int(rng.choice([1, 5, 25]))
        decisions = []
        for i in range(n_dec):
            size = int(rng.choice([1, 2, 3, 3]))
            rewards = rng.choice(5, size=size, replace=False) * unit
            probs = rng.dirichlet(np.ones(size))
            decisions.append((f"d{i}", make_lottery(zip(rewards.tolist(), probs.tolist()))))
        p = BetProblem(n, decisions, family_utility(family, unit))
        if policy_count(p) <= budget:
            return p


def instance_sweep(count: int, seed: int = 20231):
    rng = np.random.default_rng(seed)
    return [random_problem(rng, FAMILIES[i % len(FAMILIES)]) for i in range(count)]
