"""Exhaustive enumeration of deterministic policies.

A policy assigns one decision index to every ``(stage, cumulative reward)``
pair of the reachable state space, including pairs the policy itself never
visits.  Policies are scored by propagating the wealth distribution forward
and taking the expected utility of final wealth; nothing here reuses the
backward recursion, so it serves as an independent check on
:func:`betlab.sequential.solve`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import TooLargeToEnumerate
from .lottery import Lottery, Money, make_lottery
from .sequential import BetProblem, StateSpace, reachable_states
from .utility import expected_utility

POLICY_LIMIT = 10**6
_CHUNK_FLOATS = 4_000_000


@dataclass(frozen=True)
class EnumeratedPolicy:
    states: tuple[tuple[int, Money], ...]
    choices: tuple[int, ...]

    def as_dict(self) -> dict[tuple[int, Money], int]:
        return dict(zip(self.states, self.choices))

    def choice(self, stage: int, wealth: Money) -> int:
        return self.as_dict()[(stage, wealth)]


def policy_count(p: BetProblem, space: StateSpace | None = None) -> int:
    space = space or reachable_states(p)
    return len(p.decisions) ** len(space.decision_states())


def _guard(p: BetProblem, space: StateSpace, limit: int) -> int:
    count = policy_count(p, space)
    if count > limit:
        raise TooLargeToEnumerate(count, limit)
    return count


def enumerate_policies(p: BetProblem, limit: int = POLICY_LIMIT) -> Iterator[EnumeratedPolicy]:
    """Every total assignment, lexicographic in the stage-major list of states.

    The size check runs eagerly, before the first policy is yielded.
    """
    space = reachable_states(p)
    _guard(p, space, limit)
    states = tuple(space.decision_states())

    def gen() -> Iterator[EnumeratedPolicy]:
        for choices in itertools.product(range(len(p.decisions)), repeat=len(states)):
            yield EnumeratedPolicy(states, choices)

    return gen()


def final_wealth(p: BetProblem, policy: EnumeratedPolicy) -> Lottery:
    """Distribution of total reward after ``n`` stages under ``policy``."""
    table = policy.as_dict()
    dist: dict[Money, float] = {0: 1.0}
    for k in range(1, p.n + 1):
        nxt: dict[Money, list[float]] = {}
        for r, pr in dist.items():
            for s, q in p.decisions[table[(k, r)]].lottery:
                nxt.setdefault(r + s, []).append(pr * q)
        dist = {m: math.fsum(ws) for m, ws in nxt.items()}
    return make_lottery(dist.items())


def policy_value(p: BetProblem, policy: EnumeratedPolicy) -> float:
    return expected_utility(p.u, final_wealth(p, policy))


def _transitions(p: BetProblem, space: StateSpace) -> list[np.ndarray]:
    """Per stage, ``T[d, i, j] = P(stage reward = R_k[j] - R_{k-1}[i] | decision d)``."""
    out = []
    for k in range(1, p.n + 1):
        prev, cur = space[k - 1], space[k]
        col = {r: j for j, r in enumerate(cur)}
        t = np.zeros((len(p.decisions), len(prev), len(cur)))
        for d, dec in enumerate(p.decisions):
            for i, r in enumerate(prev):
                for s, q in dec.lottery:
                    t[d, i, col[r + s]] += q
        out.append(t)
    return out


def _choice_block(start: int, stop: int, n_states: int, n_dec: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    powers = n_dec ** np.arange(n_states - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % n_dec


def best_policy_by_enumeration(p: BetProblem, limit: int = POLICY_LIMIT) -> tuple[float, EnumeratedPolicy]:
    """Highest expected utility over all enumerated policies; ties go to the earliest.

    Policies are scored in vectorized batches in enumeration order, so the
    index of the winner is the same as a one-at-a-time scan would give.
    """
    space = reachable_states(p)
    count = _guard(p, space, limit)
    states = tuple(space.decision_states())
    n_dec = len(p.decisions)
    trans = _transitions(p, space)
    u_final = np.asarray(p.u(np.asarray(space[p.n], dtype=float)), dtype=float).reshape(-1)
    widest = max(len(space[k - 1]) * len(space[k]) for k in range(1, p.n + 1))
    chunk = max(1, _CHUNK_FLOATS // widest)

    best_v, best_idx = -math.inf, -1
    for start in range(0, count, chunk):
        stop = min(count, start + chunk)
        choices = _choice_block(start, stop, len(states), n_dec)
        prob = np.ones((stop - start, 1))
        offset = 0
        for k in range(1, p.n + 1):
            width = len(space[k - 1])
            ch = choices[:, offset:offset + width]
            sel = trans[k - 1][ch, np.arange(width)[None, :]]
            prob = np.einsum("ps,pst->pt", prob, sel)
            offset += width
        values = prob @ u_final
        i = int(np.argmax(values))
        if values[i] > best_v:
            best_v, best_idx = float(values[i]), start + i
    choices = tuple(int(c) for c in _choice_block(best_idx, best_idx + 1, len(states), n_dec)[0])
    return best_v, EnumeratedPolicy(states, choices)
