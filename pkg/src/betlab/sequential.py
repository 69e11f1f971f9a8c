"""Backward induction for sequential bets scored by conditional utility.

At every stage the decision maker picks one decision from a fixed menu, each
decision being a lottery over that stage's cash reward.  The state before
stage ``k`` is the cumulative reward ``r`` collected in stages ``1..k-1``.
The continuation value is

    X_k(r) = max_d  sum_s P_d(s) * [u(r + s) - u(r) + X_{k+1}(r + s)],

with ``X_{n+1} = 0``; at stage 1 the reward is scored by ``u(s)`` itself, so
the root value ``X_1`` is the expected utility of final wealth.  Ties go to
the lowest decision index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import DomainExceeded, MalformedTree
from .lottery import Lottery, Money, make_lottery
from .utility import UtilityFunction, conditional_expected_utility, expected_utility

DP_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Decision:
    name: str
    lottery: Lottery


@dataclass(frozen=True)
class BetProblem:
    """``n`` stages with the same decision menu at each stage."""

    n: int
    decisions: tuple[Decision, ...]
    u: UtilityFunction

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need at least one stage, got n={self.n}")
        decs = tuple(
            d if isinstance(d, Decision) else Decision(str(d[0]), _as_lottery(d[1]))
            for d in self.decisions
        )
        if not decs:
            raise ValueError("need at least one decision")
        names = [d.name for d in decs]
        if len(set(names)) != len(names):
            raise ValueError(f"decision names must be unique, got {names}")
        object.__setattr__(self, "decisions", decs)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(d.name for d in self.decisions)

    @property
    def stage_max(self) -> Money:
        return max(d.lottery.max for d in self.decisions)

    def with_n(self, n: int) -> "BetProblem":
        return BetProblem(n, self.decisions, self.u)


def _as_lottery(obj) -> Lottery:
    if isinstance(obj, Lottery):
        return obj
    if isinstance(obj, dict):
        return make_lottery(obj.items())
    return make_lottery(obj)


@dataclass(frozen=True)
class StateSpace:
    """``levels[k]`` holds the sorted cumulative rewards reachable after ``k`` stages."""

    levels: tuple[tuple[Money, ...], ...]

    def __getitem__(self, k: int) -> tuple[Money, ...]:
        return self.levels[k]

    @property
    def n(self) -> int:
        return len(self.levels) - 1

    def decision_states(self) -> list[tuple[int, Money]]:
        """All ``(stage, state)`` pairs at which a decision is taken, stage-major."""
        return [(k, r) for k in range(1, self.n + 1) for r in self.levels[k - 1]]


def reachable_states(p: BetProblem) -> StateSpace:
    support = sorted({s for d in p.decisions for s in d.lottery.support})
    levels = [(0,)]
    for _ in range(p.n):
        levels.append(tuple(sorted({r + s for r in levels[-1] for s in support})))
    top = levels[-1][-1]
    if top > p.u.domain_max:
        raise DomainExceeded(f"reachable wealth {top} exceeds utility domain_max {p.u.domain_max}")
    return StateSpace(tuple(levels))


@dataclass
class DPTable:
    """``values[(k, r)]`` is ``X_k(r)``; ``decisions[(k, r)]`` the maximizing index."""

    values: dict[tuple[int, Money], float] = field(default_factory=dict)
    decisions: dict[tuple[int, Money], int] = field(default_factory=dict)

    def rows(self) -> list[tuple[int, Money, int, float]]:
        return [(k, r, self.decisions[(k, r)], self.values[(k, r)]) for (k, r) in sorted(self.values)]


@dataclass
class PolicyNode:
    stage: int
    wealth: Money
    decision: int
    name: str
    value: float
    children: dict[Money, "PolicyNode"] = field(default_factory=dict)


@dataclass
class PolicyTree:
    """Contingent plan: one node per reachable history, depth ``n``.

    A stage-``n`` node has no children; every earlier node has exactly one
    child per outcome of its chosen decision.
    """

    root: PolicyNode
    n: int

    def nodes(self) -> Iterator[PolicyNode]:
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(node.children[s] for s in sorted(node.children, reverse=True))

    def stage_decisions(self) -> list[list[str]]:
        """Distinct decision names used at each stage, in menu-independent sorted order."""
        seen: list[set[str]] = [set() for _ in range(self.n)]
        for node in self.nodes():
            seen[node.stage - 1].add(node.name)
        return [sorted(s) for s in seen]

    def summary(self) -> str:
        """``"A;A"`` style string; stages where the choice depends on history list all names."""
        return ";".join("/".join(names) for names in self.stage_decisions())

    def to_text(self) -> str:
        lines: list[str] = []

        def walk(node: PolicyNode, depth: int, label: str) -> None:
            lines.append(
                f"{'  ' * depth}{label}stage {node.stage} wealth {node.wealth}: "
                f"{node.name} (value {node.value:.6f})"
            )
            for s in sorted(node.children):
                walk(node.children[s], depth + 1, f"+{s} -> ")

        walk(self.root, 0, "")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        def conv(node: PolicyNode) -> dict:
            return {
                "stage": node.stage,
                "state": node.wealth,
                "decision": node.name,
                "value": node.value,
                "children": [{"reward": s, "node": conv(node.children[s])} for s in sorted(node.children)],
            }

        return conv(self.root)


def _baseline(k: int, r: Money, ucache: dict[Money, float]) -> float:
    # stage 1 scores the reward by u(s); later stages by u(r+s) - u(r)
    return 0.0 if k == 1 else ucache[r]


def _utility_cache(p: BetProblem, space: StateSpace) -> dict[Money, float]:
    cash = sorted({r for level in space.levels for r in level})
    return dict(zip(cash, np.atleast_1d(p.u(np.asarray(cash, dtype=float))).tolist()))


@dataclass
class Solution:
    table: DPTable
    tree: PolicyTree | None
    root_value: float
    states: StateSpace


def solve(p: BetProblem, build_tree: bool = True) -> Solution:
    """Backward induction over all reachable states.

    ``build_tree=False`` skips materializing the policy tree, whose size grows
    with the number of histories rather than the number of states.
    """
    space = reachable_states(p)
    ucache = _utility_cache(p, space)
    table = DPTable()
    next_values: dict[Money, float] = {r: 0.0 for r in space[p.n]}
    for k in range(p.n, 0, -1):
        cur: dict[Money, float] = {}
        for r in space[k - 1]:
            base = _baseline(k, r, ucache)
            best_i, best_v = -1, -math.inf
            for i, d in enumerate(p.decisions):
                v = math.fsum(
                    q * (ucache[r + s] - base + next_values[r + s]) for s, q in d.lottery
                )
                if v > best_v:
                    best_i, best_v = i, v
            cur[r] = best_v
            table.values[(k, r)] = best_v
            table.decisions[(k, r)] = best_i
        next_values = cur
    root_value = table.values[(1, 0)]
    tree = policy_from_choices(p, table.decisions) if build_tree else None
    return Solution(table, tree, root_value, space)


def build_policy_tree(p: BetProblem, rule: Callable[[int, Money], int]) -> PolicyTree:
    """Expand ``rule(stage, wealth) -> decision index`` into a tree.

    Node values are the plan's own continuation values, computed with the
    same conditional-utility recursion the solver maximizes.
    """
    space = reachable_states(p)
    ucache = _utility_cache(p, space)

    def expand(k: int, r: Money) -> PolicyNode:
        i = rule(k, r)
        if not 0 <= i < len(p.decisions):
            raise MalformedTree(f"rule chose decision {i} at stage {k}, wealth {r}")
        d = p.decisions[i]
        base = _baseline(k, r, ucache)
        children: dict[Money, PolicyNode] = {}
        terms = []
        for s, q in d.lottery:
            cont = 0.0
            if k < p.n:
                child = expand(k + 1, r + s)
                children[s] = child
                cont = child.value
            terms.append(q * (ucache[r + s] - base + cont))
        return PolicyNode(k, r, i, d.name, math.fsum(terms), children)

    return PolicyTree(expand(1, 0), p.n)


def policy_from_choices(p: BetProblem, choices: dict[tuple[int, Money], int]) -> PolicyTree:
    return build_policy_tree(p, lambda k, r: choices[(k, r)])


def constant_policy(p: BetProblem, index: int) -> PolicyTree:
    return build_policy_tree(p, lambda k, r: index)


def evaluate_policy(p: BetProblem, tree: PolicyTree) -> tuple[float, Lottery]:
    """Expected utility and exact final-wealth distribution of following ``tree``."""
    if tree.n != p.n:
        raise MalformedTree(f"tree depth {tree.n} does not match problem horizon {p.n}")
    final: dict[Money, list[float]] = {}

    def walk(node: PolicyNode, k: int, r: Money, prob: float) -> None:
        if node.stage != k or node.wealth != r:
            raise MalformedTree(f"node labelled (stage {node.stage}, wealth {node.wealth}) sits at ({k}, {r})")
        if not 0 <= node.decision < len(p.decisions):
            raise MalformedTree(f"unknown decision index {node.decision} at stage {k}")
        lottery = p.decisions[node.decision].lottery
        if k == p.n:
            if node.children:
                raise MalformedTree(f"stage-{k} node has children beyond the horizon")
            for s, q in lottery:
                final.setdefault(r + s, []).append(prob * q)
            return
        if set(node.children) != set(lottery.support):
            raise MalformedTree(
                f"children {sorted(node.children)} at stage {k}, wealth {r} "
                f"do not match support {list(lottery.support)}"
            )
        for s, q in lottery:
            walk(node.children[s], k + 1, r + s, prob * q)

    walk(tree.root, 1, 0, 1.0)
    wealth = make_lottery((m, math.fsum(ps)) for m, ps in final.items())
    return expected_utility(p.u, wealth), wealth


def myopic_choice(p: BetProblem, r: Money) -> int:
    best_i, best_v = -1, -math.inf
    for i, d in enumerate(p.decisions):
        v = conditional_expected_utility(p.u, d.lottery, r)
        if v > best_v:
            best_i, best_v = i, v
    return best_i


def stagewise_myopic_policy(p: BetProblem) -> PolicyTree:
    """Plan that maximizes the current stage's conditional expected utility only."""
    return build_policy_tree(p, lambda k, r: myopic_choice(p, r))


def history_independent(p: BetProblem, sol: Solution) -> bool:
    """True when each stage uses a single decision across all of its states."""
    for k in range(1, p.n + 1):
        if len({sol.table.decisions[(k, r)] for r in sol.states[k - 1]}) > 1:
            return False
    return True


def decision_menu(pairs: Sequence[tuple[str, Lottery]]) -> tuple[Decision, ...]:
    return tuple(Decision(name, lot) for name, lot in pairs)
