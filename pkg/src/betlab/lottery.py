"""Exact cash amounts and finite discrete lotteries over them.

Cash is always a nonnegative ``int`` (whole currency units) so that sums are
exact and can serve as dictionary keys when states are merged.  A
:class:`Lottery` is stored in canonical form: outcomes strictly ascending,
duplicates merged, probabilities renormalized by their exact sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import NegativeMoney, NegativeProbability, ProbabilitySumOutOfTolerance

Money = int

INPUT_TOLERANCE = 1e-9


def as_money(value) -> Money:
    """Validate and coerce ``value`` to a nonnegative integer amount."""
    if isinstance(value, bool):
        raise TypeError("bool is not a cash amount")
    if isinstance(value, float):
        if not value.is_integer():
            raise TypeError(f"cash amounts are whole units, got {value!r}")
        value = int(value)
    if not isinstance(value, int):
        raise TypeError(f"cash amount must be an int, got {type(value).__name__}")
    if value < 0:
        raise NegativeMoney(f"cash amount must be nonnegative, got {value}")
    return value


@dataclass(frozen=True)
class Lottery:
    """Canonical finite distribution over cash amounts.

    Build instances with :func:`make_lottery`; the constructor does not
    validate.  Zero-probability outcomes are dropped, so ``support`` is the
    set of amounts that can actually occur.
    """

    outcomes: tuple[Money, ...]
    probs: tuple[float, ...]

    def __iter__(self) -> Iterator[tuple[Money, float]]:
        return iter(zip(self.outcomes, self.probs))

    def __len__(self) -> int:
        return len(self.outcomes)

    def as_dict(self) -> dict[Money, float]:
        return dict(zip(self.outcomes, self.probs))

    def prob(self, amount: Money) -> float:
        return self.as_dict().get(amount, 0.0)

    @property
    def support(self) -> tuple[Money, ...]:
        return self.outcomes

    @property
    def min(self) -> Money:
        return self.outcomes[0]

    @property
    def max(self) -> Money:
        return self.outcomes[-1]

    def is_point_mass(self) -> bool:
        return len(self.outcomes) == 1

    def mean(self) -> float:
        return mean_and_sd(self)[0]

    def shift(self, amount: Money) -> "Lottery":
        return shift(self, amount)

    def __repr__(self) -> str:
        body = ", ".join(f"{m}: {p:.6g}" for m, p in self)
        return f"Lottery({{{body}}})"


def make_lottery(pairs: Iterable[tuple[Money, float]]) -> Lottery:
    """Build a canonical lottery from ``(amount, probability)`` pairs.

    >>> make_lottery([(1000, 0.5), (0, 0.5)])
    Lottery({0: 0.5, 1000: 0.5})
    """
    merged: dict[Money, list[float]] = {}
    all_probs = []
    for amount, p in pairs:
        amount = as_money(amount)
        p = float(p)
        if not p >= 0.0:
            raise NegativeProbability(f"probability of {amount} is {p}")
        merged.setdefault(amount, []).append(p)
        all_probs.append(p)
    total = math.fsum(all_probs)
    if abs(total - 1.0) > INPUT_TOLERANCE:
        raise ProbabilitySumOutOfTolerance(f"probabilities sum to {total!r}, not 1")
    return _from_weights({m: math.fsum(ps) for m, ps in merged.items()}, total)


def _from_weights(weights: dict[Money, float], total: float | None = None) -> Lottery:
    if total is None:
        total = math.fsum(weights.values())
    items = sorted((m, w / total) for m, w in weights.items() if w > 0.0)
    return Lottery(tuple(m for m, _ in items), tuple(p for _, p in items))


def point_mass(amount: Money) -> Lottery:
    return Lottery((as_money(amount),), (1.0,))


def shift(lottery: Lottery, amount: Money) -> Lottery:
    """Distribution of ``X + amount``."""
    amount = as_money(amount)
    return Lottery(tuple(m + amount for m in lottery.outcomes), lottery.probs)


def convolve(a: Lottery, b: Lottery) -> Lottery:
    """Distribution of ``X + Y`` for independent ``X ~ a`` and ``Y ~ b``."""
    acc: dict[Money, list[float]] = {}
    for x, px in a:
        for y, py in b:
            acc.setdefault(x + y, []).append(px * py)
    return _from_weights({m: math.fsum(ws) for m, ws in acc.items()})


def binomial_total(r: int, prize: Money, win_prob: float) -> Lottery:
    """Total winnings of ``r`` independent bets paying ``prize`` with ``win_prob``."""
    if r < 0:
        raise ValueError(f"number of bets must be >= 0, got {r}")
    prize = as_money(prize)
    if not 0.0 <= win_prob <= 1.0:
        raise ValueError(f"win_prob must lie in [0, 1], got {win_prob}")
    q = 1.0 - win_prob
    weights: dict[Money, float] = {}
    for ell in range(r + 1):
        if r <= 1000:
            w = math.comb(r, ell) * win_prob**ell * q ** (r - ell)
        else:
            w = _log_binom_pmf(r, ell, win_prob)
        weights[ell * prize] = weights.get(ell * prize, 0.0) + w
    return _from_weights(weights)


def _log_binom_pmf(r: int, ell: int, p: float) -> float:
    if p in (0.0, 1.0):
        return float(ell == (r if p == 1.0 else 0))
    log_w = (
        math.lgamma(r + 1) - math.lgamma(ell + 1) - math.lgamma(r - ell + 1)
        + ell * math.log(p) + (r - ell) * math.log1p(-p)
    )
    return math.exp(log_w)


def mean_and_sd(lottery: Lottery) -> tuple[float, float]:
    mean = math.fsum(m * p for m, p in lottery)
    var = math.fsum(p * (m - mean) ** 2 for m, p in lottery)
    return mean, math.sqrt(var)


def tail_prob(lottery: Lottery, threshold: Money) -> float:
    """``P(X > threshold)`` with strict inequality."""
    return math.fsum(p for m, p in lottery if m > threshold)
