"""Pre-committed portfolios of identical bets.

Each of ``n`` bets offers a sure amount (reward A) or a lottery paying
``prize`` with probability ``win_prob`` (reward B).  Committing to A in
``k`` bets and B in the other ``r = n - k`` yields the cash
``sure_amount * k + prize * ell`` where ``ell ~ Binomial(r, win_prob)``.
This module compares the exact expected utility of each allocation with
the additive valuation that sums single-bet utilities, and with the
plug-the-mean approximation for the normalized log utility.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, replace

from .errors import DomainExceeded, KOutOfRange, ROutOfRange, UnsupportedUtility
from .lottery import Money, as_money, binomial_total, shift
from .utility import NormalizedLog, UtilityFunction


@dataclass(frozen=True)
class SimultaneousProblem:
    n: int
    u: UtilityFunction
    sure_amount: Money = 400
    prize: Money = 1000
    win_prob: float = 0.5

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        as_money(self.sure_amount)
        as_money(self.prize)
        if not 0 < self.sure_amount < self.prize:
            raise ValueError("need 0 < sure_amount < prize")
        if not 0.0 < self.win_prob < 1.0:
            raise ValueError("win_prob must lie strictly between 0 and 1")
        top = max(self.prize, self.sure_amount) * self.n
        if self.u.domain_max < top:
            raise DomainExceeded(f"utility domain_max {self.u.domain_max} < {top} needed for n={self.n}")

    def with_n(self, n: int) -> "SimultaneousProblem":
        """Same bet repeated ``n`` times; horizon-dependent utilities are renormalized."""
        return replace(self, n=n, u=self.u.renormalized(n, self.prize))


def _check_k(p: SimultaneousProblem, k: int) -> None:
    if not 0 <= k <= p.n:
        raise KOutOfRange(f"k={k} outside [0, {p.n}]")


def exact_allocation_utility(p: SimultaneousProblem, k: int) -> float:
    """Expected utility of committing to A in ``k`` bets and B in the rest."""
    _check_k(p, k)
    r = p.n - k
    w = p.win_prob
    cash = [p.sure_amount * k + p.prize * ell for ell in range(r + 1)]
    vals = p.u(cash)
    if r <= 1000:
        weights = [math.comb(r, ell) * w**ell * (1 - w) ** (r - ell) for ell in range(r + 1)]
    else:
        lott = binomial_total(r, 1, w)
        weights = [lott.prob(ell) for ell in range(r + 1)]
    return math.fsum(wt * v for wt, v in zip(weights, vals))


def allocation_lottery(p: SimultaneousProblem, k: int):
    """Cash distribution of the ``(k A, (n-k) B)`` allocation."""
    _check_k(p, k)
    return shift(binomial_total(p.n - k, p.prize, p.win_prob), p.sure_amount * k)


def additive_allocation_value(alpha_cal: float, n: int, k: int, win_prob: float = 0.5) -> float:
    """Sum of single-bet utilities under the normalization u(0)=0, u(prize)=1."""
    if not 0.0 < alpha_cal < 1.0:
        raise ValueError(f"alpha_cal must lie in (0, 1), got {alpha_cal}")
    if not 0 <= k <= n:
        raise KOutOfRange(f"k={k} outside [0, {n}]")
    return alpha_cal * k + win_prob * (n - k)


def normal_pmf_weight(r: int, ell: int) -> float:
    """Normal-density stand-in for ``2**-r * C(r, ell)`` (mean r/2, variance r/4)."""
    if r < 1 or not 0 <= ell <= r:
        raise ROutOfRange(f"need r >= 1 and 0 <= ell <= r, got r={r}, ell={ell}")
    return math.sqrt(2.0 / (math.pi * r)) * math.exp(-2.0 * (ell - r / 2) ** 2 / r)


def approx_allocation_utility(p: SimultaneousProblem, k: int) -> float:
    """Utility of the mean cash ``sure*k + prize*r/2``; valid for NormalizedLog at win_prob 1/2."""
    if not isinstance(p.u, NormalizedLog):
        raise UnsupportedUtility(f"plug-the-mean approximation needs normalized_log, got {p.u.family}")
    if p.win_prob != 0.5:
        raise UnsupportedUtility("plug-the-mean approximation is stated for win_prob = 1/2")
    _check_k(p, k)
    r = p.n - k
    return p.u(p.sure_amount * k + p.prize * r / 2)


@dataclass(frozen=True)
class AllocationRow:
    k: int
    exact: float
    approx: float | None
    additive: float


@dataclass(frozen=True)
class AllocationReport:
    rows: tuple[AllocationRow, ...]
    best_k_exact: int
    best_k_additive: int

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "exact", "approx", "additive"])
        for row in self.rows:
            approx = "" if row.approx is None else f"{row.approx:.6g}"
            writer.writerow([row.k, f"{row.exact:.6g}", approx, f"{row.additive:.6g}"])
        return buf.getvalue()


def allocation_report(p: SimultaneousProblem, alpha_cal: float, with_approx: bool = False) -> AllocationReport:
    rows = []
    for k in range(p.n + 1):
        rows.append(AllocationRow(
            k=k,
            exact=exact_allocation_utility(p, k),
            approx=approx_allocation_utility(p, k) if with_approx else None,
            additive=additive_allocation_value(alpha_cal, p.n, k, p.win_prob),
        ))
    best_exact = max(rows, key=lambda row: (row.exact, -row.k)).k
    best_additive = p.n if alpha_cal > p.win_prob else 0
    return AllocationReport(tuple(rows), best_exact, best_additive)


def preference_gaps(template: SimultaneousProblem, n_max: int) -> list[tuple[int, float, float]]:
    """``(n, all-B utility, all-A utility)`` for ``n = 1..n_max``."""
    out = []
    for n in range(1, n_max + 1):
        p = template.with_n(n)
        out.append((n, exact_allocation_utility(p, 0), exact_allocation_utility(p, n)))
    return out


def find_preference_flip(template: SimultaneousProblem, n_max: int) -> int | None:
    """Smallest ``N`` such that all-B strictly beats all-A for every ``n`` in ``[N, n_max]``.

    Returns None when all-B does not win at ``n_max`` itself.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    flip = None
    for n, all_b, all_a in reversed(preference_gaps(template, n_max)):
        if all_b > all_a:
            flip = n
        else:
            break
    return flip
