"""Utility-of-money functions and the quantities built on them.

Every family maps cash in ``[0, domain_max]`` to reals, is strictly
increasing there, and accepts either scalars or numpy arrays.  On top of
these sit expected utility of a lottery, conditional utility of a second
installment given a first, and the indifference probability ``alpha(x)``
between a sure amount and a two-outcome lottery as background wealth ``x``
is added to every outcome.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.optimize import brentq

from .errors import DegenerateDenominator, DomainError, DomainExceeded
from .lottery import Lottery, Money

UTILITY_TOLERANCE = 1e-9
ALPHA_TOLERANCE = 1e-10
CASH_TOLERANCE = 1e-6
_DENOMINATOR_FLOOR = 1e-12


class UtilityFunction:
    """Base class.  Subclasses implement ``_raw`` and carry ``domain_max``."""

    domain_max: float
    family: str = ""

    def _raw(self, x):
        raise NotImplementedError

    def __call__(self, x):
        arr = np.asarray(x, dtype=float)
        if arr.size and (np.any(arr < 0) or np.any(arr > self.domain_max) or np.any(np.isnan(arr))):
            bad = arr[(arr < 0) | (arr > self.domain_max) | np.isnan(arr)].flat[0]
            raise DomainExceeded(f"{self.family}: cash {bad} outside [0, {self.domain_max}]")
        out = self._raw(arr)
        return float(out) if np.ndim(out) == 0 else out

    def params(self) -> dict:
        return {}

    def renormalized(self, n: int, prize: Money) -> "UtilityFunction":
        """Version of this utility suited to an ``n``-bet problem with ``prize``.

        Only :class:`NormalizedLog` depends on the horizon; other families
        return themselves.
        """
        return self


@dataclass(frozen=True)
class LogShifted(UtilityFunction):
    """``u(x) = ln(1 + x)``."""

    domain_max: float = math.inf
    family = "log_shifted"

    def _raw(self, x):
        return np.log1p(x)


@dataclass(frozen=True)
class NormalizedLog(UtilityFunction):
    """``phi_n(x) = ln(1 + x) / ln(1 + scale * n)`` on ``[0, scale * n]``.

    ``phi_n(0) = 0`` and ``phi_n(scale * n) = 1``.
    """

    n: int
    scale: int = 1000
    family = "normalized_log"

    def __post_init__(self):
        if self.n < 1 or self.scale < 1:
            raise ValueError("NormalizedLog needs n >= 1 and scale >= 1")

    @property
    def domain_max(self) -> float:
        return float(self.scale * self.n)

    def _raw(self, x):
        return np.log1p(x) / math.log1p(self.scale * self.n)

    def params(self) -> dict:
        return {"n": self.n, "scale": self.scale}

    def renormalized(self, n: int, prize: Money) -> "NormalizedLog":
        return NormalizedLog(n=n, scale=prize)


@dataclass(frozen=True)
class Linear(UtilityFunction):
    """``u(x) = xi * x``."""

    xi: float = 1.0
    domain_max: float = math.inf
    family = "linear"

    def __post_init__(self):
        if not self.xi > 0:
            raise ValueError("Linear utility needs xi > 0 to be increasing")

    def _raw(self, x):
        return self.xi * x

    def params(self) -> dict:
        return {"xi": self.xi}


@dataclass(frozen=True)
class Power(UtilityFunction):
    """``u(x) = x ** gamma``; concave for gamma < 1, convex for gamma > 1."""

    gamma: float
    domain_max: float = math.inf
    family = "power"

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError("Power utility needs gamma > 0")

    def _raw(self, x):
        return np.power(x, self.gamma)

    def params(self) -> dict:
        return {"gamma": self.gamma}


@dataclass(frozen=True)
class Exponential(UtilityFunction):
    """``u(x) = 1 - exp(-lam * x)`` (constant absolute risk aversion)."""

    lam: float
    domain_max: float = math.inf
    family = "exponential"

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError("Exponential utility needs lam > 0")

    def _raw(self, x):
        return -np.expm1(-self.lam * x)

    def params(self) -> dict:
        return {"lam": self.lam}


@dataclass(frozen=True)
class Tabulated(UtilityFunction):
    """Piecewise-linear utility through sample points ``(cash, utility)``.

    The first sample must sit at cash 0; the last one fixes ``domain_max``.
    Both columns must be strictly increasing.
    """

    cash: tuple[float, ...]
    values: tuple[float, ...]
    family = "tabulated"
    _xs: np.ndarray = field(init=False, repr=False, compare=False)
    _ys: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        xs = np.asarray(self.cash, dtype=float)
        ys = np.asarray(self.values, dtype=float)
        if xs.ndim != 1 or xs.shape != ys.shape or xs.size < 2:
            raise ValueError("tabulated utility needs two equal-length columns of >= 2 points")
        if xs[0] != 0:
            raise ValueError(f"tabulated utility must start at cash 0, got {xs[0]}")
        for i in range(1, xs.size):
            if not xs[i] > xs[i - 1]:
                raise ValueError(f"point {i}: cash {xs[i]} not strictly above {xs[i - 1]}")
            if not ys[i] > ys[i - 1]:
                raise ValueError(f"point {i}: utility {ys[i]} not strictly above {ys[i - 1]}")
        object.__setattr__(self, "_xs", xs)
        object.__setattr__(self, "_ys", ys)

    @property
    def domain_max(self) -> float:
        return float(self._xs[-1])

    def _raw(self, x):
        return np.interp(x, self._xs, self._ys)

    def params(self) -> dict:
        return {"points": [[c, v] for c, v in zip(self.cash, self.values)]}


def load_tabulated_csv(path: str | Path) -> Tabulated:
    """Read a two-column ``cash,utility`` CSV; a non-numeric first row is a header.

    Errors name the 1-based row of the file that broke the rules.
    """
    cash: list[float] = []
    values: list[float] = []
    with open(path, newline="") as fh:
        for rownum, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 2:
                raise ValueError(f"{path}: row {rownum}: expected 2 columns, got {len(row)}")
            try:
                c, v = float(row[0]), float(row[1])
            except ValueError:
                if rownum == 1:
                    continue
                raise ValueError(f"{path}: row {rownum}: non-numeric value {row!r}") from None
            if cash and not c > cash[-1]:
                raise ValueError(f"{path}: row {rownum}: cash {c} not strictly increasing")
            if values and not v > values[-1]:
                raise ValueError(f"{path}: row {rownum}: utility {v} not strictly increasing")
            cash.append(c)
            values.append(v)
    return Tabulated(tuple(cash), tuple(values))


def evaluate(u: UtilityFunction, x) -> float:
    return u(x)


def expected_utility(u: UtilityFunction, lottery: Lottery) -> float:
    vals = u(np.asarray(lottery.outcomes, dtype=float))
    return math.fsum(p * v for p, v in zip(lottery.probs, vals))


def conditional_utility(u: UtilityFunction, r2: Money, r1: Money) -> float:
    """Utility of a second installment ``r2`` received after ``r1``."""
    return u(r1 + r2) - u(r1)


def conditional_expected_utility(u: UtilityFunction, d: Lottery, r1: Money) -> float:
    """``E[u(r1 + D)] - u(r1)`` for a random second installment ``D``."""
    base = u(r1)
    vals = u(np.asarray(d.outcomes, dtype=float) + r1)
    return math.fsum(p * (v - base) for p, v in zip(d.probs, vals))


def certainty_equivalent(u: UtilityFunction, lottery: Lottery) -> float:
    """Sure cash amount with the same utility as ``lottery``."""
    if lottery.is_point_mass():
        return float(lottery.min)
    target = expected_utility(u, lottery)
    return brentq(lambda e: u(e) - target, lottery.min, lottery.max, xtol=CASH_TOLERANCE / 4)


@dataclass(frozen=True)
class AlphaSpec:
    """Outcomes ``a < c < b`` and the range of background wealth offsets to scan."""

    a: Money
    c: Money
    b: Money
    x_min: float = 0.0
    x_max: float = 0.0

    def __post_init__(self):
        if not 0 <= self.a < self.c < self.b:
            raise DomainError(f"need 0 <= a < c < b, got a={self.a}, c={self.c}, b={self.b}")
        if self.x_min > self.x_max:
            raise DomainError(f"empty offset range [{self.x_min}, {self.x_max}]")
        if self.x_min < -self.a:
            raise DomainExceeded(f"offset {self.x_min} below -a = {-self.a}")

    @property
    def ratio(self) -> float:
        """``(c - a) / (b - a)``: the value of alpha for linear utility."""
        return (self.c - self.a) / (self.b - self.a)

    def grid(self, points: int) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, points)


def alpha(u: UtilityFunction, spec: AlphaSpec, x):
    """Probability on ``b`` making ``c`` indifferent to the ``(b, a)`` lottery, all shifted by ``x``.

    Accepts a scalar or an array of offsets.
    """
    xs = np.asarray(x, dtype=float)
    if np.any(xs < spec.x_min) or np.any(xs > spec.x_max):
        raise DomainExceeded(f"offset outside [{spec.x_min}, {spec.x_max}]")
    if xs.size and spec.b + np.max(xs) > u.domain_max:
        bad = np.atleast_1d(xs)[np.atleast_1d(spec.b + xs > u.domain_max)][0]
        raise DomainExceeded(f"offset x={bad:g} puts b+x={spec.b + bad:g} above domain_max {u.domain_max:g}")
    ua = u(spec.a + xs)
    den = u(spec.b + xs) - ua
    small = np.asarray(den < _DENOMINATOR_FLOOR)
    if small.any():
        bad = np.atleast_1d(xs)[np.atleast_1d(small)][0]
        raise DegenerateDenominator(f"u(b+x) - u(a+x) < {_DENOMINATOR_FLOOR} at x={bad}")
    out = (u(spec.c + xs) - ua) / den
    return float(out) if np.ndim(out) == 0 else out


class Monotonicity(str, enum.Enum):
    DECREASING = "Decreasing"
    INCREASING = "Increasing"
    CONSTANT = "Constant"
    MIXED = "Mixed"

    def __str__(self) -> str:
        return self.value


def classify_steps(values: np.ndarray, tol: float = ALPHA_TOLERANCE) -> Monotonicity:
    steps = np.diff(values)
    up = bool(np.any(steps > tol))
    down = bool(np.any(steps < -tol))
    if up and down:
        return Monotonicity.MIXED
    if up:
        return Monotonicity.INCREASING
    if down:
        return Monotonicity.DECREASING
    return Monotonicity.CONSTANT


def alpha_monotonicity_report(u: UtilityFunction, spec: AlphaSpec, grid_points: int) -> Monotonicity:
    """Classify alpha over an even grid by the signs of its successive steps."""
    if grid_points < 3:
        raise ValueError("grid_points must be >= 3")
    return classify_steps(alpha(u, spec, spec.grid(grid_points)))


_FAMILIES = {
    "log_shifted": LogShifted,
    "normalized_log": NormalizedLog,
    "linear": Linear,
    "power": Power,
    "exponential": Exponential,
}
_ALIASES = {"log": "log_shifted", "ln": "log_shifted", "phi": "normalized_log", "exp": "exponential"}


def make_utility(family: str, params: dict | None = None, domain_max: float | None = None) -> UtilityFunction:
    """Construct a utility from a family name and keyword parameters."""
    params = dict(params or {})
    family = _ALIASES.get(family, family)
    if family == "tabulated":
        if "csv" in params:
            return load_tabulated_csv(params["csv"])
        pts = params.get("points")
        if not pts:
            raise ValueError("tabulated utility needs 'points' or 'csv'")
        return Tabulated(tuple(float(p[0]) for p in pts), tuple(float(p[1]) for p in pts))
    try:
        cls = _FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown utility family {family!r}") from None
    if family == "normalized_log":
        if domain_max is not None:
            raise ValueError("normalized_log fixes its own domain_max = scale * n")
        return cls(**params)
    if domain_max is not None:
        params["domain_max"] = float(domain_max)
    return cls(**params)
