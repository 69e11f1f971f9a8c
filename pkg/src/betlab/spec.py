"""JSON problem documents shared by all command-line subcommands.

Layout::

    {
      "stages": 2,
      "decisions": {"A": [{"prob": 1.0, "reward": 400}],
                    "B": [{"prob": 0.5, "reward": 0}, {"prob": 0.5, "reward": 1000}]},
      "utility": {"family": "log_shifted", "params": {}},
      "calibration_alpha": 0.7,
      "sweep": {"n_max": 60}
    }

``calibration_alpha`` and ``sweep`` are optional, as is ``utility.domain_max``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import BetlabError, ShapeMismatch, SpecError
from .lottery import Lottery, make_lottery
from .sequential import BetProblem, Decision
from .simultaneous import SimultaneousProblem
from .utility import UtilityFunction, make_utility

_TOP_KEYS = ("stages", "decisions", "utility", "calibration_alpha", "sweep")
_CANONICAL_FAMILY = {"log": "log_shifted", "ln": "log_shifted", "phi": "normalized_log", "exp": "exponential"}


@dataclass
class ProblemSpec:
    stages: int
    decisions: dict[str, Lottery]
    family: str
    params: dict = field(default_factory=dict)
    domain_max: float | None = None
    calibration_alpha: float | None = None
    n_max: int | None = None

    @classmethod
    def from_dict(cls, doc) -> "ProblemSpec":
        if not isinstance(doc, dict):
            raise SpecError("<root>: expected an object")
        unknown = set(doc) - set(_TOP_KEYS)
        if unknown:
            raise SpecError(f"<root>: unknown keys {sorted(unknown)}")
        for key in ("stages", "decisions", "utility"):
            if key not in doc:
                raise SpecError(f"{key}: missing")

        stages = doc["stages"]
        if not isinstance(stages, int) or isinstance(stages, bool) or stages < 1:
            raise SpecError(f"stages: expected a positive integer, got {stages!r}")

        raw_dec = doc["decisions"]
        if not isinstance(raw_dec, dict) or not raw_dec:
            raise SpecError("decisions: expected a non-empty object of name -> outcome list")
        decisions = {}
        for name, entries in raw_dec.items():
            decisions[name] = _parse_outcomes(f"decisions.{name}", entries)

        util = doc["utility"]
        if not isinstance(util, dict) or "family" not in util:
            raise SpecError("utility: expected an object with a 'family' field")
        extra = set(util) - {"family", "params", "domain_max"}
        if extra:
            raise SpecError(f"utility: unknown keys {sorted(extra)}")
        family = _CANONICAL_FAMILY.get(util["family"], util["family"])
        params = util.get("params") or {}
        if not isinstance(params, dict):
            raise SpecError("utility.params: expected an object")
        domain_max = util.get("domain_max")
        if domain_max is not None and not isinstance(domain_max, (int, float)):
            raise SpecError(f"utility.domain_max: expected a number, got {domain_max!r}")

        alpha = doc.get("calibration_alpha")
        if alpha is not None:
            if not isinstance(alpha, (int, float)) or not 0 < alpha < 1:
                raise SpecError(f"calibration_alpha: expected a number in (0, 1), got {alpha!r}")
            alpha = float(alpha)

        n_max = None
        if doc.get("sweep") is not None:
            sweep = doc["sweep"]
            if not isinstance(sweep, dict) or set(sweep) - {"n_max"}:
                raise SpecError("sweep: expected an object with only 'n_max'")
            n_max = sweep.get("n_max")
            if n_max is not None and (not isinstance(n_max, int) or n_max < 1):
                raise SpecError(f"sweep.n_max: expected a positive integer, got {n_max!r}")

        spec = cls(stages, decisions, family, dict(params), domain_max, alpha, n_max)
        spec.utility()  # surface bad utility parameters at load time
        return spec

    def to_dict(self) -> dict:
        util: dict = {"family": self.family, "params": self.params}
        if self.domain_max is not None:
            util["domain_max"] = self.domain_max
        doc: dict = {
            "stages": self.stages,
            "decisions": {
                name: [{"prob": p, "reward": m} for m, p in lot]
                for name, lot in self.decisions.items()
            },
            "utility": util,
        }
        if self.calibration_alpha is not None:
            doc["calibration_alpha"] = self.calibration_alpha
        if self.n_max is not None:
            doc["sweep"] = {"n_max": self.n_max}
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def utility(self, stages: int | None = None) -> UtilityFunction:
        params = dict(self.params)
        if self.family == "normalized_log":
            params.setdefault("n", stages or self.stages)
            params.setdefault("scale", max(lot.max for lot in self.decisions.values()))
        try:
            return make_utility(self.family, params, self.domain_max)
        except (TypeError, ValueError) as exc:
            raise SpecError(f"utility: {exc}") from None

    def bet_problem(self) -> BetProblem:
        return BetProblem(
            self.stages,
            tuple(Decision(name, lot) for name, lot in self.decisions.items()),
            self.utility(),
        )

    def ab_shape(self) -> tuple[str, str, int, int, float]:
        """``(name_A, name_B, sure_amount, prize, win_prob)`` or ShapeMismatch."""
        if len(self.decisions) != 2:
            raise ShapeMismatch(f"need exactly two decisions (sure amount, binary lottery), got {len(self.decisions)}")
        sure = [n for n, lot in self.decisions.items() if lot.is_point_mass()]
        risky = [n for n, lot in self.decisions.items() if not lot.is_point_mass()]
        if len(sure) != 1 or len(risky) != 1:
            raise ShapeMismatch("need one point-mass decision and one lottery decision")
        lot_b = self.decisions[risky[0]]
        if len(lot_b) != 2 or lot_b.min != 0:
            raise ShapeMismatch(f"decision {risky[0]!r} must pay 0 or a single prize")
        sure_amount = self.decisions[sure[0]].min
        if not 0 < sure_amount < lot_b.max:
            raise ShapeMismatch("sure amount must lie strictly between 0 and the prize")
        return sure[0], risky[0], sure_amount, lot_b.max, lot_b.prob(lot_b.max)

    def simultaneous_problem(self) -> SimultaneousProblem:
        _, _, sure, prize, w = self.ab_shape()
        return SimultaneousProblem(self.stages, self.utility(), sure, prize, w)


def _parse_outcomes(path: str, entries) -> Lottery:
    if not isinstance(entries, list) or not entries:
        raise SpecError(f"{path}: expected a non-empty list of {{prob, reward}} entries")
    pairs = []
    for i, entry in enumerate(entries):
        where = f"{path}[{i}]"
        if not isinstance(entry, dict) or set(entry) != {"prob", "reward"}:
            raise SpecError(f"{where}: expected exactly the keys 'prob' and 'reward'")
        prob, reward = entry["prob"], entry["reward"]
        if not isinstance(prob, (int, float)) or isinstance(prob, bool):
            raise SpecError(f"{where}.prob: expected a number, got {prob!r}")
        if not isinstance(reward, int) or isinstance(reward, bool):
            raise SpecError(f"{where}.reward: expected a whole cash amount, got {reward!r}")
        pairs.append((reward, float(prob)))
    try:
        return make_lottery(pairs)
    except (BetlabError, TypeError, ValueError) as exc:
        raise SpecError(f"{path}: {exc}") from None


def load_spec(path: str | Path) -> ProblemSpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecError(f"{path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    return ProblemSpec.from_dict(doc)
