"""
Strategy scheduling.

The policy table (strategy_state/states/schedules.json) is an ordered list
of rules; the first rule whose `when` conditions all match the problem
features supplies the strategies. Each strategy gets `share` of the budget.
"""
# builtins
from dataclasses import dataclass, field, replace
import logging
from typing import Any, Dict, List, Optional, Tuple

# local
from hol_prover.basis.unification import ExtFlags
from hol_prover.calculus import RuleFlags
from hol_prover.common.config import (
    DEFAULT_AGE_WEIGHT_RATIO, DEFAULT_DISPATCH_PERIOD, DEFAULT_MAX_UNIFIERS, DEFAULT_PS_MODE,
    DEFAULT_TRANSLATION, DEFAULT_UNIFICATION_DEPTH,
)
from hol_prover.search.features import ProblemFeatures
from hol_prover.translation.intermediate import normalize_mode
from strategy_state.state_manager import StrategyStateManager


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Strategy:
    '''
    One named flag bundle with its time slice.
    Args:
        name: str
        time_slice: float - seconds.
        choice, leib_eq, andr_eq: bool - rule toggles.
        ps_mode: int - primitive substitution mode.
        unification_depth: int - initial preunification depth.
        translation: str - first-order translation mode for backend calls.
        dispatch_period: int - given-clause iterations between backend calls, 0 disables them.
        dispatch_at_start: bool - also call the backend before the first iteration.
        age_weight_ratio: Tuple[int, int] - clause selection ratio.
    '''
    name: str
    time_slice: float
    choice: bool = True
    leib_eq: bool = True
    andr_eq: bool = True
    ps_mode: int = DEFAULT_PS_MODE
    unification_depth: int = DEFAULT_UNIFICATION_DEPTH
    translation: str = DEFAULT_TRANSLATION
    dispatch_period: int = DEFAULT_DISPATCH_PERIOD
    dispatch_at_start: bool = False
    age_weight_ratio: Tuple[int, int] = DEFAULT_AGE_WEIGHT_RATIO
    leibniz_expand: bool = True

    def __post_init__(self) -> None:
        if self.ps_mode not in (0, 1, 2):
            raise ValueError(f"strategy {self.name}: ps mode must be 0, 1 or 2")
        if self.unification_depth < 1:
            raise ValueError(f"strategy {self.name}: unification depth must be positive")
        object.__setattr__(self, 'translation', normalize_mode(self.translation))

    def flags(self) -> RuleFlags:
        return RuleFlags(
            choice=self.choice,
            leib_eq=self.leib_eq,
            andr_eq=self.andr_eq,
            ps_mode=self.ps_mode,
            leibniz_expand=self.leibniz_expand,
            ext=ExtFlags(max_depth=self.unification_depth, max_solutions=DEFAULT_MAX_UNIFIERS),
        )

    @classmethod
    def from_dict(cls, entry: Dict[str, Any], budget: float) -> "Strategy":
        share: float = float(entry.get("share", 1.0))
        return cls(
            name=entry["name"],
            time_slice=share * budget,
            choice=bool(entry.get("choice", True)),
            leib_eq=bool(entry.get("leib_eq", True)),
            andr_eq=bool(entry.get("andr_eq", True)),
            ps_mode=int(entry.get("ps_mode", DEFAULT_PS_MODE)),
            unification_depth=int(entry.get("unification_depth", DEFAULT_UNIFICATION_DEPTH)),
            translation=entry.get("translation", DEFAULT_TRANSLATION),
            dispatch_period=int(entry.get("dispatch_period", DEFAULT_DISPATCH_PERIOD)),
            dispatch_at_start=bool(entry.get("dispatch_at_start", False)),
            age_weight_ratio=tuple(entry.get("age_weight_ratio", DEFAULT_AGE_WEIGHT_RATIO)),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "time_slice": round(self.time_slice, 3),
            "choice": self.choice,
            "leib_eq": self.leib_eq,
            "andr_eq": self.andr_eq,
            "ps_mode": self.ps_mode,
            "unification_depth": self.unification_depth,
            "translation": self.translation,
            "dispatch_period": self.dispatch_period,
            "dispatch_at_start": self.dispatch_at_start,
        }


@dataclass
class Schedule:
    name: str
    budget: float
    strategies: List[Strategy] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.strategies:
            raise ValueError(f"schedule {self.name} has no strategy")
        # shares that round above 1 are cut back to the budget
        if self.total_slice() > self.budget + 1e-9:
            scale: float = self.budget / self.total_slice()
            self.strategies = [replace(s, time_slice=s.time_slice * scale) for s in self.strategies]

    def total_slice(self) -> float:
        return sum(s.time_slice for s in self.strategies)

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "budget": self.budget, "strategies": [s.to_dict() for s in self.strategies]}


@dataclass
class ScheduleRule:
    name: str
    when: Dict[str, Any]
    strategies: List[Dict[str, Any]]

    def matches(self, features: ProblemFeatures) -> bool:
        values: Dict[str, Any] = features.to_dict()
        for key, expected in self.when.items():
            if key not in values:
                raise KeyError(f"schedule rule {self.name} tests unknown feature {key}")
            if values[key] != expected:
                return False
        return True


def load_schedule_rules(entries: Optional[List[Dict[str, Any]]] = None) -> List[ScheduleRule]:
    '''
    Policy rules from JSON entries, read from the schedules state file when not given.
    '''
    if entries is None:
        entries = StrategyStateManager().get_state_list("schedules")
    return [ScheduleRule(e["name"], dict(e["when"]), list(e["strategies"])) for e in entries]


def select_schedule(features: ProblemFeatures, budget: float,
                    rules: Optional[List[ScheduleRule]] = None) -> Schedule:
    '''
    Deterministic schedule for a problem.
    Args:
        features: ProblemFeatures
        budget: float - total seconds, must be positive.
        rules: List[ScheduleRule] - policy table, loaded from the state file when None.
    Returns:
        Schedule - the strategies of the first matching rule.
    Raises:
        ValueError: budget is not positive or no rule matches.
    '''
    if budget <= 0:
        raise ValueError("budget must be positive")
    if rules is None:
        rules = load_schedule_rules()
    for rule in rules:
        if rule.matches(features):
            schedule: Schedule = Schedule(
                rule.name, budget, [Strategy.from_dict(entry, budget) for entry in rule.strategies],
            )
            logger.info(f"selected schedule {rule.name}: {[s.name for s in schedule.strategies]}")
            return schedule
    raise ValueError("no schedule rule matches; the policy table needs a catch-all rule")


def apply_overrides(schedule: Schedule, choice: Optional[bool] = None, leib_eq: Optional[bool] = None,
                    andr_eq: Optional[bool] = None, ps_mode: Optional[int] = None,
                    translation: Optional[str] = None) -> Schedule:
    '''
    Command line switches win over every strategy of the schedule.
    '''
    changes: Dict[str, Any] = {}
    if choice is not None:
        changes["choice"] = choice
    if leib_eq is not None:
        changes["leib_eq"] = leib_eq
    if andr_eq is not None:
        changes["andr_eq"] = andr_eq
    if ps_mode is not None:
        changes["ps_mode"] = ps_mode
    if translation is not None:
        changes["translation"] = translation
    if not changes:
        return schedule
    return Schedule(schedule.name, schedule.budget, [replace(s, **changes) for s in schedule.strategies])
