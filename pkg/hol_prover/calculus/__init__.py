"""
Calculus module
Contains the rule base class, rule results and the context every rule runs in.
"""
# builtins
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
import logging
from typing import Any, Dict, List, Optional

# local
from hol_prover.basis.types import Type, IOTA
from hol_prover.basis.terms import Const, FreshSupply
from hol_prover.basis.unification import ExtFlags
from hol_prover.calculus.clauses import Clause


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RuleFlags:
    '''
    Rule toggles of one strategy.
    Args:
        choice: bool - detectChoiceFn and choice (off with -nuc).
        leib_eq: bool - LeibEQ (off with -nrleq).
        andr_eq: bool - AndrEQ (off with -nraeq).
        ps_mode: int - primitive substitution mode 0, 1 or 2.
        leibniz_expand: bool - add the Leibniz readings of positive base-type equations.
        ext: ExtFlags - unification switches.
    '''
    choice: bool = True
    leib_eq: bool = True
    andr_eq: bool = True
    ps_mode: int = 2
    leibniz_expand: bool = True
    ext: ExtFlags = field(default_factory=ExtFlags)


@dataclass
class RuleResult:
    '''
    Outcome of one rule application.
    '''
    rule: str
    new_clauses: List[Clause] = field(default_factory=list)
    removed: List[int] = field(default_factory=list)
    register_updates: List[Const] = field(default_factory=list)
    stalled: List[Clause] = field(default_factory=list)
    throttled: bool = False
    truncated: bool = False

    @property
    def applicable(self) -> bool:
        return bool(self.new_clauses or self.removed or self.register_updates)

    def merge(self, other: "RuleResult") -> "RuleResult":
        self.new_clauses.extend(other.new_clauses)
        self.removed.extend(other.removed)
        self.register_updates.extend(other.register_updates)
        self.stalled.extend(other.stalled)
        self.throttled = self.throttled or other.throttled
        self.truncated = self.truncated or other.truncated
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rule": self.rule,
            "new_clauses": [c.id for c in self.new_clauses],
            "removed": list(self.removed),
            "register_updates": [c.name for c in self.register_updates],
        }


class RuleContext:
    '''
    Everything a rule may consult or update besides its premises:
    the fresh-name supply, the flags, the choice register and the types
    occurring in the problem. deadline is the time.monotonic() value ending
    the current search slot, None outside of one.
    '''
    def __init__(self, supply: Optional[FreshSupply] = None, flags: Optional[RuleFlags] = None,
                 register: Optional["ChoiceRegister"] = None, problem_types: Optional[List[Type]] = None) -> None:
        from hol_prover.calculus.choice_ops import ChoiceRegister
        self.supply: FreshSupply = supply or FreshSupply()
        self.flags: RuleFlags = flags or RuleFlags()
        self.register: ChoiceRegister = register or ChoiceRegister()
        self.problem_types: List[Type] = problem_types or [IOTA]
        self.deadline: Optional[float] = None

    @property
    def ext(self) -> ExtFlags:
        return self.flags.ext


class InferenceRule(ABC):
    '''
    Abstract base class for calculus rules.
    Every rule has a trace name, an arity and a flag that may disable it.
    '''
    name: str = ''
    arity: int = 1

    def enabled(self, ctx: RuleContext) -> bool:
        return True

    @abstractmethod
    def apply(self, premises: List[Clause], ctx: RuleContext) -> RuleResult:
        pass

    def __call__(self, premises: List[Clause], ctx: RuleContext) -> RuleResult:
        if len(premises) != self.arity:
            raise ValueError(f"{self.name} takes {self.arity} premise(s), got {len(premises)}")
        if not self.enabled(ctx):
            return RuleResult(self.name)
        return self.apply(premises, ctx)
