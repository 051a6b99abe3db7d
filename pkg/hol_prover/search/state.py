"""
Prover state: passive queue, active set, choice register and the rule trace.
"""
# builtins
from dataclasses import dataclass, replace
import heapq
import logging
from typing import Any, Dict, Iterator, List, Optional, Set, Tuple

# local
from hol_prover.basis.types import Type, IOTA, choice_domain
from hol_prover.basis.terms import Const, FreeVar, BoundVar, FreshSupply, subterms
from hol_prover.calculus import RuleContext, RuleFlags
from hol_prover.calculus.choice_ops import ChoiceRegister
from hol_prover.calculus.clauses import Clause
from hol_prover.common.config import DEFAULT_AGE_WEIGHT_RATIO


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TraceEntry:
    rule: str
    premises: Tuple[int, ...]
    conclusions: Tuple[int, ...]

    def __str__(self) -> str:
        premises: str = ','.join(str(p) for p in self.premises)
        conclusions: str = ','.join(str(c) for c in self.conclusions) or '-'
        return f"{self.rule}({premises}) -> {conclusions}"

    def to_dict(self) -> Dict[str, Any]:
        return {"rule": self.rule, "premises": list(self.premises), "conclusions": list(self.conclusions)}


class PassiveQueue:
    '''
    Passive clauses, selected alternately by age (lowest id) and by weight
    (fewest symbols, ties by id). Each cycle makes `age` age picks followed
    by `weight` weight picks.
    Args:
        ratio: Tuple[int, int] - (age picks, weight picks) per cycle.
    '''
    def __init__(self, ratio: Tuple[int, int] = DEFAULT_AGE_WEIGHT_RATIO) -> None:
        age, weight = ratio
        if age < 0 or weight < 0 or age + weight == 0:
            raise ValueError(f"invalid age/weight ratio {ratio}")
        self.ratio: Tuple[int, int] = (age, weight)
        self.members: Dict[int, Clause] = {}
        self._by_age: List[int] = []
        self._by_weight: List[Tuple[int, int]] = []
        self.picks: int = 0

    def __len__(self) -> int:
        return len(self.members)

    def __bool__(self) -> bool:
        return bool(self.members)

    def __contains__(self, clause_id: int) -> bool:
        return clause_id in self.members

    def __iter__(self) -> Iterator[Clause]:
        return iter(list(self.members.values()))

    def push(self, clause: Clause) -> None:
        self.members[clause.id] = clause
        heapq.heappush(self._by_age, clause.id)
        heapq.heappush(self._by_weight, (clause.weight, clause.id))

    def remove(self, clause_id: int) -> Optional[Clause]:
        return self.members.pop(clause_id, None)

    def _next_is_age(self) -> bool:
        age, weight = self.ratio
        return self.picks % (age + weight) < age

    def pop(self) -> Clause:
        '''
        Raises:
            IndexError: the queue is empty.
        '''
        if not self.members:
            raise IndexError("pop from an empty passive queue")
        use_age: bool = self._next_is_age()
        self.picks += 1
        while True:
            if use_age:
                clause_id: int = heapq.heappop(self._by_age)
            else:
                _, clause_id = heapq.heappop(self._by_weight)
            clause: Optional[Clause] = self.members.pop(clause_id, None)
            if clause is not None:
                return clause


def select_clause(queue: PassiveQueue) -> Clause:
    return queue.pop()


def has_choice_terms(clauses: List[Clause]) -> bool:
    '''
    Does some constant or variable of the clauses have a choice type (a -> o) -> a.
    '''
    for clause in clauses:
        for lit in clause.literals:
            for sub, _ in subterms(lit.atom):
                if isinstance(sub, (Const, FreeVar, BoundVar)) and choice_domain(sub.ty) is not None:
                    return True
    return False


class ProverState:
    '''
    Everything one strategy slot works on. Clause ids are unique because
    every clause is minted by the state's FreshSupply.
    Args:
        flags: RuleFlags - rule toggles of the strategy.
        problem_types: List[Type] - base types of the problem.
        ratio: Tuple[int, int] - clause selection ratio.
    '''
    def __init__(self, flags: Optional[RuleFlags] = None, problem_types: Optional[List[Type]] = None,
                 ratio: Tuple[int, int] = DEFAULT_AGE_WEIGHT_RATIO, supply: Optional[FreshSupply] = None) -> None:
        self.supply: FreshSupply = supply or FreshSupply()
        self.register: ChoiceRegister = ChoiceRegister()
        self.ctx: RuleContext = RuleContext(self.supply, flags or RuleFlags(), self.register,
                                            problem_types or [IOTA])
        self.passive: PassiveQueue = PassiveQueue(ratio)
        self.active: Dict[int, Clause] = {}
        self.clauses: Dict[int, Clause] = {}
        self.stalled: List[Clause] = []
        self.trace: List[TraceEntry] = []
        self.incomplete: Set[str] = set()
        self.iterations: int = 0
        self.refutation: Optional[Clause] = None
        self.has_conjecture: bool = False
        self.choice_terms: bool = False
        self.input_ids: List[int] = []

    @property
    def flags(self) -> RuleFlags:
        return self.ctx.flags

    @property
    def depth(self) -> int:
        return self.ctx.flags.ext.max_depth

    def set_depth(self, depth: int) -> None:
        self.ctx.flags = replace(self.ctx.flags, ext=replace(self.ctx.flags.ext, max_depth=depth))
        logger.info(f"preunification depth set to {depth}")

    def set_flags(self, flags: RuleFlags) -> None:
        self.ctx.flags = flags

    def remember(self, clause: Clause) -> None:
        '''
        Keep clause for proof extraction. Every clause a rule derived from
        stays remembered; forget drops the ones discarded before that.
        '''
        self.clauses.setdefault(clause.id, clause)

    def forget(self, clause_id: int) -> None:
        self.clauses.pop(clause_id, None)

    def record(self, rule: str, premises: Tuple[int, ...], conclusions: List[Clause]) -> None:
        self.trace.append(TraceEntry(rule, tuple(premises), tuple(c.id for c in conclusions)))

    def remove(self, clause_id: int) -> None:
        if self.passive.remove(clause_id) is None:
            self.active.pop(clause_id, None)

    def find(self, clause_id: int) -> Optional[Clause]:
        if clause_id in self.active:
            return self.active[clause_id]
        if clause_id in self.passive:
            return self.passive.members[clause_id]
        return None

    def current_clauses(self) -> List[Clause]:
        '''
        Active then passive clauses, by id.
        '''
        return sorted(list(self.active.values()) + list(self.passive), key=lambda c: c.id)

    def rules_used(self) -> Set[str]:
        return {entry.rule for entry in self.trace}

    def summary(self) -> Dict[str, Any]:
        return {
            "active": len(self.active),
            "passive": len(self.passive),
            "stalled": len(self.stalled),
            "iterations": self.iterations,
            "depth": self.depth,
            "incomplete": sorted(self.incomplete),
            "choice_functions": [c.name for c in self.register.symbols()],
        }
