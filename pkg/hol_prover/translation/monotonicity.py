"""
Monotonicity analysis by SAT encoding.

A type is monotone when every model can be extended by fresh domain
elements. New elements copy an existing one for every function symbol;
each predicate is extended either true or false on them (one selector
variable per predicate). A variable X of the type that occurs directly
as an argument of a predicate literal, or naked in a positive equation,
must then be guarded in its clause: some literal must become true on
the new elements. The type is monotone iff the resulting CNF is satisfiable.
"""
# builtins
import logging
from typing import Dict, Iterable, List, Optional, Set

# local
from hol_prover.basis.types import Type, BaseType, OMICRON, IOTA, base_types_of
from hol_prover.basis.terms import Term, Const, FreeVar, spine, is_logical, constants_of
from hol_prover.calculus.clauses import Clause
from hol_prover.common.config import SAT_DECISION_BUDGET
from hol_prover.translation.sat_solver import Cnf, SatResult, sat_solve


logger = logging.getLogger(__name__)


class _Selectors:
    '''
    Dense SAT variable ids for "predicate p is extended true".
    '''
    def __init__(self) -> None:
        self.ids: Dict[str, int] = {}

    def get(self, predicate: str) -> int:
        if predicate not in self.ids:
            self.ids[predicate] = len(self.ids) + 1
        return self.ids[predicate]


def _predicate_occurrences(atom: Term, var: FreeVar) -> Optional[str]:
    '''
    Name of the predicate if var is a direct argument of atom's non-logical head.
    '''
    head, args = spine(atom)
    if isinstance(head, Const) and not is_logical(head) and var in args:
        return head.name
    return None


def _naked_in_positive_equation(clause: Clause, var: FreeVar) -> bool:
    for lit in clause.proper_literals:
        sides = lit.sides
        if lit.positive and sides is not None and var in sides:
            return True
    return False


def encode_type(clauses: Iterable[Clause], ty: Type, selectors: _Selectors) -> Cnf:
    '''
    SAT constraints under which ty is monotone.
    '''
    cnf: Cnf = []
    for clause in clauses:
        for name, var_type in clause.free_var_types().items():
            if var_type != ty:
                continue
            var: FreeVar = FreeVar(name, var_type)
            guards: List[int] = []
            occurs: bool = False
            for lit in clause.proper_literals:
                predicate: Optional[str] = _predicate_occurrences(lit.atom, var)
                if predicate is None:
                    continue
                occurs = True
                selector: int = selectors.get(predicate)
                guards.append(selector if lit.positive else -selector)
            if occurs or _naked_in_positive_equation(clause, var):
                cnf.append(sorted(set(guards)))
    return cnf


def candidate_types(clauses: Iterable[Clause]) -> List[Type]:
    '''
    Base types other than o of the variables and constants of the clauses.
    '''
    found: List[Type] = []
    for clause in clauses:
        typed: List[Type] = list(clause.free_var_types().values())
        for lit in clause.literals:
            typed.extend(constants_of(lit.atom).values())
        for ty in typed:
            for base in base_types_of(ty):
                if base != OMICRON and base not in found:
                    found.append(base)
    return found


def monotonicity_analysis(clauses: List[Clause], types: Optional[List[Type]] = None,
                          budget: int = SAT_DECISION_BUDGET) -> Set[Type]:
    '''
    Types whose guards can be erased.
    Args:
        clauses: List[Clause] - the clause set to be translated.
        types: List[Type] - base types to decide; defaults to the base types of
            the clause variables (and iota for an empty set).
        budget: int - SAT decision budget; running out counts as not monotone.
    Returns:
        Set[Type] - the monotone types. o and function types are never reported.
    '''
    if types is None:
        types = candidate_types(clauses) or [IOTA]
    monotone: Set[Type] = set()
    for ty in types:
        if not isinstance(ty, BaseType) or ty == OMICRON:
            continue
        cnf: Cnf = encode_type(clauses, ty, _Selectors())
        if any(not clause for clause in cnf):
            logger.debug(f"type {ty} has an unguardable variable")
            continue
        result: SatResult = sat_solve(cnf, budget)
        if result.satisfiable:
            monotone.add(ty)
        elif result.satisfiable is None:
            logger.info(f"monotonicity of {ty} undecided within budget, keeping guards")
    return monotone
