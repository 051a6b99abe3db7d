"""
Small DPLL solver for the monotonicity encoding.
Clauses are lists of non-zero integers, -v is the negation of v.
"""
# builtins
from dataclasses import dataclass, field
import logging
from typing import Dict, List, Optional

# local
from hol_prover.common.config import SAT_DECISION_BUDGET


logger = logging.getLogger(__name__)

Cnf = List[List[int]]


@dataclass
class SatResult:
    '''
    satisfiable is None when the decision budget ran out.
    '''
    satisfiable: Optional[bool]
    model: Dict[int, bool] = field(default_factory=dict)
    decisions: int = 0


class _BudgetExceeded(Exception):
    pass


def _force(cnf: Cnf, lit: int) -> Cnf:
    forced: Cnf = []
    for clause in cnf:
        if lit in clause:
            continue
        forced.append([other for other in clause if other != -lit])
    return forced


def _propagate(cnf: Cnf, model: Dict[int, bool]) -> Cnf:
    while True:
        unit: Optional[int] = next((clause[0] for clause in cnf if len(clause) == 1), None)
        if unit is None:
            return cnf
        model[abs(unit)] = unit > 0
        cnf = _force(cnf, unit)


class DpllSolver:
    '''
    Unit propagation, pure literal elimination and chronological backtracking.
    Args:
        budget: int - maximum number of branching decisions.
    '''
    def __init__(self, budget: int = SAT_DECISION_BUDGET) -> None:
        self.budget: int = budget
        self.decisions: int = 0

    def solve(self, cnf: Cnf) -> SatResult:
        self.decisions = 0
        model: Dict[int, bool] = {}
        try:
            found: Optional[Dict[int, bool]] = self._dpll([list(c) for c in cnf], model)
        except _BudgetExceeded:
            logger.warning(f"SAT decision budget of {self.budget} exhausted")
            return SatResult(None, {}, self.decisions)
        if found is None:
            return SatResult(False, {}, self.decisions)
        variables = {abs(lit) for clause in cnf for lit in clause}
        for var in variables:
            found.setdefault(var, True)
        return SatResult(True, found, self.decisions)

    def _dpll(self, cnf: Cnf, model: Dict[int, bool]) -> Optional[Dict[int, bool]]:
        model = dict(model)
        cnf = _propagate(cnf, model)
        if any(not clause for clause in cnf):
            return None
        literals = {lit for clause in cnf for lit in clause}
        for lit in literals:
            if -lit not in literals:
                model[abs(lit)] = lit > 0
                cnf = _force(cnf, lit)
        if not cnf:
            return model
        if self.decisions >= self.budget:
            raise _BudgetExceeded()
        self.decisions += 1
        var: int = min(abs(lit) for clause in cnf for lit in clause)
        for lit in (var, -var):
            found = self._dpll(_force(cnf, lit), {**model, var: lit > 0})
            if found is not None:
                return found
        return None


def sat_solve(cnf: Cnf, budget: int = SAT_DECISION_BUDGET) -> SatResult:
    '''
    Decide a CNF instance.
    Args:
        cnf: List[List[int]] - clauses over non-zero integer literals.
        budget: int - decision budget; exceeding it gives an unknown result.
    Returns:
        SatResult - a model on SAT, satisfiable False on UNSAT.
    '''
    for clause in cnf:
        if any(lit == 0 for lit in clause):
            raise ValueError("0 is not a literal")
    return DpllSolver(budget).solve(cnf)
