"""
Simplification and subsumption.
"""
# builtins
import logging
from typing import Dict, List, Optional, Tuple

# local
from hol_prover.basis.terms import Term, TRUE, FALSE
from hol_prover.basis.unification import match_term
from hol_prover.calculus.clauses import Clause, Literal


logger = logging.getLogger(__name__)


def _is_trivial_equation(lit: Literal) -> bool:
    sides = lit.sides
    return sides is not None and sides[0] == sides[1]


def is_tautology(clause: Clause) -> bool:
    '''
    True if the clause contains [t = t]^tt, [$true]^tt, [$false]^ff or a
    complementary pair of literals.
    '''
    seen: Dict[Term, bool] = {}
    for lit in clause.proper_literals:
        if lit.positive and (_is_trivial_equation(lit) or lit.atom == TRUE):
            return True
        if not lit.positive and lit.atom == FALSE:
            return True
        other: Optional[bool] = seen.get(lit.atom)
        if other is not None and other != lit.positive:
            return True
        seen[lit.atom] = lit.positive
    return False


def simplify(clause: Clause) -> Optional[Clause]:
    '''
    Delete trivially false literals ([t = t]^ff, solved constraints,
    [$false]^tt, [$true]^ff) and duplicate literals.
    Returns:
        Optional[Clause] - None if the clause is a tautology, the clause itself
        if nothing changed, otherwise a copy with the same id and origin.
    '''
    if is_tautology(clause):
        return None
    kept: List[Literal] = []
    for lit in clause.literals:
        if not lit.positive and _is_trivial_equation(lit):
            continue
        if (lit.positive and lit.atom == FALSE) or (not lit.positive and lit.atom == TRUE and not lit.constraint):
            continue
        if lit in kept:
            continue
        kept.append(lit)
    if len(kept) == len(clause.literals):
        return clause
    return Clause(clause.id, tuple(kept), clause.origin, clause.conjecture)


# Subsumption
def _literal_matches(pattern: Literal, target: Literal, bindings: Dict[str, Term]) -> List[Dict[str, Term]]:
    if pattern.positive != target.positive or pattern.constraint != target.constraint:
        return []
    found: List[Dict[str, Term]] = []
    extended: Optional[Dict[str, Term]] = match_term(pattern.atom, target.atom, bindings)
    if extended is not None:
        found.append(extended)
    pattern_sides: Optional[Tuple[Term, Term]] = pattern.sides
    target_sides: Optional[Tuple[Term, Term]] = target.sides
    if pattern_sides is not None and target_sides is not None:
        flipped: Optional[Dict[str, Term]] = match_term(pattern_sides[0], target_sides[1], bindings)
        if flipped is not None:
            flipped = match_term(pattern_sides[1], target_sides[0], flipped)
        if flipped is not None and flipped != extended:
            found.append(flipped)
    return found


def subsumes(general: Clause, specific: Clause) -> bool:
    '''
    Does a substitution map the literals of general injectively onto
    literals of specific (same polarity, equations up to symmetry)?
    Matching is syntactic, variables of specific act as constants.
    '''
    if len(general.literals) > len(specific.literals):
        return False
    return _subsumes(list(general.literals), list(specific.literals), [False] * len(specific.literals), {})


def _subsumes(pending: List[Literal], targets: List[Literal], used: List[bool],
              bindings: Dict[str, Term]) -> bool:
    if not pending:
        return True
    lit: Literal = pending[0]
    for index, target in enumerate(targets):
        if used[index]:
            continue
        for extended in _literal_matches(lit, target, bindings):
            used[index] = True
            if _subsumes(pending[1:], targets, used, extended):
                return True
            used[index] = False
    return False


def forward_subsumed(clause: Clause, others: List[Clause]) -> Optional[Clause]:
    for other in others:
        if other.id != clause.id and subsumes(other, clause):
            return other
    return None


def backward_subsumed(clause: Clause, others: List[Clause]) -> List[Clause]:
    return [other for other in others if other.id != clause.id and subsumes(clause, other)]
