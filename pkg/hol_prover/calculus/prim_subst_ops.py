"""
Primitive substitution: guess the logical structure of flexible heads.
"""
# builtins
import logging
from typing import Dict, List, Optional

# local
from hol_prover.basis.types import Type, OMICRON, result_type
from hol_prover.basis.terms import (
    Term, Const, FreeVar, Substitution, NOT, AND, OR, FORALL_NAME, EXISTS_NAME,
    equality_const, quantifier_const, head_of,
)
from hol_prover.basis.unification import general_binding
from hol_prover.calculus import InferenceRule, RuleContext, RuleResult
from hol_prover.calculus.clauses import Clause, Origin, instantiate_clause


logger = logging.getLogger(__name__)

PRIM_SUBST_RULE = "prim_subst"


def logical_heads(mode: int, types: List[Type]) -> List[Const]:
    '''
    Heads imitated by primitive substitution.
    Args:
        mode: int - 0 disables, 1 gives negation, conjunction, disjunction and
            equality, 2 adds the quantifiers.
        types: List[Type] - base types of the problem.
    '''
    if mode <= 0:
        return []
    heads: List[Const] = [NOT, AND, OR]
    heads.extend(equality_const(alpha) for alpha in types)
    if mode >= 2:
        for alpha in types:
            heads.append(quantifier_const(FORALL_NAME, alpha))
            heads.append(quantifier_const(EXISTS_NAME, alpha))
    return heads


def flex_heads(clause: Clause) -> List[FreeVar]:
    found: Dict[str, FreeVar] = {}
    for lit in clause.proper_literals:
        head: Term = head_of(lit.atom)
        if isinstance(head, FreeVar) and result_type(head.var_type) == OMICRON:
            found.setdefault(head.name, head)
    return list(found.values())


def prim_subst(clause: Clause, ctx: RuleContext, mode: Optional[int] = None) -> RuleResult:
    '''
    One instance of clause per flexible literal head and logical head,
    binding the head to the general binding of that logical constant.
    '''
    result: RuleResult = RuleResult(PRIM_SUBST_RULE)
    mode = ctx.flags.ps_mode if mode is None else mode
    heads: List[Const] = logical_heads(mode, ctx.problem_types)
    if not heads:
        return result
    for var in flex_heads(clause):
        for head in heads:
            binding: Term = general_binding(var.var_type, head, ctx.supply)
            subst: Substitution = Substitution({var: binding})
            result.new_clauses.append(instantiate_clause(
                clause, subst, Origin(PRIM_SUBST_RULE, (clause.id,), repr(subst)), ctx.supply,
            ))
    return result


class PrimSubstRule(InferenceRule):
    name = PRIM_SUBST_RULE

    def enabled(self, ctx: RuleContext) -> bool:
        return ctx.flags.ps_mode > 0

    def apply(self, premises: List[Clause], ctx: RuleContext) -> RuleResult:
        return prim_subst(premises[0], ctx)
