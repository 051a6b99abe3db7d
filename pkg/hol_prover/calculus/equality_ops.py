"""
Equality rules: instantiate set variables with primitive equality.

LeibEQ reads [P A]^ff | [P B]^tt as the Leibniz definition of A = B,
AndrEQ reads [P A A]^ff as the Andrews definition of equality.
"""
# builtins
import logging
from typing import List, Optional, Set, Tuple

# local
from hol_prover.basis.types import OMICRON, arg_types, result_type
from hol_prover.basis.terms import (
    Term, FreeVar, BoundVar, Abs, Substitution, spine, mk_eq, free_vars,
)
from hol_prover.calculus import InferenceRule, RuleContext, RuleResult
from hol_prover.calculus.clauses import Clause, Origin, instantiate_clause
from hol_prover.calculus.simplification import simplify


logger = logging.getLogger(__name__)

LEIB_EQ_RULE = "LeibEQ"
ANDR_EQ_RULE = "AndrEQ"


def _unary_flex(atom: Term) -> Optional[Tuple[FreeVar, Term]]:
    head, args = spine(atom)
    if isinstance(head, FreeVar) and len(args) == 1:
        return head, args[0]
    return None


def leibniz_binding(predicate: FreeVar, lhs: Term) -> Term:
    '''
    lambda X. lhs = X at the domain type of predicate.
    '''
    domain = predicate.var_type.domain
    return Abs(domain, mk_eq(lhs, BoundVar(0, domain)), 'X')


def andrews_binding(predicate: FreeVar) -> Term:
    '''
    lambda X. lambda Y. X = Y at the argument type of predicate.
    '''
    alpha = arg_types(predicate.var_type)[0]
    return Abs(alpha, Abs(alpha, mk_eq(BoundVar(1, alpha), BoundVar(0, alpha)), 'Y'), 'X')


def _conclude(clause: Clause, var: FreeVar, binding: Term, rule: str, ctx: RuleContext) -> Optional[Clause]:
    subst: Substitution = Substitution({var: binding})
    instance: Clause = instantiate_clause(clause, subst, Origin(rule, (clause.id,), repr(subst)), ctx.supply)
    return simplify(instance)


def leib_eq(clause: Clause, ctx: RuleContext) -> RuleResult:
    '''
    For every [P A]^ff and [P B]^tt in clause with P a free variable not
    occurring in A, emit clause{lambda X. A = X / P}. The instance of
    [P B]^tt is [A = B]^tt; the instance of [P A]^ff is trivially false and
    simplified away.
    '''
    result: RuleResult = RuleResult(LEIB_EQ_RULE)
    literals = clause.proper_literals
    negatives: List[Tuple[FreeVar, Term]] = []
    positive_heads: Set[FreeVar] = set()
    for lit in literals:
        flex: Optional[Tuple[FreeVar, Term]] = _unary_flex(lit.atom)
        if flex is None:
            continue
        if lit.positive:
            positive_heads.add(flex[0])
        else:
            negatives.append(flex)
    seen: Set[Tuple[FreeVar, Term]] = set()
    for predicate, lhs in negatives:
        if predicate not in positive_heads or predicate.name in free_vars(lhs):
            continue
        if (predicate, lhs) in seen:
            continue
        seen.add((predicate, lhs))
        conclusion: Optional[Clause] = _conclude(clause, predicate, leibniz_binding(predicate, lhs),
                                                 LEIB_EQ_RULE, ctx)
        if conclusion is not None:
            result.new_clauses.append(conclusion)
    return result


def andr_eq(clause: Clause, ctx: RuleContext) -> RuleResult:
    '''
    For every [P A A]^ff in clause with P: a -> a -> o a free variable,
    emit clause{lambda X Y. X = Y / P} with the matched literal simplified
    away. A may mention P (Skolem terms of Andrews definitions do).
    '''
    result: RuleResult = RuleResult(ANDR_EQ_RULE)
    done: Set[FreeVar] = set()
    for lit in clause.proper_literals:
        if lit.positive:
            continue
        head, args = spine(lit.atom)
        if not isinstance(head, FreeVar) or len(args) != 2 or args[0] != args[1]:
            continue
        domains = arg_types(head.var_type)
        if len(domains) != 2 or domains[0] != domains[1] or result_type(head.var_type) != OMICRON:
            continue
        if head in done:
            continue
        done.add(head)
        conclusion: Optional[Clause] = _conclude(clause, head, andrews_binding(head), ANDR_EQ_RULE, ctx)
        if conclusion is not None:
            result.new_clauses.append(conclusion)
    return result


class LeibEqRule(InferenceRule):
    name = LEIB_EQ_RULE

    def enabled(self, ctx: RuleContext) -> bool:
        return ctx.flags.leib_eq

    def apply(self, premises: List[Clause], ctx: RuleContext) -> RuleResult:
        return leib_eq(premises[0], ctx)


class AndrEqRule(InferenceRule):
    name = ANDR_EQ_RULE

    def enabled(self, ctx: RuleContext) -> bool:
        return ctx.flags.andr_eq

    def apply(self, premises: List[Clause], ctx: RuleContext) -> RuleResult:
        return andr_eq(premises[0], ctx)
