"""
Resolution core: resolution and factorisation with unification constraints,
equality resolution and the unification rule that discharges constraints.
"""
# builtins
import logging
from typing import List, Tuple

# local
from hol_prover.basis.terms import Term, Const, FreeVar, Substitution, spine, mk_eq, replace_free
from hol_prover.basis.unification import PreunifyResult, Unifier, preunify
from hol_prover.calculus import InferenceRule, RuleContext, RuleResult
from hol_prover.calculus.clauses import (
    Clause, Literal, Origin, constraint_literal, make_clause, rename_clause,
)


logger = logging.getLogger(__name__)

RESOLVE_RULE = "resolve"
FACTORISE_RULE = "factorise"
UNIFY_RULE = "unify"
EQ_RES_RULE = "eq_res"


def compatible_heads(a: Term, b: Term) -> bool:
    '''
    Can the atoms a and b possibly unify: a flexible head or the same rigid head.
    '''
    head_a, args_a = spine(a)
    head_b, args_b = spine(b)
    if isinstance(head_a, FreeVar) or isinstance(head_b, FreeVar):
        return True
    return isinstance(head_a, Const) and head_a == head_b and len(args_a) == len(args_b)


def _orientations(first: Literal, second: Literal) -> List[Tuple[Term, Term]]:
    '''
    Constraint pairs for unifying two atoms; equations are also tried flipped.
    '''
    pairs: List[Tuple[Term, Term]] = [(first.atom, second.atom)]
    sides_first = first.sides
    sides_second = second.sides
    if sides_first is not None and sides_second is not None and sides_first[0].ty == sides_second[0].ty:
        flipped: Term = mk_eq(sides_second[1], sides_second[0])
        if flipped != second.atom:
            pairs.append((first.atom, flipped))
    return pairs


def resolve(c1: Clause, c2: Clause, ctx: RuleContext) -> RuleResult:
    '''
    Resolve every [A]^p in c1 against every [B]^-p in c2: the remainders
    plus the constraint [A =? B]. c2 is renamed apart first.
    '''
    result: RuleResult = RuleResult(RESOLVE_RULE)
    renamed, _ = rename_clause(c2, ctx.supply)
    for i, first in enumerate(c1.literals):
        if first.constraint:
            continue
        for j, second in enumerate(renamed.literals):
            if second.constraint or second.positive == first.positive:
                continue
            if not compatible_heads(first.atom, second.atom):
                continue
            rest: List[Literal] = [lit for k, lit in enumerate(c1.literals) if k != i] + \
                [lit for k, lit in enumerate(renamed.literals) if k != j]
            for lhs, rhs in _orientations(first, second):
                result.new_clauses.append(make_clause(
                    rest + [constraint_literal(lhs, rhs)],
                    Origin(RESOLVE_RULE, (c1.id, c2.id)),
                    ctx.supply,
                    c1.conjecture or c2.conjecture,
                ))
    return result


def factorise(clause: Clause, ctx: RuleContext) -> RuleResult:
    '''
    Merge two same-polarity literals. Literals with the same flexible head
    are merged by equating their arguments ([a = b]^ff literals), all others
    through a unification constraint.
    '''
    result: RuleResult = RuleResult(FACTORISE_RULE)
    literals: Tuple[Literal, ...] = clause.literals
    origin: Origin = Origin(FACTORISE_RULE, (clause.id,))
    for i, first in enumerate(literals):
        if first.constraint:
            continue
        for j in range(i + 1, len(literals)):
            second: Literal = literals[j]
            if second.constraint or second.positive != first.positive:
                continue
            if not compatible_heads(first.atom, second.atom):
                continue
            rest: List[Literal] = [lit for k, lit in enumerate(literals) if k != j]
            head_first, args_first = spine(first.atom)
            head_second, args_second = spine(second.atom)
            if isinstance(head_first, FreeVar) and head_first == head_second and len(args_first) == len(args_second):
                equations: List[Literal] = [
                    Literal(mk_eq(a, b), False) for a, b in zip(args_first, args_second) if a != b
                ]
                result.new_clauses.append(make_clause(rest + equations, origin, ctx.supply, clause.conjecture))
                continue
            for lhs, rhs in _orientations(first, second):
                result.new_clauses.append(make_clause(
                    rest + [constraint_literal(lhs, rhs)], origin, ctx.supply, clause.conjecture,
                ))
    return result


def equality_resolution(clause: Clause, ctx: RuleContext) -> RuleResult:
    '''
    Turn each negative equation [s = t]^ff into the constraint [s =? t].
    '''
    result: RuleResult = RuleResult(EQ_RES_RULE)
    for index, lit in enumerate(clause.literals):
        if lit.positive or lit.constraint or not lit.is_equation:
            continue
        lhs, rhs = lit.sides
        rest: List[Literal] = [other for k, other in enumerate(clause.literals) if k != index]
        result.new_clauses.append(make_clause(
            rest + [constraint_literal(lhs, rhs)],
            Origin(EQ_RES_RULE, (clause.id,)),
            ctx.supply,
            clause.conjecture,
        ))
    return result


def solved_clause(clause: Clause, unifier: Unifier, ctx: RuleContext) -> Clause:
    '''
    The clause under a preunifier: proper literals instantiated, flex-flex
    pairs kept as constraints, deferred Boolean pairs as [s = t]^ff literals.
    '''
    subst: Substitution = unifier.substitution
    literals: List[Literal] = [lit.map(lambda atom: replace_free(atom, subst)) for lit in clause.proper_literals]
    literals.extend(constraint_literal(s, t) for s, t in unifier.flex_flex)
    literals.extend(Literal(mk_eq(s, t), False) for s, t in unifier.deferred)
    return make_clause(literals, Origin(UNIFY_RULE, (clause.id,), repr(subst)), ctx.supply, clause.conjecture)


def unify_constraints(clause: Clause, ctx: RuleContext) -> RuleResult:
    '''
    Discharge the constraint literals of clause with preunify.
    The clause is always replaced: by one clause per preunifier, by nothing
    on definite failure. When the depth bound cut the search the clause is
    also reported as stalled so a deeper search can revisit it. Stopping at
    max_solutions only marks the result truncated.
    '''
    result: RuleResult = RuleResult(UNIFY_RULE)
    constraints: List[Literal] = clause.constraints
    if not constraints or all(lit.is_flex_flex for lit in constraints):
        return result
    outcome: PreunifyResult = preunify([lit.sides for lit in constraints], ctx.ext, ctx.supply, ctx.deadline)
    result.removed.append(clause.id)
    for unifier in outcome.solutions:
        result.new_clauses.append(solved_clause(clause, unifier, ctx))
    result.truncated = outcome.truncated
    if outcome.depth_exhausted:
        result.stalled.append(clause)
        logger.debug(f"unification of clause {clause.id} stalled at depth {ctx.ext.max_depth}")
    return result


class ResolveRule(InferenceRule):
    name = RESOLVE_RULE
    arity = 2

    def apply(self, premises: List[Clause], ctx: RuleContext) -> RuleResult:
        return resolve(premises[0], premises[1], ctx)


class FactoriseRule(InferenceRule):
    name = FACTORISE_RULE

    def apply(self, premises: List[Clause], ctx: RuleContext) -> RuleResult:
        return factorise(premises[0], ctx)


class EqualityResolutionRule(InferenceRule):
    name = EQ_RES_RULE

    def apply(self, premises: List[Clause], ctx: RuleContext) -> RuleResult:
        return equality_resolution(premises[0], ctx)


class UnifyRule(InferenceRule):
    name = UNIFY_RULE

    def apply(self, premises: List[Clause], ctx: RuleContext) -> RuleResult:
        return unify_constraints(premises[0], ctx)
