"""
Clause normal form.

Formulas become clauses lazily: clausify only signs the input formulas,
expands definitions and Skolemizes them. Embedded connectives and
quantifiers are unfolded by normalize_clause, which the search loop also
runs on every clause a rule derives.
"""
# builtins
from dataclasses import replace
import logging
from typing import Dict, List, Optional, Tuple

# local
from hol_prover.basis.types import Type, FunType, OMICRON, IOTA, fun_type, base_types_of
from hol_prover.basis.terms import (
    Term, Const, FreeVar, BoundVar, Abs, App, FreshSupply,
    TRUE_NAME, FALSE_NAME, NOT_NAME, AND_NAME, OR_NAME, IMPLIES_NAME, EQUALS_NAME, EXISTS_NAME,
    spine, mk_app, mk_not, mk_and, mk_implies, mk_eq, dest_quant, shift, beta_normalize,
    free_var_list, is_logical, loose_bvar_types,
)
from hol_prover.calculus import RuleContext
from hol_prover.calculus.clauses import Clause, Literal, Origin, make_clause
from hol_prover.parser.thf_parser import Problem, AnnotatedFormula


logger = logging.getLogger(__name__)

CNF_RULE = "cnf"
BOOL_EXT_RULE = "bool_ext"
FUNC_EXT_RULE = "func_ext"
LEIBNIZ_RULE = "leibniz_expand"

# a literal that makes its clause true
TAUTOLOGY = None
MAX_DEFINITION_ROUNDS = 64


# Skolemization
def _open_predicate(predicate: Term, binder_type: Type) -> Term:
    if isinstance(predicate, Abs):
        return predicate.body
    return App(shift(predicate, 1), BoundVar(0, binder_type))


def skolem_term(predicate: Term, binder_type: Type, supply: FreshSupply) -> Term:
    '''
    A fresh Skolem symbol applied to the free variables of predicate and the
    bound variables it depends on (outermost binder first).
    '''
    variables: List[Term] = list(free_var_list(predicate))
    loose: Dict[int, Type] = loose_bvar_types(predicate)
    variables.extend(BoundVar(index, loose[index]) for index in sorted(loose, reverse=True))
    symbol: Const = supply.skolem(fun_type(*[v.ty for v in variables], binder_type))
    return mk_app(symbol, variables)


def skolemize(f: Term, positive: bool = True, supply: Optional[FreshSupply] = None) -> Term:
    '''
    Replace every essentially existential quantifier of f by a Skolem term
    over the universals in scope. Quantifiers inside equations and below
    non-logical symbols are left for the calculus.
    Args:
        f: Term - formula of type o.
        positive: bool - polarity f is asserted with (False for a negated conjecture).
        supply: FreshSupply - source of sk<N> symbols.
    Returns:
        Term - the Skolemized formula.
    '''
    supply = supply or FreshSupply()
    return beta_normalize(_skolemize(f, positive, supply))


def _skolemize(t: Term, positive: bool, supply: FreshSupply) -> Term:
    head, args = spine(t)
    if is_logical(head, NOT_NAME) and len(args) == 1:
        return mk_not(_skolemize(args[0], not positive, supply))
    if is_logical(head, AND_NAME) and len(args) == 2:
        return mk_app(head, [_skolemize(a, positive, supply) for a in args])
    if is_logical(head, OR_NAME) and len(args) == 2:
        return mk_app(head, [_skolemize(a, positive, supply) for a in args])
    if is_logical(head, IMPLIES_NAME) and len(args) == 2:
        return mk_implies(_skolemize(args[0], not positive, supply), _skolemize(args[1], positive, supply))
    quant = dest_quant(t)
    if quant is None:
        return t
    name, binder_type, predicate = quant
    if (name == EXISTS_NAME) == positive:
        witness: Term = skolem_term(predicate, binder_type, supply)
        return _skolemize(beta_normalize(App(predicate, witness)), positive, supply)
    body: Term = _skolemize(_open_predicate(predicate, binder_type), positive, supply)
    hint: str = predicate.name if isinstance(predicate, Abs) else 'X'
    return App(head, Abs(binder_type, body, hint))


# Lazy clausification
def _step(lit: Literal, ctx: RuleContext) -> Optional[Tuple[str, List[Optional[List[Literal]]]]]:
    '''
    One unfolding step on a literal: (rule, alternatives). Each alternative
    is the literal list replacing lit in one conclusion, or TAUTOLOGY.
    None when lit is already normal.
    '''
    if lit.constraint:
        return None
    pos: bool = lit.positive
    head, args = spine(lit.atom)
    if not isinstance(head, Const) or not is_logical(head):
        return None
    name: str = head.name
    if name == TRUE_NAME and not args:
        return CNF_RULE, [TAUTOLOGY if pos else []]
    if name == FALSE_NAME and not args:
        return CNF_RULE, [[] if pos else TAUTOLOGY]
    if name == NOT_NAME and len(args) == 1:
        return CNF_RULE, [[Literal(args[0], not pos)]]
    if name in (AND_NAME, OR_NAME, IMPLIES_NAME) and len(args) == 2:
        a, b = args
        left_pos: bool = pos if name != IMPLIES_NAME else not pos
        left: Literal = Literal(a, left_pos)
        right: Literal = Literal(b, pos)
        # disjunctive: one clause with both literals, conjunctive: one clause each
        disjunctive: bool = (name == AND_NAME and not pos) or (name != AND_NAME and pos)
        if disjunctive:
            return CNF_RULE, [[left, right]]
        return CNF_RULE, [[left], [right]]
    quant = dest_quant(lit.atom)
    if quant is not None:
        quant_name, binder_type, predicate = quant
        if (quant_name == EXISTS_NAME) == pos:
            witness: Term = skolem_term(predicate, binder_type, ctx.supply)
        else:
            hint: str = predicate.name if isinstance(predicate, Abs) and predicate.name else 'X'
            witness = ctx.supply.var(binder_type, hint)
        return CNF_RULE, [[Literal(beta_normalize(App(predicate, witness)), pos)]]
    if name == EQUALS_NAME and len(args) == 2:
        return _extensional_step(args[0], args[1], pos, ctx)
    return None


def _extensional_step(s: Term, t: Term, pos: bool,
                      ctx: RuleContext) -> Optional[Tuple[str, List[Optional[List[Literal]]]]]:
    ty: Type = s.ty
    if ty == OMICRON:
        if pos:
            return BOOL_EXT_RULE, [[Literal(s, True), Literal(t, False)], [Literal(s, False), Literal(t, True)]]
        if ctx.ext.boolean_ext:
            return BOOL_EXT_RULE, [[Literal(s, True), Literal(t, True)], [Literal(s, False), Literal(t, False)]]
        return None
    if isinstance(ty, FunType):
        if pos:
            witness: Term = ctx.supply.var(ty.domain, 'X')
        elif ctx.ext.functional_ext:
            witness = skolem_term(Abs(ty.domain, mk_eq(App(shift(s, 1), BoundVar(0, ty.domain)),
                                                       App(shift(t, 1), BoundVar(0, ty.domain)))),
                                  ty.domain, ctx.supply)
        else:
            return None
        return FUNC_EXT_RULE, [[Literal(beta_normalize(mk_eq(App(s, witness), App(t, witness))), pos)]]
    return None


def leibniz_literals(s: Term, t: Term, supply: FreshSupply) -> List[List[Literal]]:
    '''
    Both Leibniz readings of the equation s = t: [P s]^ff | [P t]^tt and
    [P t]^ff | [P s]^tt with P fresh.
    '''
    readings: List[List[Literal]] = []
    for lhs, rhs in ((s, t), (t, s)):
        predicate: FreeVar = supply.var(FunType(s.ty, OMICRON), 'P')
        readings.append([Literal(App(predicate, lhs), False), Literal(App(predicate, rhs), True)])
    return readings


def normalize_clause(clause: Clause, ctx: RuleContext) -> List[Clause]:
    '''
    Unfold embedded logical structure until every literal is normal.
    Positive equations at base type are kept and additionally expanded to
    their Leibniz readings.
    Args:
        clause: Clause
        ctx: RuleContext - supplies fresh variables, Skolem symbols and the ext flags.
    Returns:
        List[Clause] - [clause] itself when nothing applies, otherwise the normal conclusions.
    '''
    pending: List[Tuple[List[Literal], str]] = [(list(clause.literals), '')]
    finished: List[Tuple[List[Literal], str]] = []
    while pending:
        literals, rule = pending.pop()
        for index, lit in enumerate(literals):
            step = _step(lit, ctx)
            if step is None:
                continue
            step_rule, alternatives = step
            chosen: str = rule if rule and rule != CNF_RULE else step_rule
            for alternative in alternatives:
                if alternative is TAUTOLOGY:
                    continue
                pending.append((literals[:index] + alternative + literals[index + 1:], chosen))
            break
        else:
            finished.append((literals, rule))
    if len(finished) == 1 and not finished[0][1]:
        results: List[Clause] = [clause]
    else:
        results = [
            make_clause(literals, Origin(rule, (clause.id,)), ctx.supply, clause.conjecture)
            for literals, rule in reversed(finished)
        ]
    expanded: List[Clause] = []
    if not ctx.flags.leibniz_expand:
        return results
    for result in results:
        for index, lit in enumerate(result.literals):
            sides = lit.sides
            if not lit.positive or lit.constraint or sides is None or isinstance(sides[0].ty, FunType):
                continue
            if sides[0].ty == OMICRON:
                continue
            rest: List[Literal] = list(result.literals[:index] + result.literals[index + 1:])
            for reading in leibniz_literals(sides[0], sides[1], ctx.supply):
                expanded.append(make_clause(rest + reading, Origin(LEIBNIZ_RULE, (result.id,)),
                                            ctx.supply, result.conjecture))
    return results + expanded


# Problem level
def expand_definitions(t: Term, definitions: Dict[str, Term]) -> Term:
    '''
    Replace defined constants by their definitions until none is left.
    Raises:
        ValueError: the definitions are cyclic.
    '''
    if not definitions:
        return t
    for _ in range(MAX_DEFINITION_ROUNDS):
        expanded: Term = beta_normalize(_delta(t, definitions))
        if expanded == t:
            return t
        t = expanded
    raise ValueError("cyclic definitions")


def _delta(t: Term, definitions: Dict[str, Term]) -> Term:
    if isinstance(t, Const):
        body: Optional[Term] = definitions.get(t.name)
        return body if body is not None and body.ty == t.const_type else t
    if isinstance(t, App):
        return App(_delta(t.fn, definitions), _delta(t.arg, definitions))
    if isinstance(t, Abs):
        return Abs(t.binder_type, _delta(t.body, definitions), t.name)
    return t


def problem_types(problem: Problem) -> List[Type]:
    '''
    Base types other than o occurring in the signature, iota when there are none.
    '''
    found: List[Type] = []
    for ty in problem.signature.values():
        for base in base_types_of(ty):
            if base != OMICRON and base not in found:
                found.append(base)
    return found or [IOTA]


def signed_formulas(problem: Problem) -> List[Tuple[AnnotatedFormula, Term, bool]]:
    '''
    (formula, expanded term, polarity) for every logical formula; the
    conjectures are combined into one and asserted false.
    '''
    definitions: Dict[str, Term] = dict(problem.definitions)
    signed: List[Tuple[AnnotatedFormula, Term, bool]] = []
    conjectures: List[AnnotatedFormula] = []
    for formula in problem.logical_formulas():
        if formula.role == 'definition' and _defines(formula.formula, definitions):
            continue
        if formula.is_conjecture:
            conjectures.append(formula)
            continue
        signed.append((formula, expand_definitions(formula.formula, definitions), True))
    if conjectures:
        goal: Term = conjectures[0].formula
        for other in conjectures[1:]:
            goal = mk_and(goal, other.formula)
        signed.append((conjectures[0], expand_definitions(goal, definitions), False))
    return signed


def _defines(f: Term, definitions: Dict[str, Term]) -> bool:
    head, args = spine(f)
    if not is_logical(head, EQUALS_NAME) or len(args) != 2:
        return False
    return isinstance(args[0], Const) and args[0].name in definitions


def clausify(problem: Problem, ctx: RuleContext) -> List[Clause]:
    '''
    Clause set of a problem: definitions expanded, conjecture negated,
    Skolemized and normalised. Clauses stemming from the conjecture are
    marked as such. The unit clause of a formula is not kept, so clauses
    normalised from it cite the formula instead.
    Args:
        problem: Problem - parsed, well typed problem.
        ctx: RuleContext - fresh supply and flags.
    Returns:
        List[Clause] - the input clauses in formula order.
    '''
    clauses: List[Clause] = []
    for formula, term, positive in signed_formulas(problem):
        skolemized: Term = skolemize(term, positive, ctx.supply)
        root: Clause = make_clause(
            [Literal(skolemized, positive)],
            Origin('input', (), source=formula.name),
            ctx.supply,
            conjecture=formula.is_conjecture,
        )
        normalized: List[Clause] = [
            replace(c, origin=Origin(c.origin.rule, (), source=formula.name)) if c.origin.parents == (root.id,) else c
            for c in normalize_clause(root, ctx)
        ]
        logger.debug(f"{formula.name}: {len(normalized)} clause(s)")
        clauses.extend(normalized)
    return clauses
