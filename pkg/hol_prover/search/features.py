"""
Cheap problem analysis that drives strategy selection.
"""
# builtins
from dataclasses import dataclass, asdict
import logging
from typing import Any, Dict, List, Tuple

# local
from hol_prover.basis.types import Type, FunType, BaseType, OMICRON, type_order, choice_domain, split_type
from hol_prover.basis.terms import (
    Term, Const, FreeVar, BoundVar, Abs, FreshSupply,
    EQUALS_NAME, LOGICAL_NAMES, QUANTIFIER_NAMES, spine, subterms, term_size, dest_quant, is_logical,
)
from hol_prover.calculus import RuleContext
from hol_prover.calculus.choice_ops import match_choice_clause
from hol_prover.calculus.clauses import Clause, Literal, Origin, make_clause
from hol_prover.calculus.clausify import normalize_clause, signed_formulas, skolemize
from hol_prover.parser.thf_parser import Problem, AnnotatedFormula


logger = logging.getLogger(__name__)

PROPOSITIONAL = "propositional"
FIRST_ORDER_LIKE = "first-order-like"
HIGHER_ORDER = "higher-order"
EQUALITY_HEAVY_RATIO = 0.5


@dataclass(frozen=True)
class ProblemFeatures:
    formula_count: int
    total_term_size: int
    max_type_order: int
    contains_ac_instance: bool
    contains_choice_terms: bool
    equality_heavy: bool
    fragment: str

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _is_ac_formula(f: Term) -> bool:
    '''
    Does some clause of f alone have the shape of the axiom of choice.
    '''
    supply: FreshSupply = FreshSupply()
    ctx: RuleContext = RuleContext(supply)
    root: Clause = make_clause([Literal(skolemize(f, True, supply), True)], Origin('input'), supply)
    return any(match_choice_clause(clause) is not None for clause in normalize_clause(root, ctx))


def _contains_choice_terms(f: Term) -> bool:
    for sub, _ in subterms(f):
        if isinstance(sub, (Const, FreeVar, BoundVar)) and choice_domain(sub.ty) is not None:
            return True
        if isinstance(sub, Abs) and choice_domain(sub.binder_type) is not None:
            return True
    return False


def _mentions_equality(f: Term) -> bool:
    for sub, _ in subterms(f):
        if is_logical(sub, EQUALS_NAME) and split_type(sub.ty)[0][0] != OMICRON:
            return True
    return False


def _binder_types(f: Term) -> List[Type]:
    return [sub.binder_type for sub, _ in subterms(f) if isinstance(sub, Abs)]


def _first_order_symbol(ty: Type) -> bool:
    args, result = split_type(ty)
    return all(isinstance(a, BaseType) and a != OMICRON for a in args) and isinstance(result, BaseType)


def _first_order_formula(t: Term) -> bool:
    head, args = spine(t)
    quant = dest_quant(t)
    if quant is not None:
        _, binder_type, predicate = quant
        if not isinstance(binder_type, BaseType) or binder_type == OMICRON or not isinstance(predicate, Abs):
            return False
        return _first_order_formula(predicate.body)
    if isinstance(head, Const) and head.name in LOGICAL_NAMES:
        if head.name in QUANTIFIER_NAMES:
            return False
        if head.name == EQUALS_NAME:
            return (len(args) == 2 and args[0].ty != OMICRON and not isinstance(args[0].ty, FunType)
                    and all(_first_order_term(a) for a in args))
        return all(_first_order_formula(a) for a in args)
    if isinstance(head, Const):
        return _first_order_symbol(head.const_type) and all(_first_order_term(a) for a in args)
    return False


def _first_order_term(t: Term) -> bool:
    head, args = spine(t)
    if isinstance(head, (FreeVar, BoundVar)):
        return not args and isinstance(t.ty, BaseType) and t.ty != OMICRON
    if isinstance(head, Const) and head.name not in LOGICAL_NAMES:
        return (_first_order_symbol(head.const_type) and t.ty != OMICRON
                and all(_first_order_term(a) for a in args))
    return False


def _propositional(formulas: List[Term]) -> bool:
    for f in formulas:
        for sub, _ in subterms(f):
            if isinstance(sub, (Abs, FreeVar, BoundVar)):
                return False
            if isinstance(sub, Const) and sub.name not in LOGICAL_NAMES and sub.const_type != OMICRON:
                return False
            if is_logical(sub, EQUALS_NAME) and split_type(sub.ty)[0][0] != OMICRON:
                return False
    return True


def fragment_of(formulas: List[Term]) -> str:
    if _propositional(formulas):
        return PROPOSITIONAL
    if all(_first_order_formula(f) for f in formulas):
        return FIRST_ORDER_LIKE
    return HIGHER_ORDER


def analyze_problem(problem: Problem) -> ProblemFeatures:
    '''
    Features of a parsed problem, computed once before search.
    Args:
        problem: Problem
    Returns:
        ProblemFeatures
    '''
    try:
        signed: List[Tuple[AnnotatedFormula, Term, bool]] = signed_formulas(problem)
    except ValueError:
        signed = [(f, f.formula, not f.is_conjecture) for f in problem.logical_formulas()]
    formulas: List[Term] = [term for _, term, _ in signed]
    axioms: List[Term] = [term for _, term, positive in signed if positive]
    types: List[Type] = list(problem.signature.values())
    for f in formulas:
        types.extend(_binder_types(f))
    equational: int = sum(1 for f in formulas if _mentions_equality(f))
    features: ProblemFeatures = ProblemFeatures(
        formula_count=len(formulas),
        total_term_size=sum(term_size(f) for f in formulas),
        max_type_order=max((type_order(ty) for ty in types), default=0),
        contains_ac_instance=any(_is_ac_formula(f) for f in axioms),
        contains_choice_terms=any(_contains_choice_terms(f) for f in formulas),
        equality_heavy=bool(formulas) and equational / len(formulas) >= EQUALITY_HEAVY_RATIO,
        fragment=fragment_of(formulas),
    )
    logger.info(f"problem features: {features}")
    return features
