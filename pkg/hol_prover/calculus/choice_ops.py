"""
Choice rules: detection of choice-axiom clauses and instantiation of the
axiom of choice at terms applied to a choice function.
"""
# builtins
import logging
import threading
from typing import Dict, List, Optional, Set, Tuple

# local
from hol_prover.basis.types import Type, FunType, OMICRON, choice_domain, choice_type
from hol_prover.basis.terms import (
    Term, Const, FreeVar, App, Substitution, FreshSupply,
    spine, subterms, has_loose_bvars, free_vars, replace_free, free_var_types, is_logical,
)
from hol_prover.calculus import InferenceRule, RuleContext, RuleResult
from hol_prover.calculus.clauses import Clause, Literal, Origin, make_clause


logger = logging.getLogger(__name__)

DETECT_RULE = "detectChoiceFn"
CHOICE_RULE = "choice"


class ChoiceRegister:
    '''
    Register of choice function symbols, grouped by the type alpha of (alpha -> o) -> alpha.
    Owned by the prover state and changed only between rule applications.
    '''
    def __init__(self) -> None:
        self._lock: threading.Lock = threading.Lock()
        self.functions: Dict[Type, List[Const]] = {}
        self.emitted: Set[Tuple[str, Term]] = set()

    def register(self, symbol: Const) -> bool:
        alpha: Optional[Type] = choice_domain(symbol.const_type)
        if alpha is None:
            raise ValueError(f"{symbol.name} does not have a choice type")
        with self._lock:
            known: List[Const] = self.functions.setdefault(alpha, [])
            if symbol in known:
                return False
            known.append(symbol)
            logger.info(f"registered choice function {symbol.name} at type {alpha}")
            return True

    def __contains__(self, symbol: Const) -> bool:
        alpha: Optional[Type] = choice_domain(symbol.const_type)
        return alpha is not None and symbol in self.functions.get(alpha, [])

    def symbols(self) -> List[Const]:
        return [symbol for group in self.functions.values() for symbol in group]

    def default_for(self, alpha: Type, supply: FreshSupply) -> Tuple[Const, bool]:
        '''
        The registered choice function for alpha, minting eps<N> on first demand.
        Returns (symbol, minted).
        '''
        known: List[Const] = self.functions.get(alpha, [])
        if known:
            return known[0], False
        symbol: Const = supply.choice(choice_type(alpha))
        self.register(symbol)
        return symbol, True

    def symbols_for(self, alpha: Type, supply: FreshSupply) -> Tuple[List[Const], bool]:
        '''
        Every registered choice function for alpha, or a freshly minted one
        when none is registered. Returns (symbols, minted).
        '''
        known: List[Const] = list(self.functions.get(alpha, []))
        if known:
            return known, False
        symbol, minted = self.default_for(alpha, supply)
        return [symbol], minted

    def copy(self) -> "ChoiceRegister":
        other: ChoiceRegister = ChoiceRegister()
        other.functions = {alpha: list(group) for alpha, group in self.functions.items()}
        other.emitted = set(self.emitted)
        return other


def match_choice_clause(clause: Clause) -> Optional[Const]:
    '''
    If clause is [P X]^ff | [P (f P)]^tt (any literal order, any variable
    names) with f a constant of choice type, return f.
    '''
    if len(clause.literals) != 2 or any(lit.constraint for lit in clause.literals):
        return None
    negative: List[Literal] = [lit for lit in clause.literals if not lit.positive]
    positive: List[Literal] = [lit for lit in clause.literals if lit.positive]
    if len(negative) != 1 or len(positive) != 1:
        return None
    neg_head, neg_args = spine(negative[0].atom)
    pos_head, pos_args = spine(positive[0].atom)
    if not (isinstance(neg_head, FreeVar) and neg_head == pos_head and len(neg_args) == 1 and len(pos_args) == 1):
        return None
    predicate: FreeVar = neg_head
    witness: Term = neg_args[0]
    if not isinstance(witness, FreeVar) or witness == predicate:
        return None
    fn, fn_args = spine(pos_args[0])
    if not (isinstance(fn, Const) and not is_logical(fn) and fn_args == [predicate]):
        return None
    alpha: Optional[Type] = choice_domain(fn.const_type)
    if alpha is None or predicate.var_type != FunType(alpha, OMICRON):
        return None
    if clause.free_vars() != frozenset({predicate.name, witness.name}):
        return None
    return fn


def detect_choice_fn(clause: Clause, ctx: RuleContext) -> RuleResult:
    '''
    Remove a choice-axiom clause from the search space and register its choice function.
    '''
    result: RuleResult = RuleResult(DETECT_RULE)
    symbol: Optional[Const] = match_choice_clause(clause)
    if symbol is None:
        return result
    if ctx.register.register(symbol):
        result.register_updates.append(symbol)
    result.removed.append(clause.id)
    return result


def _canonical(term: Term) -> Term:
    renaming: Substitution = Substitution()
    for index, (name, ty) in enumerate(free_var_types(term).items()):
        renaming.bind(FreeVar(name, ty), FreeVar(f"V{index}", ty))
    return replace_free(term, renaming)


def choice_candidates(clause: Clause, ctx: RuleContext) -> Tuple[List[Tuple[Const, Term]], bool]:
    '''
    Pairs (choice function to use, B) for every subterm E B of the clause
    with E registered or a free variable of the clause and B closed under
    the clause's binders. Returns the pairs and whether a candidate was
    skipped because B is a bare free variable.
    '''
    clause_vars: frozenset = clause.free_vars()
    found: List[Tuple[Const, Term]] = []
    skipped: bool = False
    for lit in clause.literals:
        for sub, _ in subterms(lit.atom):
            if not isinstance(sub, App):
                continue
            fn, args = spine(sub)
            if len(args) != 1:
                continue
            alpha: Optional[Type] = choice_domain(fn.ty)
            if alpha is None:
                continue
            is_candidate: bool = (isinstance(fn, Const) and fn in ctx.register) or \
                (isinstance(fn, FreeVar) and fn.name in clause_vars)
            if not is_candidate:
                continue
            predicate: Term = args[0]
            if has_loose_bvars(predicate) or not free_vars(predicate) <= clause_vars:
                continue
            if isinstance(predicate, FreeVar):
                skipped = True
                continue
            found.append((fn, predicate))
    return found, skipped


def apply_choice(clause: Clause, ctx: RuleContext) -> RuleResult:
    '''
    Emit [B Y]^ff | [B (eps B)]^tt for every candidate E B of the clause.
    A registered head E is its own eps. A free variable head gets one
    instance per choice function registered at B's type, minting eps<N>
    when there is none.
    '''
    result: RuleResult = RuleResult(CHOICE_RULE)
    candidates, skipped = choice_candidates(clause, ctx)
    result.throttled = skipped
    for fn, predicate in candidates:
        alpha: Type = choice_domain(fn.ty)
        if isinstance(fn, Const) and fn in ctx.register:
            symbols: List[Const] = [fn]
        else:
            symbols, minted = ctx.register.symbols_for(alpha, ctx.supply)
            if minted:
                result.register_updates.extend(symbols)
        for symbol in symbols:
            key: Tuple[str, Term] = (symbol.name, _canonical(predicate))
            if key in ctx.register.emitted:
                continue
            ctx.register.emitted.add(key)
            witness: FreeVar = ctx.supply.var(alpha, 'Y')
            instance: Clause = make_clause(
                [Literal(App(predicate, witness), False), Literal(App(predicate, App(symbol, predicate)), True)],
                Origin(CHOICE_RULE, (clause.id,)),
                ctx.supply,
            )
            result.new_clauses.append(instance)
    return result


class DetectChoiceRule(InferenceRule):
    name = DETECT_RULE

    def enabled(self, ctx: RuleContext) -> bool:
        return ctx.flags.choice

    def apply(self, premises: List[Clause], ctx: RuleContext) -> RuleResult:
        return detect_choice_fn(premises[0], ctx)


class ChoiceRule(InferenceRule):
    name = CHOICE_RULE

    def enabled(self, ctx: RuleContext) -> bool:
        return ctx.flags.choice

    def apply(self, premises: List[Clause], ctx: RuleContext) -> RuleResult:
        return apply_choice(premises[0], ctx)
