"""
Lambda lifting: every abstraction is replaced by a fresh leoLift<N>
constant applied to the variables the abstraction captures.
"""
# builtins
import logging
from typing import Dict, List, Tuple

# local
from hol_prover.basis.types import Type
from hol_prover.basis.terms import (
    Term, Const, FreeVar, BoundVar, Abs, App, FreshSupply,
    beta_normalize, mk_app, mk_eq, mk_lambda, free_var_list, loose_bvar_types,
)
from hol_prover.calculus.clauses import Clause, Literal, Origin, make_clause


logger = logging.getLogger(__name__)

LIFT_RULE = "lambda_lift"


def _close_loose(t: Term, mapping: Dict[int, FreeVar], depth: int = 0) -> Term:
    if isinstance(t, BoundVar):
        if t.index >= depth:
            return mapping[t.index - depth]
        return t
    if isinstance(t, App):
        return App(_close_loose(t.fn, mapping, depth), _close_loose(t.arg, mapping, depth))
    if isinstance(t, Abs):
        return Abs(t.binder_type, _close_loose(t.body, mapping, depth + 1), t.name)
    return t


def has_abstraction(t: Term) -> bool:
    if isinstance(t, Abs):
        return True
    if isinstance(t, App):
        return has_abstraction(t.fn) or has_abstraction(t.arg)
    return False


class LambdaLifter:
    '''
    Lifts abstractions innermost first, so every definition is lambda free.
    Identical abstractions (up to the variables they capture) share one symbol.
    Args:
        supply: FreshSupply - source of leoLift<N> symbols and variables.
    '''
    def __init__(self, supply: FreshSupply) -> None:
        self.supply: FreshSupply = supply
        self.symbols: Dict[Term, Const] = {}
        self.definitions: List[Clause] = []

    def lift(self, t: Term) -> Term:
        return beta_normalize(self._lift(beta_normalize(t)))

    def _lift(self, t: Term) -> Term:
        if isinstance(t, App):
            return App(self._lift(t.fn), self._lift(t.arg))
        if isinstance(t, Abs):
            body: Term = self._lift(t.body)
            lam: Term = beta_normalize(Abs(t.binder_type, body, t.name))
            if not isinstance(lam, Abs):
                return lam
            return self._replace(lam)
        return t

    def _replace(self, lam: Abs) -> Term:
        captured: List[FreeVar] = free_var_list(lam)
        loose: Dict[int, Type] = loose_bvar_types(lam)
        order: List[int] = sorted(loose, reverse=True)
        mapping: Dict[int, FreeVar] = {index: self.supply.var(loose[index], 'Y') for index in order}
        closed_body: Term = _close_loose(lam, mapping)
        params: List[FreeVar] = captured + [mapping[index] for index in order]
        template: Term = closed_body
        for param in reversed(params):
            template = mk_lambda(param, template)
        symbol: Const = self.symbols.get(template)
        if symbol is None:
            symbol = self.supply.lifted(template.ty)
            self.symbols[template] = symbol
            self._define(symbol, template, lam.binder_type, len(params))
        return mk_app(symbol, captured + [BoundVar(index, loose[index]) for index in order])

    def _define(self, symbol: Const, template: Term, binder_type: Type, arity: int) -> None:
        args: List[Term] = []
        ty: Type = template.ty
        for _ in range(arity):
            args.append(self.supply.var(ty.domain, 'Y'))
            ty = ty.codomain
        args.append(self.supply.var(binder_type, 'X'))
        lhs: Term = mk_app(symbol, args)
        rhs: Term = beta_normalize(mk_app(template, args))
        definition: Clause = make_clause([Literal(mk_eq(lhs, rhs), True)], Origin(LIFT_RULE), self.supply)
        logger.debug(f"lifted {symbol.name}: {definition}")
        self.definitions.append(definition)


def lambda_lift(t: Term, supply: FreshSupply) -> Tuple[Term, List[Clause]]:
    '''
    Lambda-free version of t and the definition clauses of the lifted symbols.
    '''
    lifter: LambdaLifter = LambdaLifter(supply)
    return lifter.lift(t), lifter.definitions


def lift_clauses(clauses: List[Clause], supply: FreshSupply) -> Tuple[List[Clause], List[Clause]]:
    '''
    Lift every literal of every clause with one shared symbol table.
    Returns:
        (lifted clauses, definition clauses)
    '''
    lifter: LambdaLifter = LambdaLifter(supply)
    lifted: List[Clause] = []
    for clause in clauses:
        literals: Tuple[Literal, ...] = tuple(
            Literal(lifter.lift(lit.atom), lit.positive, lit.constraint) for lit in clause.literals
        )
        lifted.append(Clause(clause.id, literals, clause.origin, clause.conjecture))
    return lifted, lifter.definitions
