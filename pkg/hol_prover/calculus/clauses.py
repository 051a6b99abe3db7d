"""
Literals and clauses.
"""
# builtins
from collections import Counter
from dataclasses import dataclass, field
import logging
from typing import Dict, Iterable, List, Optional, Tuple

# local
from hol_prover.basis.types import Type, FunType, OMICRON
from hol_prover.basis.terms import (
    Term, FreeVar, Abs, Substitution, FreshSupply, HolTypeError,
    beta_normalize, mk_eq, mk_not, mk_or_list, mk_forall, dest_eq, free_var_types, head_of,
    term_size, replace_free, substitute,
)


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Literal:
    '''
    Polarity-annotated atom. A constraint literal [l =? r] is a negative
    equation that only the unification rule may discharge.
    '''
    atom: Term
    positive: bool
    constraint: bool = False

    def __post_init__(self) -> None:
        if self.atom.ty != OMICRON:
            raise HolTypeError(f"literal atom has type {self.atom.ty}, not o", self.atom)

    @property
    def sides(self) -> Optional[Tuple[Term, Term]]:
        return dest_eq(self.atom)

    @property
    def is_equation(self) -> bool:
        return self.sides is not None

    @property
    def is_flex(self) -> bool:
        return isinstance(head_of(self.atom), FreeVar)

    @property
    def is_flex_flex(self) -> bool:
        '''
        Constraint whose sides both have a free variable at the head.
        '''
        sides = self.sides
        return (self.constraint and sides is not None
                and all(isinstance(head_of(_eta_body(s)), FreeVar) for s in sides))

    def negate(self) -> "Literal":
        return Literal(self.atom, not self.positive, self.constraint)

    def map(self, fn) -> "Literal":
        return Literal(beta_normalize(fn(self.atom)), self.positive, self.constraint)

    def __str__(self) -> str:
        if self.constraint:
            lhs, rhs = self.sides
            return f"[{lhs} =? {rhs}]"
        return f"[{self.atom}]^{'tt' if self.positive else 'ff'}"


def _eta_body(t: Term) -> Term:
    while isinstance(t, Abs):
        t = t.body
    return t


def constraint_literal(lhs: Term, rhs: Term) -> Literal:
    return Literal(beta_normalize(mk_eq(lhs, rhs)), False, True)


@dataclass(frozen=True)
class Origin:
    '''
    Inference record: rule name, parent clause ids and the substitution used.
    '''
    rule: str
    parents: Tuple[int, ...] = ()
    substitution: str = ''
    source: str = ''

    def __str__(self) -> str:
        parents: str = ','.join(str(p) for p in self.parents)
        if parents:
            return f"{self.rule}({parents})"
        return f"{self.rule}({self.source})" if self.source else self.rule


@dataclass(frozen=True)
class Clause:
    id: int
    literals: Tuple[Literal, ...]
    origin: Origin = field(default_factory=lambda: Origin('input'))
    conjecture: bool = False

    @property
    def is_empty(self) -> bool:
        return not self.literals

    @property
    def is_refutation(self) -> bool:
        '''
        Empty, or only solvable flex-flex constraints are left.
        '''
        return all(lit.is_flex_flex for lit in self.literals)

    @property
    def weight(self) -> int:
        return sum(term_size(lit.atom) for lit in self.literals)

    @property
    def constraints(self) -> List[Literal]:
        return [lit for lit in self.literals if lit.constraint]

    @property
    def proper_literals(self) -> List[Literal]:
        return [lit for lit in self.literals if not lit.constraint]

    def free_var_types(self) -> Dict[str, Type]:
        found: Dict[str, Type] = {}
        for lit in self.literals:
            for name, ty in free_var_types(lit.atom).items():
                found.setdefault(name, ty)
        return found

    def free_vars(self) -> frozenset:
        return frozenset(self.free_var_types())

    def key(self) -> frozenset:
        '''
        Literal multiset up to variable renaming (canonical naming by first occurrence).
        '''
        renaming: Substitution = Substitution()
        for index, (name, ty) in enumerate(self.free_var_types().items()):
            renaming.bind(FreeVar(name, ty), FreeVar(f"V{index}", ty))
        return frozenset(Counter(
            (replace_free(lit.atom, renaming), lit.positive, lit.constraint) for lit in self.literals
        ).items())

    def __str__(self) -> str:
        body: str = ' | '.join(str(lit) for lit in self.literals) if self.literals else '$false'
        return f"{self.id}: {body}  ({self.origin})"

    def to_tptp(self) -> str:
        '''
        THF rendering used in proof output: thf(c<id>, plain, ..., inference(...)).
        '''
        disjuncts: List[Term] = [lit.atom if lit.positive else mk_not(lit.atom) for lit in self.literals]
        formula: Term = mk_or_list(disjuncts)
        for name, ty in reversed(list(self.free_var_types().items())):
            formula = mk_forall(FreeVar(name, ty), formula)
        parents: str = ','.join(f"c{p}" for p in self.origin.parents)
        return f"thf(c{self.id}, plain, {formula}, inference({self.origin.rule}, [status(thm)], [{parents}]))."


def make_clause(literals: Iterable[Literal], origin: Origin, supply: FreshSupply,
                conjecture: bool = False) -> Clause:
    '''
    Build a clause with a fresh id; atoms are beta normalised.
    '''
    normalized: Tuple[Literal, ...] = tuple(
        Literal(beta_normalize(lit.atom), lit.positive, lit.constraint) for lit in literals
    )
    return Clause(supply.clause_id(), normalized, origin, conjecture)


def instantiate_clause(clause: Clause, subst: Substitution, origin: Origin, supply: FreshSupply,
                       extra: Iterable[Literal] = (), drop: Iterable[int] = ()) -> Clause:
    '''
    Apply subst to every literal except the dropped positions and append extra literals.
    '''
    dropped: set = set(drop)
    literals: List[Literal] = [
        Literal(substitute(lit.atom, subst), lit.positive, lit.constraint)
        for index, lit in enumerate(clause.literals) if index not in dropped
    ]
    literals.extend(extra)
    return make_clause(literals, origin, supply, clause.conjecture)


def rename_clause(clause: Clause, supply: FreshSupply) -> Tuple[Clause, Substitution]:
    '''
    Copy of clause with all free variables renamed to fresh ones (same id and origin).
    '''
    renaming: Substitution = Substitution()
    for name, ty in clause.free_var_types().items():
        renaming.bind(FreeVar(name, ty), supply.var(ty, name.split('_')[0]))
    literals: Tuple[Literal, ...] = tuple(
        Literal(replace_free(lit.atom, renaming), lit.positive, lit.constraint) for lit in clause.literals
    )
    return Clause(clause.id, literals, clause.origin, clause.conjecture), renaming


def is_equation_at(lit: Literal, predicate) -> bool:
    sides = lit.sides
    return sides is not None and predicate(sides[0].ty)


def is_bool_type(ty: Type) -> bool:
    return ty == OMICRON


def is_fun_type(ty: Type) -> bool:
    return isinstance(ty, FunType)
