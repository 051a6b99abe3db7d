"""
Intermediate first-order language and its TPTP FOF rendering.

The same formatter prints translated problems and FOF / CNF formulas of
parsed problems, so printing a re-parsed translation reproduces its text.
"""
# builtins
from dataclasses import dataclass, field
import logging
from typing import Dict, Iterator, List, Set, Tuple, Union

# local
from hol_prover.basis.types import OMICRON
from hol_prover.basis.terms import (
    Term, Const, FreeVar, BoundVar, Abs, App, spine, shift,
    TRUE_NAME, FALSE_NAME, NOT_NAME, AND_NAME, OR_NAME, IMPLIES_NAME, EQUALS_NAME,
    FORALL_NAME, LOGICAL_NAMES, dest_quant,
)
from hol_prover.parser.lexer import quote_atom


logger = logging.getLogger(__name__)


class TranslationError(Exception):
    """Input outside the first-order translatable fragment (e.g. not lambda-free)."""


# Terms
@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Fn:
    name: str
    args: Tuple["FoTerm", ...] = ()


FoTerm = Union[Var, Fn]


# Formulas
@dataclass(frozen=True)
class Pred:
    name: str
    args: Tuple[FoTerm, ...] = ()


@dataclass(frozen=True)
class Eq:
    lhs: FoTerm
    rhs: FoTerm


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class Not:
    body: "FoFormula"


@dataclass(frozen=True)
class And:
    left: "FoFormula"
    right: "FoFormula"


@dataclass(frozen=True)
class Or:
    left: "FoFormula"
    right: "FoFormula"


@dataclass(frozen=True)
class Implies:
    left: "FoFormula"
    right: "FoFormula"


@dataclass(frozen=True)
class Iff:
    left: "FoFormula"
    right: "FoFormula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "FoFormula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "FoFormula"


FoFormula = Union[Pred, Eq, Top, Bottom, Not, And, Or, Implies, Iff, Forall, Exists]
BINARY_SYMBOLS: Dict[type, str] = {And: '&', Or: '|', Implies: '=>', Iff: '<=>'}


@dataclass
class FoAnnotated:
    name: str
    role: str
    formula: FoFormula


@dataclass
class FoProblem:
    '''
    A translated problem: definition axioms first, then the clause formulas.
    '''
    definitions: List[FoAnnotated] = field(default_factory=list)
    axioms: List[FoAnnotated] = field(default_factory=list)
    monotone_types: Set[str] = field(default_factory=set)
    mode: str = 'fof_full'

    def all_formulas(self) -> List[FoAnnotated]:
        return self.definitions + self.axioms


# Formatting
def format_fo_term(t: FoTerm) -> str:
    if isinstance(t, Var):
        return t.name
    if not t.args:
        return quote_atom(t.name)
    return f"{quote_atom(t.name)}({','.join(format_fo_term(a) for a in t.args)})"


def _unit(f: FoFormula) -> str:
    text: str = format_fo_formula(f)
    if isinstance(f, Eq):
        return f"({text})"
    return text


def format_fo_formula(f: FoFormula) -> str:
    '''
    Fully parenthesised FOF text of a formula.
    '''
    if isinstance(f, Pred):
        return format_fo_term(Fn(f.name, f.args))
    if isinstance(f, Eq):
        return f"{format_fo_term(f.lhs)} = {format_fo_term(f.rhs)}"
    if isinstance(f, Top):
        return '$true'
    if isinstance(f, Bottom):
        return '$false'
    if isinstance(f, Not):
        return f"~ {_unit(f.body)}"
    if isinstance(f, (Forall, Exists)):
        symbol: str = '!' if isinstance(f, Forall) else '?'
        return f"{symbol}[{f.var}]: {_unit(f.body)}"
    return f"({format_fo_formula(f.left)} {BINARY_SYMBOLS[type(f)]} {format_fo_formula(f.right)})"


def strip_universals(f: FoFormula) -> FoFormula:
    while isinstance(f, Forall):
        f = f.body
    return f


def fo_subformulas(f: FoFormula) -> Iterator[FoFormula]:
    yield f
    if isinstance(f, Not):
        yield from fo_subformulas(f.body)
    elif isinstance(f, (And, Or, Implies, Iff)):
        yield from fo_subformulas(f.left)
        yield from fo_subformulas(f.right)
    elif isinstance(f, (Forall, Exists)):
        yield from fo_subformulas(f.body)


def fo_size(f: FoFormula) -> int:
    return sum(1 for _ in fo_subformulas(f))


# HOL -> intermediate language for formulas that are already first-order
def _fresh_name(hint: str, used: List[str]) -> str:
    base: str = hint if hint and hint[0].isupper() else 'X'
    if base not in used:
        return base
    counter: int = 0
    while f"{base}{counter}" in used:
        counter += 1
    return f"{base}{counter}"


def _to_term(t: Term, names: List[str]) -> FoTerm:
    if isinstance(t, BoundVar):
        if t.index >= len(names):
            raise TranslationError("loose bound variable")
        return Var(names[len(names) - 1 - t.index])
    if isinstance(t, FreeVar):
        return Var(t.name)
    head, args = spine(t)
    if isinstance(head, Const) and head.name not in LOGICAL_NAMES:
        return Fn(head.name, tuple(_to_term(a, names) for a in args))
    raise TranslationError(f"not a first-order term: {t}")


def _to_formula(t: Term, names: List[str]) -> FoFormula:
    head, args = spine(t)
    if isinstance(head, Const) and head.name in LOGICAL_NAMES:
        name: str = head.name
        if name == TRUE_NAME and not args:
            return Top()
        if name == FALSE_NAME and not args:
            return Bottom()
        if name == NOT_NAME and len(args) == 1:
            return Not(_to_formula(args[0], names))
        if len(args) == 2 and name in (AND_NAME, OR_NAME, IMPLIES_NAME):
            cls = {AND_NAME: And, OR_NAME: Or, IMPLIES_NAME: Implies}[name]
            return cls(_to_formula(args[0], names), _to_formula(args[1], names))
        if len(args) == 2 and name == EQUALS_NAME:
            if args[0].ty == OMICRON:
                return Iff(_to_formula(args[0], names), _to_formula(args[1], names))
            return Eq(_to_term(args[0], names), _to_term(args[1], names))
        quant = dest_quant(t)
        if quant is not None:
            quant_name, binder_type, predicate = quant
            cls = Forall if quant_name == FORALL_NAME else Exists
            hint: str = predicate.name if isinstance(predicate, Abs) else 'X'
            var: str = _fresh_name(hint, names)
            if isinstance(predicate, Abs):
                body: Term = predicate.body
            else:
                body = App(shift(predicate, 1), BoundVar(0, binder_type))
            return cls(var, _to_formula(body, names + [var]))
        raise TranslationError(f"logical constant {name} in a first-order position")
    if isinstance(head, Const):
        return Pred(head.name, tuple(_to_term(a, names) for a in args))
    if isinstance(head, (FreeVar, BoundVar)) and not args:
        raise TranslationError(f"propositional variable {t}")
    raise TranslationError(f"not a first-order formula: {t}")


def term_to_fo(t: Term) -> FoFormula:
    '''
    Read a first-order shaped HOL formula (as produced by the FOF / CNF
    parser) as an intermediate-language formula.
    Raises:
        TranslationError: t uses higher-order structure.
    '''
    return _to_formula(t, [])


def print_fof(problem: FoProblem) -> str:
    '''
    TPTP FOF text of a translated problem: definitions first, then the
    clause formulas in input order.
    '''
    lines: List[str] = [f"% translation: {problem.mode}"]
    if problem.monotone_types:
        lines.append(f"% monotone types: {', '.join(sorted(problem.monotone_types))}")
    for formula in problem.all_formulas():
        lines.append(f"fof({quote_atom(formula.name)}, {formula.role}, {format_fo_formula(formula.formula)}).")
    return '\n'.join(lines) + '\n'
