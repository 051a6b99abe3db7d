"""
TPTP rendering of terms, annotated formulas and problems.
"""
# builtins
from typing import List, Set, TYPE_CHECKING

# local
from hol_prover.basis.types import format_type
from hol_prover.basis.terms import (
    Term, Const, FreeVar, BoundVar, Abs, spine, free_vars,
    TRUE_NAME, FALSE_NAME, NOT_NAME, BINARY_CONNECTIVES, EQUALS_NAME, QUANTIFIER_NAMES,
    FORALL_NAME, LOGICAL_NAMES, dest_quant,
)
from hol_prover.parser.lexer import UPPER_WORD, quote_atom
from hol_prover.translation.fo_language import term_to_fo, format_fo_formula, strip_universals

if TYPE_CHECKING:
    from hol_prover.parser.thf_parser import AnnotatedFormula, Problem


def _binder_name(hint: str, used: Set[str]) -> str:
    base: str = hint if UPPER_WORD.match(hint or '') else 'X'
    if base not in used:
        return base
    counter: int = 0
    while f"{base}{counter}" in used:
        counter += 1
    return f"{base}{counter}"


def _logical_symbol(name: str) -> str:
    if name in (TRUE_NAME, FALSE_NAME) or name in QUANTIFIER_NAMES:
        return name
    return f"({name})"


def _fmt(t: Term, names: List[str], used: Set[str]) -> str:
    if isinstance(t, Const):
        if t.name in LOGICAL_NAMES:
            return _logical_symbol(t.name)
        return quote_atom(t.name)
    if isinstance(t, FreeVar):
        return t.name
    if isinstance(t, BoundVar):
        if t.index < len(names):
            return names[len(names) - 1 - t.index]
        return f"LOOSE{t.index}"
    if isinstance(t, Abs):
        name: str = _binder_name(t.name, used)
        body: str = _fmt(t.body, names + [name], used | {name})
        return f"(^[{name}:{_fmt_type(t.binder_type)}]: {body})"
    head, args = spine(t)
    if isinstance(head, Const) and head.name in LOGICAL_NAMES:
        if head.name == NOT_NAME and len(args) == 1:
            return f"(~ {_fmt(args[0], names, used)})"
        if (head.name in BINARY_CONNECTIVES or head.name == EQUALS_NAME) and len(args) == 2:
            return f"({_fmt(args[0], names, used)} {head.name} {_fmt(args[1], names, used)})"
        quant = dest_quant(t)
        if quant is not None and len(args) == 1 and isinstance(args[0], Abs):
            quant_name, binder_type, predicate = quant
            symbol: str = '!' if quant_name == FORALL_NAME else '?'
            var: str = _binder_name(predicate.name, used)
            body = _fmt(predicate.body, names + [var], used | {var})
            return f"({symbol}[{var}:{_fmt_type(binder_type)}]: {body})"
    parts: List[str] = [_fmt(head, names, used)] + [_fmt(a, names, used) for a in args]
    return f"({' @ '.join(parts)})"


def _fmt_type(ty) -> str:
    text: str = format_type(ty)
    return f"({text})" if ' > ' in text else text


def format_term(t: Term) -> str:
    '''
    THF rendering of a term, e.g. (![X:$i]: (p @ X)).
    Bound variables get their hint names unless that would clash.
    '''
    return _fmt(t, [], set(free_vars(t)))


def format_fof(t: Term) -> str:
    '''
    FOF rendering of a first-order formula term (fof / cnf languages).
    '''
    return format_fo_formula(term_to_fo(t))


def print_tptp(f: "AnnotatedFormula") -> str:
    '''
    Print an annotated formula in its own language.
    Args:
        f: AnnotatedFormula
    '''
    if f.language == 'thf':
        if f.role == 'type':
            declared: str = format_type(f.declared_type) if f.declared_type is not None else "$tType"
            return f"thf({quote_atom(f.name)}, type, {quote_atom(f.type_name)}: {declared})."
        return f"thf({quote_atom(f.name)}, {f.role}, {format_term(f.formula)})."
    if f.language == 'cnf':
        return f"cnf({quote_atom(f.name)}, {f.role}, {format_fo_formula(strip_universals(term_to_fo(f.formula)))})."
    return f"fof({quote_atom(f.name)}, {f.role}, {format_fof(f.formula)})."


def print_problem(problem: "Problem") -> str:
    '''
    Type declarations first, then formulas in input order.
    '''
    lines: List[str] = [print_tptp(f) for f in problem.formulas if f.role == "type"]
    lines.extend(print_tptp(f) for f in problem.formulas if f.role != "type")
    return '\n'.join(lines) + '\n'
