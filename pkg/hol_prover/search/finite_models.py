"""
Finite standard models by exhaustive enumeration.

Every base type other than o gets the same domain {0..n-1}; function types
get the full function space, each function stored as the tuple of its
values over the argument domain. Choice functions are restricted to
genuine witness-picking functions. Only desk-scale signatures are
accepted: anything whose search space exceeds ORACLE_MAX_INTERPRETATIONS
is refused.
"""
# builtins
from dataclasses import dataclass, field
from itertools import product
import logging
import math
import re
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Set, Tuple

# local
from hol_prover.basis.types import Type, FunType, OMICRON, choice_domain
from hol_prover.basis.terms import (
    Term, Const, FreeVar, BoundVar, Abs, App,
    TRUE_NAME, FALSE_NAME, NOT_NAME, AND_NAME, OR_NAME, IMPLIES_NAME, EQUALS_NAME,
    FORALL_NAME, EXISTS_NAME, LOGICAL_NAMES, constants_of, free_var_types, spine,
)
from hol_prover.calculus.clauses import Clause, Literal
from hol_prover.calculus.clausify import signed_formulas
from hol_prover.common.config import ORACLE_MAX_INTERPRETATIONS, ORACLE_MAX_SIZE
from hol_prover.parser.thf_parser import Problem


logger = logging.getLogger(__name__)

GENERATED_CHOICE = re.compile(r"^eps\d+$")


class OracleRefused(Exception):
    '''
    The signature is too large for exhaustive enumeration.
    '''


class Universe:
    '''
    Domains of all types for one size.
    Args:
        size: int - cardinality of every base type except o.
        limit: int - largest domain that may be built.
    '''
    def __init__(self, size: int, limit: int = ORACLE_MAX_INTERPRETATIONS) -> None:
        if size < 1:
            raise ValueError("domain size must be positive")
        self.size: int = size
        self.limit: int = limit
        self._domains: Dict[Type, List[Any]] = {}
        self._indices: Dict[Type, Dict[Any, int]] = {}
        self._logical: Dict[Const, Any] = {}

    def cardinality(self, ty: Type) -> int:
        if isinstance(ty, FunType):
            return self.cardinality(ty.codomain) ** self.cardinality(ty.domain)
        return 2 if ty == OMICRON else self.size

    def domain(self, ty: Type) -> List[Any]:
        '''
        Raises:
            OracleRefused: the domain is larger than the limit.
        '''
        cached: Optional[List[Any]] = self._domains.get(ty)
        if cached is not None:
            return cached
        if self.cardinality(ty) > self.limit:
            raise OracleRefused(f"domain of {ty} has more than {self.limit} elements")
        if isinstance(ty, FunType):
            values: List[Any] = list(product(self.domain(ty.codomain), repeat=len(self.domain(ty.domain))))
        elif ty == OMICRON:
            values = [False, True]
        else:
            values = list(range(self.size))
        self._domains[ty] = values
        self._indices[ty] = {value: i for i, value in enumerate(values)}
        return values

    def index(self, ty: Type, value: Any) -> int:
        if ty not in self._indices:
            self.domain(ty)
        return self._indices[ty][value]

    def apply(self, fn_type: FunType, fn: Any, arg: Any) -> Any:
        return fn[self.index(fn_type.domain, arg)]

    def lift(self, ty: Type, fn: Callable[[Any], Any]) -> Any:
        '''
        Tuple value of a curried python function of type ty.
        '''
        if not isinstance(ty, FunType):
            return fn
        return tuple(self.lift(ty.codomain, fn(x)) for x in self.domain(ty.domain))

    def logical_value(self, c: Const) -> Any:
        cached: Any = self._logical.get(c)
        if cached is not None:
            return cached
        ty: Type = c.const_type
        if c.name == TRUE_NAME:
            value: Any = True
        elif c.name == FALSE_NAME:
            value = False
        elif c.name == NOT_NAME:
            value = self.lift(ty, lambda a: not a)
        elif c.name == AND_NAME:
            value = self.lift(ty, lambda a: lambda b: a and b)
        elif c.name == OR_NAME:
            value = self.lift(ty, lambda a: lambda b: a or b)
        elif c.name == IMPLIES_NAME:
            value = self.lift(ty, lambda a: lambda b: (not a) or b)
        elif c.name == EQUALS_NAME:
            value = self.lift(ty, lambda a: lambda b: a == b)
        elif c.name == FORALL_NAME:
            value = self.lift(ty, all)
        elif c.name == EXISTS_NAME:
            value = self.lift(ty, any)
        else:
            raise ValueError(f"{c.name} is not a logical constant")
        self._logical[c] = value
        return value

    def choice_functions(self, ty: Type) -> Iterator[Tuple[Any, ...]]:
        '''
        Every genuine choice function of type (a -> o) -> a: a witness for
        each non-empty predicate, anything for the empty one.
        '''
        alpha: Type = choice_domain(ty)
        elements: List[Any] = self.domain(alpha)
        options: List[List[Any]] = []
        for predicate in self.domain(FunType(alpha, OMICRON)):
            witnesses: List[Any] = [x for x, holds in zip(elements, predicate) if holds]
            options.append(witnesses or elements)
        return product(*options)

    def choice_count(self, ty: Type) -> int:
        alpha: Type = choice_domain(ty)
        elements: List[Any] = self.domain(alpha)
        return math.prod(
            sum(predicate) or len(elements) for predicate in self.domain(FunType(alpha, OMICRON))
        )


class Evaluator:
    '''
    Evaluates terms under an interpretation of the constants and an
    assignment of the free variables.
    '''
    def __init__(self, universe: Universe, interpretation: Dict[str, Any]) -> None:
        self.universe: Universe = universe
        self.interpretation: Dict[str, Any] = interpretation

    def eval(self, t: Term, assignment: Dict[str, Any], env: Optional[List[Any]] = None) -> Any:
        env = env if env is not None else []
        if isinstance(t, App):
            fast: Optional[Tuple[bool, Any]] = self._connective(t, assignment, env)
            if fast is not None:
                return fast[1]
            fn_type: Type = t.fn.ty
            return self.universe.apply(fn_type, self.eval(t.fn, assignment, env), self.eval(t.arg, assignment, env))
        if isinstance(t, Const):
            if t.name in LOGICAL_NAMES:
                return self.universe.logical_value(t)
            try:
                return self.interpretation[t.name]
            except KeyError:
                raise KeyError(f"constant {t.name} is not interpreted")
        if isinstance(t, FreeVar):
            return assignment[t.name]
        if isinstance(t, BoundVar):
            return env[-1 - t.index]
        if isinstance(t, Abs):
            return tuple(
                self.eval(t.body, assignment, env + [x]) for x in self.universe.domain(t.binder_type)
            )
        raise TypeError(f"cannot evaluate {t!r}")

    def _connective(self, t: App, assignment: Dict[str, Any], env: List[Any]) -> Optional[Tuple[bool, Any]]:
        head, args = spine(t)
        if not isinstance(head, Const) or head.name not in LOGICAL_NAMES:
            return None
        name: str = head.name
        if name == NOT_NAME and len(args) == 1:
            return True, not self.eval(args[0], assignment, env)
        if name in (AND_NAME, OR_NAME, IMPLIES_NAME) and len(args) == 2:
            left: bool = self.eval(args[0], assignment, env)
            if name == AND_NAME:
                return True, left and self.eval(args[1], assignment, env)
            if name == OR_NAME:
                return True, left or self.eval(args[1], assignment, env)
            return True, (not left) or self.eval(args[1], assignment, env)
        if name == EQUALS_NAME and len(args) == 2:
            return True, self.eval(args[0], assignment, env) == self.eval(args[1], assignment, env)
        if name in (FORALL_NAME, EXISTS_NAME) and len(args) == 1:
            quantify: Callable = all if name == FORALL_NAME else any
            predicate: Term = args[0]
            if isinstance(predicate, Abs):
                elements: List[Any] = self.universe.domain(predicate.binder_type)
                return True, quantify(self.eval(predicate.body, assignment, env + [x]) for x in elements)
            return True, quantify(self.eval(predicate, assignment, env))
        return None

    def literal(self, lit: Literal, assignment: Dict[str, Any]) -> bool:
        return bool(self.eval(lit.atom, assignment)) == lit.positive

    def clause(self, clause: Clause) -> bool:
        '''
        True in the interpretation under every assignment of its free variables.
        '''
        variables: List[Tuple[str, Type]] = sorted(clause.free_var_types().items())
        domains: List[List[Any]] = [self.universe.domain(ty) for _, ty in variables]
        for values in product(*domains):
            assignment: Dict[str, Any] = {name: value for (name, _), value in zip(variables, values)}
            if not any(self.literal(lit, assignment) for lit in clause.literals):
                return False
        return True

    def formula(self, f: Term, expected: bool) -> bool:
        '''
        Value of a formula, free variables read universally.
        '''
        variables: List[Tuple[str, Type]] = sorted(free_var_types(f).items())
        domains: List[List[Any]] = [self.universe.domain(ty) for _, ty in variables]
        holds: bool = all(
            self.eval(f, {name: value for (name, _), value in zip(variables, values)})
            for values in product(*domains)
        )
        return holds == expected


@dataclass
class FiniteModel:
    size: int
    interpretation: Dict[str, Any] = field(default_factory=dict)

    def describe(self) -> str:
        lines: List[str] = [f"domain size {self.size}"]
        lines.extend(f"  {name} = {value}" for name, value in sorted(self.interpretation.items()))
        return '\n'.join(lines)


def _signature(terms: Sequence[Term]) -> Dict[str, Type]:
    found: Dict[str, Type] = {}
    for t in terms:
        for name, ty in constants_of(t).items():
            found.setdefault(name, ty)
    return dict(sorted(found.items()))


def _is_choice_symbol(name: str, ty: Type, choice_symbols: Set[str]) -> bool:
    return choice_domain(ty) is not None and (name in choice_symbols or GENERATED_CHOICE.match(name) is not None)


def _interpretations(universe: Universe, signature: Dict[str, Type],
                     choice_symbols: Set[str]) -> Iterator[Dict[str, Any]]:
    names: List[str] = list(signature)
    count: int = 1
    candidates: List[Callable[[], Iterator[Any]]] = []
    for name in names:
        ty: Type = signature[name]
        if _is_choice_symbol(name, ty, choice_symbols):
            count *= universe.choice_count(ty)
            candidates.append(lambda ty=ty: universe.choice_functions(ty))
        else:
            count *= len(universe.domain(ty))
            candidates.append(lambda ty=ty: iter(universe.domain(ty)))
        if count > universe.limit:
            raise OracleRefused(f"more than {universe.limit} interpretations at size {universe.size}")
    for values in product(*(make() for make in candidates)):
        yield dict(zip(names, values))


def _search(checks: Callable[[Evaluator], bool], terms: Sequence[Term], max_size: int,
            choice_symbols: Optional[Set[str]]) -> Optional[FiniteModel]:
    if max_size > ORACLE_MAX_SIZE:
        raise OracleRefused(f"domain sizes above {ORACLE_MAX_SIZE} are not enumerated")
    signature: Dict[str, Type] = _signature(terms)
    for size in range(1, max_size + 1):
        universe: Universe = Universe(size)
        for interpretation in _interpretations(universe, signature, choice_symbols or set()):
            if checks(Evaluator(universe, interpretation)):
                logger.debug(f"model of size {size} found")
                return FiniteModel(size, interpretation)
    return None


def finite_model_oracle(clauses: List[Clause], max_size: int = ORACLE_MAX_SIZE,
                        choice_symbols: Optional[Set[str]] = None) -> Optional[FiniteModel]:
    '''
    Smallest standard model of a clause set with base domains of at most max_size elements.
    Args:
        clauses: List[Clause]
        max_size: int - at most ORACLE_MAX_SIZE.
        choice_symbols: Set[str] - constants to interpret as choice functions
            (generated eps symbols always are).
    Returns:
        Optional[FiniteModel] - None when no model of size <= max_size exists.
    Raises:
        OracleRefused: the signature is too large.
    '''
    terms: List[Term] = [lit.atom for clause in clauses for lit in clause.literals]
    return _search(lambda ev: all(ev.clause(c) for c in clauses), terms, max_size, choice_symbols)


def model_of_size(clauses: List[Clause], size: int,
                  choice_symbols: Optional[Set[str]] = None) -> Optional[FiniteModel]:
    '''
    A model with base domains of exactly size elements.
    '''
    terms: List[Term] = [lit.atom for clause in clauses for lit in clause.literals]
    signature: Dict[str, Type] = _signature(terms)
    universe: Universe = Universe(size)
    for interpretation in _interpretations(universe, signature, choice_symbols or set()):
        evaluator: Evaluator = Evaluator(universe, interpretation)
        if all(evaluator.clause(c) for c in clauses):
            return FiniteModel(size, interpretation)
    return None


def problem_model(problem: Problem, max_size: int = ORACLE_MAX_SIZE,
                  choice_symbols: Optional[Set[str]] = None) -> Optional[FiniteModel]:
    '''
    A model of the axioms in which the conjecture is false (a countermodel),
    or of the axioms alone when there is no conjecture.
    '''
    signed: List[Tuple[Any, Term, bool]] = signed_formulas(problem)
    terms: List[Term] = [term for _, term, _ in signed]
    return _search(
        lambda ev: all(ev.formula(term, positive) for _, term, positive in signed),
        terms, max_size, choice_symbols,
    )


def satisfies(model: FiniteModel, clause: Clause) -> bool:
    '''
    Raises:
        KeyError: the clause mentions a constant the model does not interpret.
    '''
    return Evaluator(Universe(model.size), model.interpretation).clause(clause)
