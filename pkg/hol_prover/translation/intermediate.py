"""
HOL clauses to the intermediate first-order language.

Application is encoded with direct n-ary symbols for constants (n being
the smallest arity the constant is applied with anywhere) and a binary
`at` for everything else. Boolean terms in argument positions are read
with the `pTrue` predicate; logical constants in argument positions
become proxy symbols with defining axioms. Type information depends on
the mode:
    fully_typed     every term is wrapped as ti(term, type tag)
    fof_full        quantified variables are guarded with hasty(X, type tag)
    fof_experiment  as fof_full, without guards for monotone types
"""
# builtins
import logging
from typing import Dict, List, Optional, Set, Tuple

# local
from hol_prover.basis.types import Type, BaseType, FunType, OMICRON, arg_types, split_type
from hol_prover.basis.terms import (
    Term, Const, FreeVar, BoundVar, App, FreshSupply,
    TRUE_NAME, FALSE_NAME, NOT_NAME, AND_NAME, OR_NAME, IMPLIES_NAME, EQUALS_NAME,
    FORALL_NAME, EXISTS_NAME, LOGICAL_NAMES,
    spine, shift, dest_quant, beta_normalize,
)
from hol_prover.calculus.clauses import Clause, Literal
from hol_prover.translation.fo_language import (
    TranslationError, Var, Fn, FoTerm, FoFormula, Pred, Eq, Top, Bottom, Not, And, Or, Implies, Iff,
    Forall, Exists, FoAnnotated, FoProblem,
)
from hol_prover.translation.lambda_lift import lift_clauses, has_abstraction
from hol_prover.translation.monotonicity import monotonicity_analysis


logger = logging.getLogger(__name__)

FULLY_TYPED = "fully_typed"
FOF_FULL = "fof_full"
FOF_EXPERIMENT = "fof_experiment"
TRANSLATION_MODES: Tuple[str, ...] = (FULLY_TYPED, FOF_FULL, FOF_EXPERIMENT)
MODE_ALIASES: Dict[str, str] = {"fully-typed": FULLY_TYPED, "fof-full": FOF_FULL, "fof-experiment": FOF_EXPERIMENT}

APPLY = "at"
TRUTH = "pTrue"
TYPE_INFO = "ti"
HAS_TYPE = "hasty"
PROXY_NAMES: Dict[str, str] = {
    TRUE_NAME: "leo_true", FALSE_NAME: "leo_false", NOT_NAME: "leo_not",
    AND_NAME: "leo_and", OR_NAME: "leo_or", IMPLIES_NAME: "leo_implies",
    EQUALS_NAME: "leo_eq", FORALL_NAME: "leo_forall", EXISTS_NAME: "leo_exists",
}


def normalize_mode(mode: str) -> str:
    '''
    Raises:
        ValueError: unknown translation mode.
    '''
    mode = MODE_ALIASES.get(mode, mode)
    if mode not in TRANSLATION_MODES:
        raise ValueError(f"unknown translation mode '{mode}', expected one of {', '.join(TRANSLATION_MODES)}")
    return mode


def type_slug(ty: Type) -> str:
    if isinstance(ty, BaseType):
        return ty.name.lstrip('$')
    return f"f{type_slug(ty.domain)}_{type_slug(ty.codomain)}_"


def type_tag(ty: Type) -> FoTerm:
    if isinstance(ty, BaseType):
        return Fn(f"ty_{type_slug(ty)}")
    return Fn("ty_fun", (type_tag(ty.domain), type_tag(ty.codomain)))


def proxy_name(head: Const) -> str:
    name: str = PROXY_NAMES[head.name]
    if head.name == EQUALS_NAME:
        return f"{name}_{type_slug(arg_types(head.const_type)[0])}"
    if head.name in (FORALL_NAME, EXISTS_NAME):
        return f"{name}_{type_slug(arg_types(head.const_type)[0].domain)}"
    return name


class Encoder:
    '''
    Two passes over a lambda-free clause set: scan records how every
    constant is used, then clauses are encoded. Axioms for proxies, typing
    and inhabitation are collected on the way.
    Args:
        mode: str - translation mode.
        monotone: Set[Type] - types whose guards may be dropped (fof_experiment only).
    '''
    def __init__(self, mode: str, monotone: Optional[Set[Type]] = None) -> None:
        self.mode: str = normalize_mode(mode)
        self.monotone: Set[Type] = set(monotone or ()) if self.mode == FOF_EXPERIMENT else set()
        self.arities: Dict[str, int] = {}
        self.max_arities: Dict[str, int] = {}
        self.types: Dict[str, Type] = {}
        self.term_symbols: Set[str] = set()
        self.proxies: Dict[str, Const] = {}
        self.apply_types: Set[FunType] = set()
        self.used_types: Set[Type] = set()

    # scan
    def scan(self, clauses: List[Clause]) -> None:
        for clause in clauses:
            for lit in clause.literals:
                self._scan(lit.atom, True)

    def _scan(self, t: Term, formula: bool) -> None:
        head, args = spine(t)
        if isinstance(head, Const) and head.name in LOGICAL_NAMES and formula:
            quant = dest_quant(t)
            if quant is not None:
                _, binder_type, predicate = quant
                self._scan(App(shift(predicate, 1), BoundVar(0, binder_type)), True)
                return
            if head.name == EQUALS_NAME and len(args) == 2:
                boolean: bool = args[0].ty == OMICRON
                for arg in args:
                    self._scan(arg, boolean)
                return
            if head.name in (NOT_NAME, AND_NAME, OR_NAME, IMPLIES_NAME) and len(args) == arg_count(head):
                for arg in args:
                    self._scan(arg, True)
                return
            if head.name in (TRUE_NAME, FALSE_NAME):
                return
        if isinstance(head, Const) and head.name not in LOGICAL_NAMES:
            name: str = head.name
            self.types[name] = head.const_type
            self.arities[name] = min(self.arities.get(name, len(args)), len(args))
            self.max_arities[name] = max(self.max_arities.get(name, len(args)), len(args))
            if not formula:
                self.term_symbols.add(name)
        for arg in args:
            self._scan(arg, False)

    def is_predicate(self, name: str) -> bool:
        if self.mode == FULLY_TYPED or name in self.term_symbols:
            return False
        full: int = len(arg_types(self.types[name]))
        return self.arities[name] == self.max_arities[name] == full

    # type information
    def guarded(self, ty: Type) -> bool:
        return self.mode != FULLY_TYPED and ty not in self.monotone

    def wrap(self, term: FoTerm, ty: Type) -> FoTerm:
        self.used_types.add(ty)
        if self.mode == FULLY_TYPED:
            return Fn(TYPE_INFO, (term, type_tag(ty)))
        return term

    def guard(self, name: str, ty: Type) -> Optional[FoFormula]:
        self.used_types.add(ty)
        if not self.guarded(ty):
            return None
        return Pred(HAS_TYPE, (Var(name), type_tag(ty)))

    def close(self, variables: List[Tuple[str, Type]], body: FoFormula, existential: bool = False) -> FoFormula:
        for name, ty in reversed(variables):
            guard: Optional[FoFormula] = self.guard(name, ty)
            if guard is not None:
                body = And(guard, body) if existential else Implies(guard, body)
            body = Exists(name, body) if existential else Forall(name, body)
        return body

    # terms
    def apply(self, fn: FoTerm, fn_type: FunType, arg: FoTerm) -> FoTerm:
        self.apply_types.add(fn_type)
        return self.wrap(Fn(APPLY, (fn, arg)), fn_type.codomain)

    def truth(self, term: FoTerm) -> FoFormula:
        return Pred(TRUTH, (term,))

    def term(self, t: Term, names: List[str]) -> FoTerm:
        head, args = spine(t)
        if isinstance(head, BoundVar):
            if head.index >= len(names):
                raise TranslationError("loose bound variable")
            encoded: FoTerm = self.wrap(Var(names[len(names) - 1 - head.index]), head.var_type)
            rest: List[Term] = args
        elif isinstance(head, FreeVar):
            encoded = self.wrap(Var(head.name), head.var_type)
            rest = args
        elif isinstance(head, Const) and head.name in LOGICAL_NAMES:
            name: str = proxy_name(head)
            self.proxies[name] = head
            encoded = self.wrap(Fn(name), head.const_type)
            rest = args
        elif isinstance(head, Const):
            arity: int = self.arities.get(head.name, 0)
            direct: List[FoTerm] = [self.term(a, names) for a in args[:arity]]
            ty: Type = head.const_type
            for _ in range(arity):
                ty = ty.codomain
            encoded = self.wrap(Fn(head.name, tuple(direct)), ty)
            rest = args[arity:]
        else:
            raise TranslationError(f"not lambda free: {t}")
        fn_type: Type = _type_after(t, len(rest))
        for arg in rest:
            encoded = self.apply(encoded, fn_type, self.term(arg, names))
            fn_type = fn_type.codomain
        return encoded

    # formulas
    def formula(self, t: Term, names: List[str]) -> FoFormula:
        head, args = spine(t)
        if isinstance(head, Const) and head.name in LOGICAL_NAMES:
            name: str = head.name
            if name == TRUE_NAME and not args:
                return Top()
            if name == FALSE_NAME and not args:
                return Bottom()
            if name == NOT_NAME and len(args) == 1:
                return Not(self.formula(args[0], names))
            if name in (AND_NAME, OR_NAME, IMPLIES_NAME) and len(args) == 2:
                cls = {AND_NAME: And, OR_NAME: Or, IMPLIES_NAME: Implies}[name]
                return cls(self.formula(args[0], names), self.formula(args[1], names))
            if name == EQUALS_NAME and len(args) == 2:
                if args[0].ty == OMICRON:
                    return Iff(self.formula(args[0], names), self.formula(args[1], names))
                return Eq(self.term(args[0], names), self.term(args[1], names))
            quant = dest_quant(t)
            if quant is not None:
                quant_name, binder_type, predicate = quant
                var: str = _fresh_name(names)
                body: FoFormula = self.formula(
                    beta_normalize(App(shift(predicate, 1), BoundVar(0, binder_type))), names + [var])
                return self.close([(var, binder_type)], body, existential=quant_name == EXISTS_NAME)
        if isinstance(head, Const) and head.name not in LOGICAL_NAMES and self.is_predicate(head.name):
            return Pred(head.name, tuple(self.term(a, names) for a in args))
        return self.truth(self.term(t, names))

    def literal(self, lit: Literal) -> FoFormula:
        encoded: FoFormula = self.formula(lit.atom, [])
        return encoded if lit.positive else Not(encoded)

    def clause(self, clause: Clause) -> FoFormula:
        if not clause.literals:
            return Bottom()
        body: FoFormula = self.literal(clause.literals[-1])
        for lit in reversed(clause.literals[:-1]):
            body = Or(self.literal(lit), body)
        return self.close(list(clause.free_var_types().items()), body)

    # axioms
    def proxy_axioms(self) -> List[FoAnnotated]:
        axioms: List[FoAnnotated] = []
        for name in sorted(self.proxies):
            head: Const = self.proxies[name]
            axioms.append(FoAnnotated(f"proxy_{name}", "axiom", self.proxy_axiom(name, head)))
        return axioms

    def proxy_axiom(self, name: str, head: Const) -> FoFormula:
        symbol: FoTerm = self.wrap(Fn(name), head.const_type)
        if head.name == TRUE_NAME:
            return self.truth(symbol)
        if head.name == FALSE_NAME:
            return Not(self.truth(symbol))
        domains: List[Type] = arg_types(head.const_type)
        variables: List[Tuple[str, Type]] = [(f"X{k}", ty) for k, ty in enumerate(domains)]
        encoded: List[FoTerm] = [self.wrap(Var(v), ty) for v, ty in variables]
        applied: FoTerm = symbol
        fn_type: Type = head.const_type
        for arg in encoded:
            applied = self.apply(applied, fn_type, arg)
            fn_type = fn_type.codomain
        lhs: FoFormula = self.truth(applied)
        if head.name == NOT_NAME:
            rhs: FoFormula = Not(self.truth(encoded[0]))
        elif head.name in (AND_NAME, OR_NAME, IMPLIES_NAME):
            cls = {AND_NAME: And, OR_NAME: Or, IMPLIES_NAME: Implies}[head.name]
            rhs = cls(self.truth(encoded[0]), self.truth(encoded[1]))
        elif head.name == EQUALS_NAME:
            rhs = Eq(encoded[0], encoded[1])
        else:
            alpha: Type = domains[0].domain
            inner: FoTerm = self.apply(encoded[0], domains[0], self.wrap(Var("Z"), alpha))
            rhs = self.close([("Z", alpha)], self.truth(inner), existential=head.name == EXISTS_NAME)
        return self.close(variables, Iff(lhs, rhs))

    def typing_axioms(self) -> List[FoAnnotated]:
        '''
        hasty facts for every symbol and application whose result type is
        guarded, and inhabitation of every guarded type in use.
        '''
        if self.mode == FULLY_TYPED:
            return []
        axioms: List[FoAnnotated] = []
        symbols: List[Tuple[str, Type, int]] = [
            (name, self.types[name], self.arities[name])
            for name in sorted(self.types) if not self.is_predicate(name)
        ]
        symbols.extend((name, head.const_type, 0) for name, head in sorted(self.proxies.items()))
        for name, ty, arity in symbols:
            domains, _ = split_type(ty)
            result: Type = ty
            for _ in range(arity):
                result = result.codomain
            if not self.guarded(result):
                continue
            variables: List[Tuple[str, Type]] = [(f"X{k}", domains[k]) for k in range(arity)]
            term: FoTerm = Fn(name, tuple(Var(v) for v, _ in variables))
            axioms.append(FoAnnotated(f"type_{name}", "axiom",
                                      self.close(variables, Pred(HAS_TYPE, (term, type_tag(result))))))
            self.used_types.add(result)
        for index, fn_type in enumerate(sorted(self.apply_types, key=str)):
            if not self.guarded(fn_type.codomain):
                continue
            variables = [("F", fn_type), ("X", fn_type.domain)]
            term = Fn(APPLY, (Var("F"), Var("X")))
            axioms.append(FoAnnotated(f"type_at_{index}", "axiom",
                                      self.close(variables, Pred(HAS_TYPE, (term, type_tag(fn_type.codomain))))))
        for ty in sorted(self.used_types, key=str):
            if self.guarded(ty):
                axioms.append(FoAnnotated(f"inhabited_{type_slug(ty)}", "axiom",
                                          Exists("X", Pred(HAS_TYPE, (Var("X"), type_tag(ty))))))
        return axioms


def arg_count(head: Const) -> int:
    return len(arg_types(head.const_type))


def _type_after(t: Term, remaining: int) -> Type:
    '''
    Type of the part of t that still takes the last `remaining` arguments.
    '''
    head, args = spine(t)
    ty: Type = head.ty
    for _ in range(len(args) - remaining):
        ty = ty.codomain
    return ty


def _fresh_name(names: List[str]) -> str:
    index: int = len(names)
    while f"Vb_{index}" in names:
        index += 1
    return f"Vb_{index}"


def to_intermediate(clauses: List[Clause], mode: str, definitions: Optional[List[Clause]] = None,
                    monotone: Optional[Set[Type]] = None) -> FoProblem:
    '''
    Encode lambda-free clauses as an intermediate first-order problem.
    Args:
        clauses: List[Clause] - lambda-lifted clauses.
        mode: str - fully_typed, fof_full or fof_experiment.
        definitions: List[Clause] - definition clauses of lifted symbols, printed first.
        monotone: Set[Type] - result of the monotonicity analysis; computed when None
            and the mode is fof_experiment.
    Raises:
        TranslationError: a clause still contains an abstraction.
    '''
    definitions = definitions or []
    for clause in definitions + clauses:
        if any(has_abstraction(lit.atom) for lit in clause.literals):
            raise TranslationError(f"clause {clause.id} is not lambda free")
    mode = normalize_mode(mode)
    if mode == FOF_EXPERIMENT and monotone is None:
        monotone = monotonicity_analysis(definitions + clauses)
    encoder: Encoder = Encoder(mode, monotone)
    encoder.scan(definitions + clauses)
    problem: FoProblem = FoProblem(mode=mode, monotone_types={type_slug(ty) for ty in encoder.monotone})
    for clause in definitions:
        problem.definitions.append(FoAnnotated(f"def_{clause.id}", "axiom", encoder.clause(clause)))
    for clause in clauses:
        problem.axioms.append(FoAnnotated(f"c_{clause.id}", "axiom", encoder.clause(clause)))
    # proxies first: their axioms may introduce types the typing axioms need
    proxy_axioms: List[FoAnnotated] = encoder.proxy_axioms()
    problem.definitions.extend(proxy_axioms)
    problem.definitions.extend(encoder.typing_axioms())
    logger.debug(f"translated {len(clauses)} clause(s) in mode {mode}: "
                 f"{len(problem.definitions)} definition axiom(s)")
    return problem


def translate_clauses(clauses: List[Clause], mode: str, supply: FreshSupply) -> FoProblem:
    '''
    Lambda-lift and encode a clause set.
    '''
    lifted, definitions = lift_clauses(clauses, supply)
    return to_intermediate(lifted, mode, definitions)
