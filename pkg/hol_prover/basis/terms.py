"""
Simply typed lambda terms - Representation and basic processing.

Bound variables are nameless (de Bruijn indices); an Abs keeps a name hint
that only the printer looks at. Logical constants are ordinary Consts with
reserved names.
"""
# builtins
from collections import defaultdict
from dataclasses import dataclass, field
import logging
import threading
from typing import Callable, Dict, FrozenSet, Iterator, List, Mapping, Optional, Tuple

# local
from hol_prover.basis.types import Type, FunType, IOTA, OMICRON, fun_type


logger = logging.getLogger(__name__)


class HolTypeError(Exception):
    '''
    Raised for ill-typed terms and type mismatched substitutions.
    '''
    def __init__(self, message: str, subterm: Optional["Term"] = None) -> None:
        self.subterm: Optional[Term] = subterm
        if subterm is not None:
            message = f"{message} in subterm {subterm}"
        super().__init__(message)


class Term:
    '''
    Base class of all terms. Terms are immutable; hashes are cached.
    '''
    def _cached_hash(self) -> int:
        cached: Optional[int] = self.__dict__.get('_hash')
        if cached is None:
            cached = hash(self._key())
            object.__setattr__(self, '_hash', cached)
        return cached

    def _key(self) -> tuple:
        raise NotImplementedError

    @property
    def ty(self) -> Type:
        '''
        The type of a term. Ill typed applications raise HolTypeError.
        '''
        cached: Optional[Type] = self.__dict__.get('_type')
        if cached is None:
            cached = self._compute_type()
            object.__setattr__(self, '_type', cached)
        return cached

    def _compute_type(self) -> Type:
        raise NotImplementedError

    def __str__(self) -> str:
        from hol_prover.parser.printer import format_term
        return format_term(self)


@dataclass(frozen=True, eq=True)
class Const(Term):
    """Constant symbol (user, Skolem, lifted, choice or logical)."""
    name: str
    const_type: Type

    __hash__ = Term._cached_hash

    def _key(self) -> tuple:
        return ('c', self.name, self.const_type)

    def _compute_type(self) -> Type:
        return self.const_type

    def __str__(self) -> str:
        return Term.__str__(self)


@dataclass(frozen=True, eq=True)
class FreeVar(Term):
    """Free (implicitly universally quantified) variable."""
    name: str
    var_type: Type

    __hash__ = Term._cached_hash

    def _key(self) -> tuple:
        return ('v', self.name, self.var_type)

    def _compute_type(self) -> Type:
        return self.var_type

    def __str__(self) -> str:
        return Term.__str__(self)


@dataclass(frozen=True, eq=True)
class BoundVar(Term):
    """de Bruijn indexed bound variable."""
    index: int
    var_type: Type

    __hash__ = Term._cached_hash

    def _key(self) -> tuple:
        return ('b', self.index, self.var_type)

    def _compute_type(self) -> Type:
        return self.var_type

    def __str__(self) -> str:
        return Term.__str__(self)


@dataclass(frozen=True, eq=True)
class Abs(Term):
    """Lambda abstraction; `name` is a printing hint and not part of equality."""
    binder_type: Type
    body: Term
    name: str = field(default='X', compare=False)

    __hash__ = Term._cached_hash

    def _key(self) -> tuple:
        return ('l', self.binder_type, self.body)

    def _compute_type(self) -> Type:
        return FunType(self.binder_type, self.body.ty)

    def __str__(self) -> str:
        return Term.__str__(self)


@dataclass(frozen=True, eq=True)
class App(Term):
    """Application fn arg."""
    fn: Term
    arg: Term

    __hash__ = Term._cached_hash

    def _key(self) -> tuple:
        return ('a', self.fn, self.arg)

    def _compute_type(self) -> Type:
        fn_type: Type = self.fn.ty
        if not isinstance(fn_type, FunType):
            raise HolTypeError("non-function applied", self)
        if fn_type.domain != self.arg.ty:
            raise HolTypeError(
                f"argument of type {self.arg.ty} where {fn_type.domain} expected", self
            )
        return fn_type.codomain

    def __str__(self) -> str:
        return Term.__str__(self)


# Logical constants
TRUE_NAME: str = '$true'
FALSE_NAME: str = '$false'
NOT_NAME: str = '~'
AND_NAME: str = '&'
OR_NAME: str = '|'
IMPLIES_NAME: str = '=>'
EQUALS_NAME: str = '='
FORALL_NAME: str = '!!'
EXISTS_NAME: str = '??'

LOGICAL_NAMES: FrozenSet[str] = frozenset({
    TRUE_NAME, FALSE_NAME, NOT_NAME, AND_NAME, OR_NAME, IMPLIES_NAME,
    EQUALS_NAME, FORALL_NAME, EXISTS_NAME,
})
CONNECTIVE_NAMES: FrozenSet[str] = frozenset({NOT_NAME, AND_NAME, OR_NAME, IMPLIES_NAME})
BINARY_CONNECTIVES: FrozenSet[str] = frozenset({AND_NAME, OR_NAME, IMPLIES_NAME})
QUANTIFIER_NAMES: FrozenSet[str] = frozenset({FORALL_NAME, EXISTS_NAME})

BINARY_BOOL: Type = fun_type(OMICRON, OMICRON, OMICRON)
TRUE: Const = Const(TRUE_NAME, OMICRON)
FALSE: Const = Const(FALSE_NAME, OMICRON)
NOT: Const = Const(NOT_NAME, FunType(OMICRON, OMICRON))
AND: Const = Const(AND_NAME, BINARY_BOOL)
OR: Const = Const(OR_NAME, BINARY_BOOL)
IMPLIES: Const = Const(IMPLIES_NAME, BINARY_BOOL)


def equality_const(alpha: Type) -> Const:
    """Primitive equality at alpha: alpha -> alpha -> o."""
    return Const(EQUALS_NAME, fun_type(alpha, alpha, OMICRON))


def quantifier_const(name: str, alpha: Type) -> Const:
    """Pi / Sigma at alpha: (alpha -> o) -> o."""
    return Const(name, FunType(FunType(alpha, OMICRON), OMICRON))


def is_logical(t: Term, name: Optional[str] = None) -> bool:
    if not isinstance(t, Const) or t.name not in LOGICAL_NAMES:
        return False
    return name is None or t.name == name


def is_rigid_head(t: Term) -> bool:
    return isinstance(t, (Const, BoundVar))


# Construction helpers
def mk_app(head: Term, args: List[Term]) -> Term:
    result: Term = head
    for arg in args:
        result = App(result, arg)
    return result


def spine(t: Term) -> Tuple[Term, List[Term]]:
    '''
    Split t into head and argument list: f a b -> (f, [a, b]).
    '''
    args: List[Term] = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


def head_of(t: Term) -> Term:
    while isinstance(t, App):
        t = t.fn
    return t


def mk_not(a: Term) -> Term:
    return App(NOT, a)


def mk_and(a: Term, b: Term) -> Term:
    return App(App(AND, a), b)


def mk_or(a: Term, b: Term) -> Term:
    return App(App(OR, a), b)


def mk_implies(a: Term, b: Term) -> Term:
    return App(App(IMPLIES, a), b)


def mk_eq(a: Term, b: Term) -> Term:
    return App(App(equality_const(a.ty), a), b)


def mk_or_list(disjuncts: List[Term]) -> Term:
    if not disjuncts:
        return FALSE
    result: Term = disjuncts[-1]
    for d in reversed(disjuncts[:-1]):
        result = mk_or(d, result)
    return result


def mk_quant(name: str, var: FreeVar, body: Term) -> Term:
    '''
    Quantify var in body: mk_quant('!!', X, p X) is ![X]: p X.
    '''
    return App(quantifier_const(name, var.var_type), abstract(body, var, var.name))


def mk_forall(var: FreeVar, body: Term) -> Term:
    return mk_quant(FORALL_NAME, var, body)


def mk_exists(var: FreeVar, body: Term) -> Term:
    return mk_quant(EXISTS_NAME, var, body)


def mk_lambda(var: FreeVar, body: Term) -> Abs:
    return abstract(body, var, var.name)


def dest_binary(t: Term, name: str) -> Optional[Tuple[Term, Term]]:
    """If t is `a <name> b` return (a, b)."""
    head, args = spine(t)
    if is_logical(head, name) and len(args) == 2:
        return args[0], args[1]
    return None


def dest_eq(t: Term) -> Optional[Tuple[Term, Term]]:
    return dest_binary(t, EQUALS_NAME)


def dest_not(t: Term) -> Optional[Term]:
    if isinstance(t, App) and is_logical(t.fn, NOT_NAME):
        return t.arg
    return None


def dest_quant(t: Term) -> Optional[Tuple[str, Type, Term]]:
    '''
    If t is Pi P or Sigma P return (name, binder type, P).
    '''
    if isinstance(t, App) and isinstance(t.fn, Const) and t.fn.name in QUANTIFIER_NAMES:
        pred_type: Type = t.arg.ty
        if isinstance(pred_type, FunType):
            return t.fn.name, pred_type.domain, t.arg
    return None


# de Bruijn plumbing
def shift(t: Term, amount: int, cutoff: int = 0) -> Term:
    '''
    Add amount to every bound variable index >= cutoff.
    '''
    if amount == 0:
        return t
    if isinstance(t, BoundVar):
        if t.index >= cutoff:
            return BoundVar(t.index + amount, t.var_type)
        return t
    if isinstance(t, App):
        return App(shift(t.fn, amount, cutoff), shift(t.arg, amount, cutoff))
    if isinstance(t, Abs):
        return Abs(t.binder_type, shift(t.body, amount, cutoff + 1), t.name)
    return t


def _subst_bound(t: Term, depth: int, arg: Term) -> Term:
    if isinstance(t, BoundVar):
        if t.index == depth:
            return shift(arg, depth)
        if t.index > depth:
            return BoundVar(t.index - 1, t.var_type)
        return t
    if isinstance(t, App):
        return App(_subst_bound(t.fn, depth, arg), _subst_bound(t.arg, depth, arg))
    if isinstance(t, Abs):
        return Abs(t.binder_type, _subst_bound(t.body, depth + 1, arg), t.name)
    return t


def instantiate(body: Term, arg: Term) -> Term:
    """Replace bound variable 0 of body by arg (one beta step, no normalisation)."""
    return _subst_bound(body, 0, arg)


def abstract(body: Term, var: FreeVar, name: Optional[str] = None) -> Abs:
    '''
    Build the abstraction binding every occurrence of var in body.
    '''
    def walk(t: Term, depth: int) -> Term:
        if isinstance(t, FreeVar):
            if t.name == var.name:
                return BoundVar(depth, var.var_type)
            return t
        if isinstance(t, BoundVar):
            if t.index >= depth:
                return BoundVar(t.index + 1, t.var_type)
            return t
        if isinstance(t, App):
            return App(walk(t.fn, depth), walk(t.arg, depth))
        if isinstance(t, Abs):
            return Abs(t.binder_type, walk(t.body, depth + 1), t.name)
        return t
    return Abs(var.var_type, walk(body, 0), name or var.name)


def has_loose_bvars(t: Term, depth: int = 0) -> bool:
    if isinstance(t, BoundVar):
        return t.index >= depth
    if isinstance(t, App):
        return has_loose_bvars(t.fn, depth) or has_loose_bvars(t.arg, depth)
    if isinstance(t, Abs):
        return has_loose_bvars(t.body, depth + 1)
    return False


def loose_bvar_types(t: Term) -> Dict[int, Type]:
    '''
    Loose bound variable indices of t (relative to its root) with their types.
    '''
    found: Dict[int, Type] = {}
    stack: List[Tuple[Term, int]] = [(t, 0)]
    while stack:
        current, depth = stack.pop()
        if isinstance(current, BoundVar):
            if current.index >= depth:
                found[current.index - depth] = current.var_type
        elif isinstance(current, App):
            stack.append((current.arg, depth))
            stack.append((current.fn, depth))
        elif isinstance(current, Abs):
            stack.append((current.body, depth + 1))
    return found


def _bvar_occurs(t: Term, index: int) -> bool:
    if isinstance(t, BoundVar):
        return t.index == index
    if isinstance(t, App):
        return _bvar_occurs(t.fn, index) or _bvar_occurs(t.arg, index)
    if isinstance(t, Abs):
        return _bvar_occurs(t.body, index + 1)
    return False


# Normalisation
def _eta(t: Abs) -> Term:
    body: Term = t.body
    if isinstance(body, App) and isinstance(body.arg, BoundVar) and body.arg.index == 0:
        if not _bvar_occurs(body.fn, 0):
            return shift(body.fn, -1)
    return t


def _normal_order(t: Term) -> Term:
    if isinstance(t, Abs):
        return _eta(Abs(t.binder_type, _normal_order(t.body), t.name))
    head, args = spine(t)
    if isinstance(head, Abs) and args:
        reduced: Term = instantiate(head.body, args[0])
        return _normal_order(mk_app(reduced, args[1:]))
    if isinstance(head, Abs):
        return _normal_order(head)
    return mk_app(head, [_normal_order(a) for a in args])


def _applicative_order(t: Term) -> Term:
    if isinstance(t, Abs):
        return _eta(Abs(t.binder_type, _applicative_order(t.body), t.name))
    head, args = spine(t)
    normal_args: List[Term] = [_applicative_order(a) for a in args]
    if isinstance(head, Abs):
        head = _applicative_order(head)
    while isinstance(head, Abs) and normal_args:
        head = _applicative_order(instantiate(head.body, normal_args.pop(0)))
    return mk_app(head, normal_args)


NORMALISATION_ORDERS: Dict[str, Callable[[Term], Term]] = {
    'normal': _normal_order,
    'applicative': _applicative_order,
}


def beta_normalize(t: Term, order: str = 'normal') -> Term:
    '''
    beta-normal, eta-short form of t.
    Args:
        t: Term - well typed term (loose bound variables are allowed).
        order: str - 'normal' (leftmost outermost) or 'applicative'.
    '''
    return NORMALISATION_ORDERS[order](t)


def is_beta_normal(t: Term) -> bool:
    return beta_normalize(t) == t


# Free variables
def free_var_types(t: Term) -> Dict[str, Type]:
    '''
    Free variables of t with their types, in order of first occurrence.
    '''
    found: Dict[str, Type] = {}
    stack: List[Term] = [t]
    while stack:
        current: Term = stack.pop()
        if isinstance(current, FreeVar):
            found.setdefault(current.name, current.var_type)
        elif isinstance(current, App):
            stack.append(current.arg)
            stack.append(current.fn)
        elif isinstance(current, Abs):
            stack.append(current.body)
    return found


def free_vars(t: Term) -> FrozenSet[str]:
    """Names of the free variables of t; bound occurrences are excluded."""
    return frozenset(free_var_types(t))


def free_var_list(t: Term) -> List[FreeVar]:
    return [FreeVar(name, ty) for name, ty in free_var_types(t).items()]


def constants_of(t: Term) -> Dict[str, Type]:
    '''
    Non-logical constants of t.
    '''
    found: Dict[str, Type] = {}
    stack: List[Term] = [t]
    while stack:
        current: Term = stack.pop()
        if isinstance(current, Const):
            if current.name not in LOGICAL_NAMES:
                found.setdefault(current.name, current.const_type)
        elif isinstance(current, App):
            stack.append(current.arg)
            stack.append(current.fn)
        elif isinstance(current, Abs):
            stack.append(current.body)
    return found


def term_size(t: Term) -> int:
    """Symbol count: leaves plus binders."""
    size: int = 0
    stack: List[Term] = [t]
    while stack:
        current: Term = stack.pop()
        if isinstance(current, App):
            stack.append(current.arg)
            stack.append(current.fn)
        elif isinstance(current, Abs):
            size += 1
            stack.append(current.body)
        else:
            size += 1
    return size


def subterms(t: Term) -> Iterator[Tuple[Term, int]]:
    '''
    Every subterm together with the number of binders above it.
    '''
    stack: List[Tuple[Term, int]] = [(t, 0)]
    while stack:
        current, depth = stack.pop()
        yield current, depth
        if isinstance(current, App):
            stack.append((current.arg, depth))
            stack.append((current.fn, depth))
        elif isinstance(current, Abs):
            stack.append((current.body, depth + 1))


def type_of(t: Term, ctx: Optional[Mapping[str, Type]] = None) -> Type:
    '''
    Type of t. If ctx is given, free variables and constants named in it must
    carry the same type.
    Raises:
        HolTypeError: ill typed application or context mismatch.
    '''
    if ctx:
        for sub, _ in subterms(t):
            if isinstance(sub, (FreeVar, Const)) and sub.name in ctx and ctx[sub.name] != sub.ty:
                raise HolTypeError(f"{sub.name} has type {sub.ty} but context says {ctx[sub.name]}", sub)
    return t.ty


# Substitution
class Substitution:
    '''
    Simultaneous substitution of terms for free variables.
    Bindings are checked for type correctness on construction.
    '''
    def __init__(self, bindings: Optional[Mapping[FreeVar, Term]] = None) -> None:
        self._bindings: Dict[str, Tuple[FreeVar, Term]] = {}
        for var, term in (bindings or {}).items():
            self.bind(var, term)

    def bind(self, var: FreeVar, term: Term) -> None:
        if var.var_type != term.ty:
            raise HolTypeError(f"cannot bind {var.name}: {var.var_type} to a term of type {term.ty}", term)
        if has_loose_bvars(term):
            raise HolTypeError(f"cannot bind {var.name} to an open term", term)
        self._bindings[var.name] = (var, term)

    def __contains__(self, name: str) -> bool:
        return name in self._bindings

    def __len__(self) -> int:
        return len(self._bindings)

    def __bool__(self) -> bool:
        return bool(self._bindings)

    def get(self, name: str) -> Optional[Term]:
        entry = self._bindings.get(name)
        return entry[1] if entry else None

    def items(self) -> List[Tuple[FreeVar, Term]]:
        return list(self._bindings.values())

    def domain(self) -> FrozenSet[str]:
        return frozenset(self._bindings)

    def restrict(self, names: FrozenSet[str]) -> "Substitution":
        return Substitution({var: term for var, term in self.items() if var.name in names})

    def compose(self, other: "Substitution") -> "Substitution":
        '''
        self followed by other: applying the result equals applying self then other.
        '''
        result: Substitution = Substitution()
        for var, term in self.items():
            result.bind(var, substitute(term, other))
        for var, term in other.items():
            if var.name not in result:
                result.bind(var, term)
        return result

    def key(self) -> Tuple[Tuple[str, Term], ...]:
        return tuple(sorted((name, term) for name, (_, term) in self._bindings.items()))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Substitution) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        inner: str = ', '.join(f"{var.name} -> {term}" for var, term in self.items())
        return f"{{{inner}}}"


def replace_free(t: Term, s: Substitution) -> Term:
    '''
    Replace free variables without normalising. Bindings are closed terms,
    so no capture can happen under the nameless representation.
    '''
    if not s:
        return t
    if isinstance(t, FreeVar):
        bound: Optional[Term] = s.get(t.name)
        return bound if bound is not None else t
    if isinstance(t, App):
        fn: Term = replace_free(t.fn, s)
        arg: Term = replace_free(t.arg, s)
        if fn is t.fn and arg is t.arg:
            return t
        return App(fn, arg)
    if isinstance(t, Abs):
        body: Term = replace_free(t.body, s)
        return t if body is t.body else Abs(t.binder_type, body, t.name)
    return t


def substitute(t: Term, s: Substitution) -> Term:
    '''
    Capture avoiding simultaneous substitution followed by beta_normalize.
    '''
    if not s:
        return t
    return beta_normalize(replace_free(t, s))


# Fresh symbols
class FreshSupply:
    '''
    Owner of every fresh name (variables, Skolem, lifted and choice symbols,
    clause ids). A lock makes it safe to share; normally one prover state owns one.
    '''
    def __init__(self) -> None:
        self._lock: threading.Lock = threading.Lock()
        self._counters: Dict[str, int] = defaultdict(int)

    def next(self, key: str) -> int:
        with self._lock:
            value: int = self._counters[key]
            self._counters[key] = value + 1
            return value

    def var(self, ty: Type, hint: str = 'X') -> FreeVar:
        hint = ''.join(ch for ch in hint if ch.isalnum()) or 'X'
        if not hint[0].isupper():
            hint = 'X' + hint
        return FreeVar(f"{hint}_{self.next('var')}", ty)

    def skolem(self, ty: Type) -> Const:
        return Const(f"sk{self.next('skolem')}", ty)

    def lifted(self, ty: Type) -> Const:
        return Const(f"leoLift{self.next('lift')}", ty)

    def choice(self, ty: Type) -> Const:
        return Const(f"eps{self.next('choice')}", ty)

    def clause_id(self) -> int:
        return self.next('clause') + 1

    def reserve_clause_ids(self, upto: int) -> None:
        with self._lock:
            self._counters['clause'] = max(self._counters['clause'], upto)


def rename_apart(terms: List[Term], supply: FreshSupply) -> Tuple[List[Term], Substitution]:
    '''
    Rename every free variable of terms to a fresh one.
    '''
    renaming: Substitution = Substitution()
    for t in terms:
        for name, ty in free_var_types(t).items():
            if name not in renaming:
                hint: str = name.split('_')[0]
                renaming.bind(FreeVar(name, ty), supply.var(ty, hint))
    return [replace_free(t, renaming) for t in terms], renaming


__all__ = [
    'HolTypeError', 'Term', 'Const', 'FreeVar', 'BoundVar', 'Abs', 'App',
    'IOTA', 'OMICRON', 'Substitution', 'FreshSupply',
]
