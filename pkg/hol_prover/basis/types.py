"""
Simple types - Representation only
"""
# builtins
from dataclasses import dataclass
from typing import List, Optional, Tuple


class Type:
    '''
    Base class of simple types. Types are immutable and compared structurally.
    '''
    def is_base(self) -> bool:
        return isinstance(self, BaseType)

    def is_fun(self) -> bool:
        return isinstance(self, FunType)

    def __str__(self) -> str:
        return format_type(self)


@dataclass(frozen=True)
class BaseType(Type):
    """Base type: `$i`, `$o` or a user declared base type."""
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class FunType(Type):
    """Function type domain -> codomain."""
    domain: Type
    codomain: Type

    def __str__(self) -> str:
        return format_type(self)


IOTA: BaseType = BaseType('$i')
OMICRON: BaseType = BaseType('$o')


def fun_type(*types: Type) -> Type:
    '''
    Build a right associated function type.
    fun_type(a, b, c) is a -> (b -> c).
    '''
    if not types:
        raise ValueError("fun_type needs at least one type")
    result: Type = types[-1]
    for domain in reversed(types[:-1]):
        result = FunType(domain, result)
    return result


def arg_types(ty: Type) -> List[Type]:
    """Argument types of a (curried) function type, outermost first."""
    args: List[Type] = []
    while isinstance(ty, FunType):
        args.append(ty.domain)
        ty = ty.codomain
    return args


def result_type(ty: Type) -> Type:
    """Final (base) codomain of a function type."""
    while isinstance(ty, FunType):
        ty = ty.codomain
    return ty


def split_type(ty: Type) -> Tuple[List[Type], Type]:
    return arg_types(ty), result_type(ty)


def type_order(ty: Type) -> int:
    '''
    Order of a type: base types have order 0, a -> b has
    max(order(a) + 1, order(b)).
    '''
    if isinstance(ty, FunType):
        return max(type_order(ty.domain) + 1, type_order(ty.codomain))
    return 0


def choice_domain(ty: Type) -> Optional[Type]:
    '''
    If ty is a choice type (alpha -> o) -> alpha return alpha, otherwise None.
    '''
    if not isinstance(ty, FunType):
        return None
    predicate: Type = ty.domain
    if isinstance(predicate, FunType) and predicate.codomain == OMICRON and predicate.domain == ty.codomain:
        return ty.codomain
    return None


def choice_type(alpha: Type) -> Type:
    """The choice type (alpha -> o) -> alpha."""
    return FunType(FunType(alpha, OMICRON), alpha)


def base_types_of(ty: Type) -> List[BaseType]:
    """All base types occurring in ty, in order of first occurrence."""
    found: List[BaseType] = []
    stack: List[Type] = [ty]
    while stack:
        current: Type = stack.pop()
        if isinstance(current, FunType):
            stack.append(current.codomain)
            stack.append(current.domain)
        elif current not in found:
            found.append(current)
    return found


def format_type(ty: Type) -> str:
    '''
    TPTP rendering of a type, e.g. ($i > $o) > $i.
    '''
    if isinstance(ty, FunType):
        domain: str = format_type(ty.domain)
        if isinstance(ty.domain, FunType):
            domain = f"({domain})"
        return f"{domain} > {format_type(ty.codomain)}"
    return ty.name
