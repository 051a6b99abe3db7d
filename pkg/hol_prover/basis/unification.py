"""
Extensional preunification (Huet style) and syntactic matching.

Pairs are solved below binders: function typed pairs are eta-expanded with a
fresh bound variable until they are at base type. Flex-flex pairs are
returned unsolved; o-typed rigid mismatches involving a logical constant may
be deferred to the calculus when Boolean extensionality is on.
"""
# builtins
from collections import deque
from dataclasses import dataclass, field
import logging
from typing import Deque, Dict, List, Optional, Tuple

# local
from hol_prover.basis.types import Type, FunType, OMICRON, split_type, result_type
from hol_prover.basis.terms import (
    Term, Const, FreeVar, BoundVar, Abs, App,
    Substitution, FreshSupply, substitute, beta_normalize, shift, spine, mk_app,
    free_vars, has_loose_bvars, is_logical,
)
from hol_prover.common.deadline import check_deadline


logger = logging.getLogger(__name__)

Context = Tuple[Type, ...]
Pair = Tuple[Context, Term, Term]


@dataclass(frozen=True)
class ExtFlags:
    '''
    Switches of the unification engine.
    Args:
        boolean_ext: bool - defer o-typed rigid mismatches to the calculus.
        functional_ext: bool - allow deferral below binders.
        max_depth: int - binding (imitation / projection) steps per branch.
        max_solutions: int - stop enumerating after this many preunifiers.
    '''
    boolean_ext: bool = True
    functional_ext: bool = True
    max_depth: int = 3
    max_solutions: int = 16


@dataclass
class Unifier:
    """One preunifier with the pairs it leaves open."""
    substitution: Substitution
    flex_flex: List[Tuple[Term, Term]] = field(default_factory=list)
    deferred: List[Tuple[Term, Term]] = field(default_factory=list)

    def key(self) -> tuple:
        return (self.substitution.key(), tuple(self.flex_flex), tuple(self.deferred))

    @property
    def is_complete(self) -> bool:
        return not self.flex_flex and not self.deferred


@dataclass
class PreunifyResult:
    '''
    Outcome of preunify.
    Args:
        solutions: List[Unifier]
        depth_exhausted: bool - some branch was cut by the depth bound, a deeper search may find more.
        truncated: bool - enumeration stopped at max_solutions.
    '''
    solutions: List[Unifier] = field(default_factory=list)
    depth_exhausted: bool = False
    truncated: bool = False

    @property
    def failed(self) -> bool:
        return not self.solutions and not self.depth_exhausted

    def to_dict(self) -> dict:
        return {
            'solutions': [repr(u.substitution) for u in self.solutions],
            'depth_exhausted': self.depth_exhausted,
            'truncated': self.truncated,
        }


@dataclass
class _Branch:
    pairs: List[Pair]
    subst: Substitution
    depth: int
    deferred: List[Pair] = field(default_factory=list)


def close_pair(ctx: Context, s: Term, t: Term) -> Tuple[Term, Term]:
    '''
    Re-abstract both sides over the binder context (innermost first).
    '''
    for index, ty in enumerate(ctx):
        s = Abs(ty, s, f"Z{len(ctx) - index - 1}")
        t = Abs(ty, t, f"Z{len(ctx) - index - 1}")
    return beta_normalize(s), beta_normalize(t)


def _eta_step(t: Term, domain: Type) -> Term:
    if isinstance(t, Abs):
        return t.body
    return App(shift(t, 1), BoundVar(0, domain))


def _occurs_rigid(name: str, t: Term) -> bool:
    '''
    Does the variable occur in t outside the arguments of a flexible head?
    '''
    head, args = spine(t)
    if isinstance(head, FreeVar):
        return head.name == name and not args
    if isinstance(head, Abs):
        return _occurs_rigid(name, head.body)
    return any(_occurs_rigid(name, a) for a in args)


def general_binding(var_type: Type, head: Term, supply: FreshSupply) -> Term:
    '''
    Huet binding lambda x1..xn. head (H1 x1..xn) .. (Hm x1..xn) for a
    variable of var_type, where head is a constant (imitation) or one of the
    bound xi (projection). Fresh Hi come from the supply.
    '''
    arg_tys, _ = split_type(var_type)
    n: int = len(arg_tys)
    bound: List[Term] = [BoundVar(n - 1 - k, arg_tys[k]) for k in range(n)]
    head_args, _ = split_type(head.ty)
    args: List[Term] = []
    for gamma in head_args:
        h_type: Type = gamma
        for alpha in reversed(arg_tys):
            h_type = FunType(alpha, h_type)
        args.append(mk_app(supply.var(h_type, 'H'), bound))
    body: Term = mk_app(head, args)
    for k in range(n - 1, -1, -1):
        body = Abs(arg_tys[k], body, f"X{k}")
    return beta_normalize(body)


def flex_rigid_bindings(flex: Term, rigid: Term, supply: FreshSupply) -> List[Tuple[FreeVar, Term, str]]:
    '''
    Candidate bindings (variable, binding, kind) for a flex-rigid pair at base type.
    Logical constants are never imitated.
    '''
    var, _ = spine(flex)
    rigid_head, _ = spine(rigid)
    arg_tys, target = split_type(var.ty)
    bindings: List[Tuple[FreeVar, Term, str]] = []
    if isinstance(rigid_head, Const) and not is_logical(rigid_head):
        bindings.append((var, general_binding(var.ty, rigid_head, supply), 'imitation'))
    n: int = len(arg_tys)
    for k, alpha in enumerate(arg_tys):
        if result_type(alpha) == target:
            bindings.append((var, general_binding(var.ty, BoundVar(n - 1 - k, alpha), supply), 'projection'))
    return bindings


def _bind(subst: Substitution, var: FreeVar, value: Term) -> Substitution:
    return subst.compose(Substitution({var: value}))


def preunify(
    constraints: List[Tuple[Term, Term]],
    flags: ExtFlags,
    supply: Optional[FreshSupply] = None,
    deadline: Optional[float] = None,
) -> PreunifyResult:
    '''
    Enumerate preunifiers of the constraints, depth first.
    Args:
        constraints: List[Tuple[Term, Term]] - closed, same-typed pairs.
        flags: ExtFlags - extensionality switches and depth bound.
        supply: FreshSupply - source of fresh variables for bindings.
        deadline: float - time.monotonic() value checked before every branch.
    Returns:
        PreunifyResult - solutions restricted to the input variables.
    Raises:
        DeadlineExceeded: the deadline passed during the enumeration.
    '''
    supply = supply or FreshSupply()
    original_vars: frozenset = frozenset().union(*[free_vars(s) | free_vars(t) for s, t in constraints]) \
        if constraints else frozenset()
    result: PreunifyResult = PreunifyResult()
    seen: set = set()
    stack: List[_Branch] = [_Branch(
        pairs=[((), beta_normalize(s), beta_normalize(t)) for s, t in constraints],
        subst=Substitution(),
        depth=0,
    )]
    while stack:
        check_deadline(deadline)
        branch: _Branch = stack.pop()
        outcome = _simplify(branch, flags)
        if outcome is None:
            continue
        pending_flex_rigid, flex_flex, subst = outcome
        if not pending_flex_rigid:
            unifier: Unifier = Unifier(
                substitution=subst.restrict(original_vars),
                flex_flex=[close_pair(*pair) for pair in flex_flex],
                deferred=[close_pair(ctx, substitute(s, subst), substitute(t, subst))
                          for ctx, s, t in branch.deferred],
            )
            key: tuple = unifier.key()
            if key not in seen:
                seen.add(key)
                result.solutions.append(unifier)
                if len(result.solutions) >= flags.max_solutions:
                    logger.debug(f"preunify stopped after {flags.max_solutions} solutions")
                    result.truncated = True
                    break
            continue
        if branch.depth >= flags.max_depth:
            result.depth_exhausted = True
            continue
        ctx, flex, rigid = pending_flex_rigid[0]
        children: List[_Branch] = []
        for var, binding, kind in flex_rigid_bindings(flex, rigid, supply):
            children.append(_Branch(
                pairs=pending_flex_rigid + flex_flex,
                subst=_bind(subst, var, binding),
                depth=branch.depth + 1,
                deferred=list(branch.deferred),
            ))
        # first binding explored first
        stack.extend(reversed(children))
    return result


def _eliminable(head: Term, args: List[Term], other: Term) -> bool:
    return (isinstance(head, FreeVar) and not args
            and head.name not in free_vars(other) and not has_loose_bvars(other))


def _simplify(branch: _Branch, flags: ExtFlags) -> Optional[Tuple[List[Pair], List[Pair], Substitution]]:
    '''
    Apply all deterministic steps (deletion, eta, decomposition, elimination).
    Returns None on failure, otherwise (flex-rigid pairs, flex-flex pairs, substitution).
    '''
    subst: Substitution = branch.subst
    pending: Deque[Pair] = deque(branch.pairs)
    flex_flex: List[Pair] = []
    flex_rigid: List[Pair] = []
    while pending:
        ctx, s, t = pending.popleft()
        s = substitute(s, subst)
        t = substitute(t, subst)
        if s == t:
            continue
        ty: Type = s.ty
        if isinstance(ty, FunType):
            inner: Context = (ty.domain,) + ctx
            pending.appendleft((inner, _eta_step(s, ty.domain), _eta_step(t, ty.domain)))
            continue
        s_head, s_args = spine(s)
        t_head, t_args = spine(t)
        s_flex: bool = isinstance(s_head, FreeVar)
        t_flex: bool = isinstance(t_head, FreeVar)
        if not s_flex and not t_flex:
            if s_head == t_head and len(s_args) == len(t_args):
                for a, b in reversed(list(zip(s_args, t_args))):
                    pending.appendleft((ctx, a, b))
                continue
            if (ty == OMICRON and flags.boolean_ext
                    and (is_logical(s_head) or is_logical(t_head))
                    and (not ctx or flags.functional_ext)):
                branch.deferred.append((ctx, s, t))
                continue
            return None
        if not s_flex:
            s, t = t, s
            s_head, t_head = t_head, s_head
            s_args, t_args = t_args, s_args
            s_flex, t_flex = t_flex, s_flex
        eliminated: bool = False
        if _eliminable(s_head, s_args, t):
            subst = _bind(subst, s_head, t)
            eliminated = True
        elif t_flex and _eliminable(t_head, t_args, s):
            subst = _bind(subst, t_head, s)
            eliminated = True
        if eliminated:
            pending.extend(flex_flex)
            pending.extend(flex_rigid)
            flex_flex, flex_rigid = [], []
            continue
        if t_flex:
            flex_flex.append((ctx, s, t))
            continue
        if not s_args and _occurs_rigid(s_head.name, t):
            return None
        flex_rigid.append((ctx, s, t))
    return flex_rigid, flex_flex, subst


def unify_terms(s: Term, t: Term, flags: Optional[ExtFlags] = None,
                supply: Optional[FreshSupply] = None, deadline: Optional[float] = None) -> PreunifyResult:
    return preunify([(s, t)], flags or ExtFlags(), supply, deadline)


def match_term(pattern: Term, target: Term, bindings: Optional[Dict[str, Term]] = None) -> Optional[Dict[str, Term]]:
    '''
    Syntactic one-way matching: free variables of pattern may be bound to
    closed subterms of target, variables of target are treated as constants.
    Args:
        pattern: Term
        target: Term
        bindings: Dict[str, Term] - bindings to extend (copied, not mutated).
    Returns:
        Optional[Dict[str, Term]] - extended bindings or None.
    '''
    result: Dict[str, Term] = dict(bindings or {})
    if _match(pattern, target, result):
        return result
    return None


def _match(p: Term, t: Term, bindings: Dict[str, Term]) -> bool:
    if isinstance(p, FreeVar):
        if p.var_type != t.ty or has_loose_bvars(t):
            return False
        bound: Optional[Term] = bindings.get(p.name)
        if bound is not None:
            return bound == t
        bindings[p.name] = t
        return True
    if type(p) is not type(t):
        return False
    if isinstance(p, App):
        return _match(p.fn, t.fn, bindings) and _match(p.arg, t.arg, bindings)
    if isinstance(p, Abs):
        return p.binder_type == t.binder_type and _match(p.body, t.body, bindings)
    return p == t


def bindings_to_substitution(pattern_vars: Dict[str, Type], bindings: Dict[str, Term]) -> Substitution:
    return Substitution({FreeVar(name, pattern_vars[name]): term
                         for name, term in bindings.items() if name in pattern_vars})
