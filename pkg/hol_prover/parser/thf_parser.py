"""
Recursive descent parser for TPTP THF0, FOF and CNF.

FOF and CNF formulas are embedded into HOL while parsing: predicates get
o-valued types and functions i-valued types over $i arguments, unless the
symbol was declared before.
"""
# builtins
from dataclasses import dataclass, field
import logging
import os
import re
from typing import Dict, List, Optional, Set, Tuple, Union

# local
from hol_prover.common.config import TPTP_ROOT, RESERVED_SYMBOL_PATTERN
from hol_prover.basis.types import Type, BaseType, FunType, IOTA, OMICRON, fun_type, split_type
from hol_prover.basis.terms import (
    Term, Const, FreeVar, App, HolTypeError,
    TRUE, FALSE, NOT, AND, OR, IMPLIES, EQUALS_NAME, FORALL_NAME, EXISTS_NAME,
    mk_not, mk_and, mk_or, mk_implies, mk_eq, mk_quant, mk_lambda, mk_forall,
    equality_const, quantifier_const, dest_eq,
)
from hol_prover.parser.lexer import Token, TptpSyntaxError, tokenize, status_header


logger = logging.getLogger(__name__)

RESERVED = re.compile(RESERVED_SYMBOL_PATTERN)
NONASSOC_OPS: Set[str] = {'<=>', '=>', '<=', '<~>', '~|', '~&'}
ASSOC_OPS: Set[str] = {'|', '&'}
CONNECTIVE_TERMS: Dict[str, Term] = {'~': NOT, '&': AND, '|': OR, '=>': IMPLIES}
SUPPORTED_LANGUAGES: Set[str] = {'thf', 'fof', 'cnf'}


class TptpTypeError(TptpSyntaxError):
    """Ill-typed or undeclared symbol in the input."""


class TptpIncludeError(TptpSyntaxError):
    """An include directive names a file that cannot be found."""


@dataclass
class AnnotatedFormula:
    '''
    One annotated formula. Type declarations have role 'type', no formula,
    and carry type_name / declared_type ($tType declarations have declared_type None).
    '''
    name: str
    role: str
    formula: Optional[Term]
    language: str = 'thf'
    type_name: Optional[str] = None
    declared_type: Optional[Type] = None

    @property
    def is_conjecture(self) -> bool:
        return self.role == 'conjecture'


@dataclass
class Problem:
    signature: Dict[str, Type] = field(default_factory=dict)
    formulas: List[AnnotatedFormula] = field(default_factory=list)
    base_types: List[str] = field(default_factory=list)
    definitions: Dict[str, Term] = field(default_factory=dict)
    expected_status: str = ''
    source: str = ''

    def logical_formulas(self) -> List[AnnotatedFormula]:
        return [f for f in self.formulas if f.role != 'type']

    def conjectures(self) -> List[AnnotatedFormula]:
        return [f for f in self.formulas if f.role == 'conjecture']

    def has_conjecture(self) -> bool:
        return any(f.role == 'conjecture' for f in self.formulas)


class _Polymorphic:
    '''
    A polymorphic logical constant (!!, ??, (=)) waiting for the argument
    that fixes its type.
    '''
    def __init__(self, name: str, args: Optional[List[Term]] = None) -> None:
        self.name: str = name
        self.args: List[Term] = args or []


Parsed = Union[Term, _Polymorphic]


class TptpParser:
    '''
    Parser over one token stream. Includes are parsed by child parsers that
    share the signature.
    '''
    def __init__(self, base_dir: str = '.', problem: Optional[Problem] = None,
                 include_stack: Tuple[str, ...] = (), allow_reserved: bool = False) -> None:
        self.base_dir: str = base_dir
        self.allow_reserved: bool = allow_reserved
        self.problem: Problem = problem or Problem()
        self.include_stack: Tuple[str, ...] = include_stack
        self.tokens: List[Token] = []
        self.position: int = 0
        self.free_order: List[FreeVar] = []

    # token helpers
    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.position + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token: Token = self.peek()
        self.position += 1
        return token

    def at(self, value: str) -> bool:
        token: Token = self.peek()
        return token.kind == 'punct' and token.value == value

    def expect(self, value: str) -> Token:
        if not self.at(value):
            self.error(f"expected '{value}'")
        return self.advance()

    def error(self, message: str, token: Optional[Token] = None, kind: type = TptpSyntaxError) -> None:
        token = token or self.peek()
        found: str = token.value or 'end of input'
        raise kind(f"{message}, found '{found}'", token.line, token.column)

    def type_error(self, message: str, token: Optional[Token] = None) -> None:
        token = token or self.peek()
        raise TptpTypeError(message, token.line, token.column)

    # top level
    def parse(self, text: str, selection: Optional[Set[str]] = None) -> Problem:
        self.tokens = tokenize(text)
        self.position = 0
        while self.peek().kind != 'eof':
            word: Token = self.advance()
            if word.kind != 'lower_word':
                self.error("expected an annotated formula or include", word)
            if word.value == 'include':
                self.parse_include()
            elif word.value in SUPPORTED_LANGUAGES:
                formula: AnnotatedFormula = self.parse_annotated(word.value)
                if selection is None or formula.name in selection:
                    self.add_formula(formula)
            else:
                self.error(f"unsupported language '{word.value}'", word)
        return self.problem

    def add_formula(self, formula: AnnotatedFormula) -> None:
        if formula.role == 'definition' and formula.formula is not None:
            sides = dest_eq(formula.formula)
            if sides is not None and isinstance(sides[0], Const):
                self.problem.definitions[sides[0].name] = sides[1]
        self.problem.formulas.append(formula)

    def parse_include(self) -> None:
        self.expect('(')
        path_token: Token = self.advance()
        selection: Optional[Set[str]] = None
        if self.at(','):
            self.advance()
            self.expect('[')
            selection = set()
            while not self.at(']'):
                selection.add(self.advance().value)
                if self.at(','):
                    self.advance()
            self.expect(']')
        self.expect(')')
        self.expect('.')
        resolved: str = resolve_include(path_token.value, self.base_dir)
        if not resolved:
            raise TptpIncludeError(f"include file '{path_token.value}' not found",
                                   path_token.line, path_token.column)
        if resolved in self.include_stack:
            raise TptpIncludeError(f"include cycle through '{path_token.value}'",
                                   path_token.line, path_token.column)
        with open(resolved, 'r') as handle:
            text: str = handle.read()
        child: TptpParser = TptpParser(self.base_dir, self.problem, self.include_stack + (resolved,),
                                         self.allow_reserved)
        child.parse(text, selection)

    def parse_name(self) -> str:
        token: Token = self.advance()
        if token.kind not in ('lower_word', 'upper_word', 'number'):
            self.error("expected a formula name", token)
        return token.value

    def parse_annotated(self, language: str) -> AnnotatedFormula:
        self.expect('(')
        name: str = self.parse_name()
        self.expect(',')
        role_token: Token = self.advance()
        if role_token.kind != 'lower_word':
            self.error("expected a formula role", role_token)
        role: str = role_token.value
        self.expect(',')
        if language == 'thf' and role == 'type':
            annotated: AnnotatedFormula = self.parse_type_declaration(name)
        else:
            self.free_order = []
            if language == 'thf':
                formula: Term = self.finish(self.parse_thf_formula({}))
            elif language == 'fof':
                formula = self.parse_fof_formula({}, closing=True)
            else:
                formula = self.parse_fof_formula({}, closing=False)
            if self.free_order:
                if language == 'fof':
                    logger.warning(f"formula {name} has free variables; closing them universally")
                for var in reversed(self.free_order):
                    formula = mk_forall(var, formula)
            self.check_formula(formula, role_token)
            annotated = AnnotatedFormula(name=name, role=role, formula=formula, language=language)
        self.skip_annotations()
        self.expect(')')
        self.expect('.')
        return annotated

    def check_formula(self, formula: Term, token: Token) -> None:
        try:
            ty: Type = formula.ty
        except HolTypeError as e:
            self.type_error(str(e), token)
        if ty != OMICRON:
            self.type_error(f"formula has type {ty}, expected $o", token)

    def skip_annotations(self) -> None:
        depth: int = 0
        while self.peek().kind != 'eof':
            if depth == 0 and self.at(')'):
                return
            token: Token = self.advance()
            if token.kind == 'punct' and token.value in ('(', '['):
                depth += 1
            elif token.kind == 'punct' and token.value in (')', ']'):
                depth -= 1

    # types
    def parse_type_declaration(self, name: str) -> AnnotatedFormula:
        parens: int = 0
        while self.at('('):
            self.advance()
            parens += 1
        symbol: Token = self.advance()
        if symbol.kind != 'lower_word':
            self.error("expected a symbol in type declaration", symbol)
        self.check_reserved(symbol)
        self.expect(':')
        declared: Optional[Type] = None
        if self.peek().kind == 'dollar_word' and self.peek().value == '$tType':
            self.advance()
            if symbol.value not in self.problem.base_types:
                self.problem.base_types.append(symbol.value)
        else:
            declared = self.parse_type()
            previous: Optional[Type] = self.problem.signature.get(symbol.value)
            if previous is not None and previous != declared:
                self.type_error(f"conflicting declarations for {symbol.value}", symbol)
            self.problem.signature[symbol.value] = declared
        for _ in range(parens):
            self.expect(')')
        return AnnotatedFormula(name=name, role='type', formula=None, language='thf',
                                type_name=symbol.value, declared_type=declared)

    def parse_type(self) -> Type:
        left: Type = self.parse_type_atom()
        if self.at('>'):
            self.advance()
            return FunType(left, self.parse_type())
        return left

    def parse_type_atom(self) -> Type:
        token: Token = self.advance()
        if token.kind == 'punct' and token.value == '(':
            inner: Type = self.parse_type()
            self.expect(')')
            return inner
        if token.kind == 'dollar_word':
            if token.value == '$i':
                return IOTA
            if token.value == '$o':
                return OMICRON
            self.type_error(f"unsupported type {token.value}", token)
        if token.kind == 'lower_word':
            if token.value not in self.problem.base_types:
                self.type_error(f"undeclared type {token.value}", token)
            return BaseType(token.value)
        self.error("expected a type", token)

    def check_reserved(self, token: Token) -> None:
        if not self.allow_reserved and RESERVED.match(token.value):
            self.error(f"symbol {token.value} uses a reserved prefix", token)

    # THF formulas
    def finish(self, parsed: Parsed, token: Optional[Token] = None) -> Term:
        if isinstance(parsed, _Polymorphic):
            self.error(f"polymorphic constant {parsed.name} needs arguments", token)
        return parsed

    def apply(self, fn: Parsed, arg: Term, token: Token) -> Parsed:
        if isinstance(fn, _Polymorphic):
            if fn.name in (FORALL_NAME, EXISTS_NAME):
                arg_type: Type = arg.ty
                if not isinstance(arg_type, FunType) or arg_type.codomain != OMICRON:
                    self.type_error(f"{fn.name} applied to a non-predicate", token)
                return App(quantifier_const(fn.name, arg_type.domain), arg)
            if not fn.args:
                return _Polymorphic(fn.name, [arg])
            return App(App(equality_const(fn.args[0].ty), fn.args[0]), arg)
        result: Term = App(fn, arg)
        try:
            result.ty
        except HolTypeError as e:
            self.type_error(str(e), token)
        return result

    def combine(self, op: str, left: Term, right: Term, token: Token) -> Term:
        for side in (left, right):
            if side.ty != OMICRON:
                self.type_error(f"operand of {op} has type {side.ty}, expected $o", token)
        if op == '<=>':
            return mk_eq(left, right)
        if op == '=>':
            return mk_implies(left, right)
        if op == '<=':
            return mk_implies(right, left)
        if op == '<~>':
            return mk_not(mk_eq(left, right))
        if op == '~|':
            return mk_not(mk_or(left, right))
        if op == '~&':
            return mk_not(mk_and(left, right))
        if op == '|':
            return mk_or(left, right)
        return mk_and(left, right)

    def parse_thf_formula(self, env: Dict[str, FreeVar]) -> Parsed:
        left: Parsed = self.parse_thf_assoc(env)
        token: Token = self.peek()
        if token.kind == 'punct' and token.value in NONASSOC_OPS:
            self.advance()
            right: Term = self.finish(self.parse_thf_assoc(env))
            return self.combine(token.value, self.finish(left, token), right, token)
        return left

    def parse_thf_assoc(self, env: Dict[str, FreeVar]) -> Parsed:
        left: Parsed = self.parse_thf_eq(env)
        token: Token = self.peek()
        if token.kind == 'punct' and token.value in ASSOC_OPS:
            op: str = token.value
            while self.at(op):
                op_token: Token = self.advance()
                right: Term = self.finish(self.parse_thf_eq(env))
                left = self.combine(op, self.finish(left, op_token), right, op_token)
        return left

    def parse_thf_eq(self, env: Dict[str, FreeVar]) -> Parsed:
        left: Parsed = self.parse_thf_app(env)
        if self.at('=') or self.at('!='):
            token: Token = self.advance()
            lhs: Term = self.finish(left, token)
            rhs: Term = self.finish(self.parse_thf_app(env), token)
            if lhs.ty != rhs.ty:
                self.type_error(f"equation between {lhs.ty} and {rhs.ty}", token)
            equation: Term = mk_eq(lhs, rhs)
            return equation if token.value == '=' else mk_not(equation)
        return left

    def parse_thf_app(self, env: Dict[str, FreeVar]) -> Parsed:
        head: Parsed = self.parse_thf_unit(env)
        while self.at('@'):
            token: Token = self.advance()
            arg: Term = self.finish(self.parse_thf_unit(env), token)
            head = self.apply(head, arg, token)
        return head

    def parse_thf_unit(self, env: Dict[str, FreeVar]) -> Parsed:
        token: Token = self.peek()
        if token.kind == 'punct':
            if token.value == '(':
                inner: Token = self.peek(1)
                if inner.kind == 'punct' and self.peek(2).kind == 'punct' and self.peek(2).value == ')':
                    if inner.value in CONNECTIVE_TERMS:
                        self.position += 3
                        return CONNECTIVE_TERMS[inner.value]
                    if inner.value == '=':
                        self.position += 3
                        return _Polymorphic(EQUALS_NAME)
                self.advance()
                parsed: Parsed = self.parse_thf_formula(env)
                self.expect(')')
                return parsed
            if token.value == '~':
                self.advance()
                if self.at('@'):
                    return NOT
                operand: Term = self.finish(self.parse_thf_unit(env), token)
                if operand.ty != OMICRON:
                    self.type_error("negation of a non-formula", token)
                return mk_not(operand)
            if token.value in ('!', '?', '^'):
                return self.parse_thf_quantified(env)
            if token.value == '!!':
                self.advance()
                return _Polymorphic(FORALL_NAME)
            if token.value == '??':
                self.advance()
                return _Polymorphic(EXISTS_NAME)
            self.error("unexpected symbol", token)
        self.advance()
        if token.kind == 'upper_word':
            if token.value not in env:
                self.type_error(f"unbound variable {token.value}", token)
            return env[token.value]
        if token.kind == 'dollar_word':
            if token.value == '$true':
                return TRUE
            if token.value == '$false':
                return FALSE
            self.error(f"unsupported defined symbol {token.value}", token)
        if token.kind in ('lower_word', 'distinct', 'number'):
            self.check_reserved(token)
            if token.value not in self.problem.signature:
                self.type_error(f"undeclared constant {token.value}", token)
            return Const(token.value, self.problem.signature[token.value])
        self.error("unexpected token", token)

    def parse_variable_list(self, default_type: Optional[Type]) -> List[FreeVar]:
        self.expect('[')
        variables: List[FreeVar] = []
        while True:
            token: Token = self.advance()
            if token.kind != 'upper_word':
                self.error("expected a variable", token)
            if self.at(':'):
                self.advance()
                var_type: Type = self.parse_type()
            elif default_type is not None:
                var_type = default_type
            else:
                self.type_error(f"variable {token.value} needs a type", token)
            variables.append(FreeVar(token.value, var_type))
            if self.at(','):
                self.advance()
                continue
            break
        self.expect(']')
        return variables

    def parse_thf_quantified(self, env: Dict[str, FreeVar]) -> Term:
        token: Token = self.advance()
        variables: List[FreeVar] = self.parse_variable_list(None)
        self.expect(':')
        inner_env: Dict[str, FreeVar] = dict(env)
        for var in variables:
            inner_env[var.name] = var
        body: Term = self.finish(self.parse_thf_eq(inner_env), token)
        for var in reversed(variables):
            if token.value == '^':
                body = mk_lambda(var, body)
            else:
                if body.ty != OMICRON:
                    self.type_error("quantified body is not a formula", token)
                body = mk_quant(FORALL_NAME if token.value == '!' else EXISTS_NAME, var, body)
        return body

    # FOF / CNF formulas
    def parse_fof_formula(self, env: Dict[str, FreeVar], closing: bool) -> Term:
        left: Term = self.parse_fof_assoc(env, closing)
        token: Token = self.peek()
        if token.kind == 'punct' and token.value in NONASSOC_OPS:
            self.advance()
            right: Term = self.parse_fof_assoc(env, closing)
            return self.combine(token.value, left, right, token)
        return left

    def parse_fof_assoc(self, env: Dict[str, FreeVar], closing: bool) -> Term:
        left: Term = self.parse_fof_unit(env, closing)
        token: Token = self.peek()
        if token.kind == 'punct' and token.value in ASSOC_OPS:
            op: str = token.value
            while self.at(op):
                op_token: Token = self.advance()
                left = self.combine(op, left, self.parse_fof_unit(env, closing), op_token)
        return left

    def parse_fof_unit(self, env: Dict[str, FreeVar], closing: bool) -> Term:
        token: Token = self.peek()
        if token.kind == 'punct':
            if token.value == '(':
                self.advance()
                inner: Term = self.parse_fof_formula(env, closing)
                self.expect(')')
                return inner
            if token.value == '~':
                self.advance()
                return mk_not(self.parse_fof_unit(env, closing))
            if token.value in ('!', '?'):
                self.advance()
                variables: List[FreeVar] = self.parse_variable_list(IOTA)
                self.expect(':')
                inner_env: Dict[str, FreeVar] = dict(env)
                for var in variables:
                    inner_env[var.name] = var
                body: Term = self.parse_fof_unit(inner_env, closing)
                for var in reversed(variables):
                    body = mk_quant(FORALL_NAME if token.value == '!' else EXISTS_NAME, var, body)
                return body
            self.error("unexpected symbol", token)
        if token.kind == 'dollar_word' and token.value in ('$true', '$false'):
            self.advance()
            return TRUE if token.value == '$true' else FALSE
        left_token: Token = token
        if self.peek().kind == 'upper_word' or self.is_equation_ahead():
            lhs: Term = self.parse_fof_term(env, closing)
            if not (self.at('=') or self.at('!=')):
                self.error("expected '=' after a term", left_token)
            op: Token = self.advance()
            rhs: Term = self.parse_fof_term(env, closing)
            if lhs.ty != rhs.ty:
                self.type_error(f"equation between {lhs.ty} and {rhs.ty}", op)
            equation: Term = mk_eq(lhs, rhs)
            return equation if op.value == '=' else mk_not(equation)
        return self.parse_fof_application(env, closing, OMICRON)

    def is_equation_ahead(self) -> bool:
        '''
        Scan over a term (symbol with optional balanced argument list) and
        report whether an equality sign follows it.
        '''
        offset: int = 1
        if self.peek(offset).kind == 'punct' and self.peek(offset).value == '(':
            depth: int = 0
            while True:
                token: Token = self.peek(offset)
                if token.kind == 'eof':
                    return False
                if token.kind == 'punct' and token.value == '(':
                    depth += 1
                elif token.kind == 'punct' and token.value == ')':
                    depth -= 1
                    if depth == 0:
                        offset += 1
                        break
                offset += 1
        following: Token = self.peek(offset)
        return following.kind == 'punct' and following.value in ('=', '!=')

    def parse_fof_term(self, env: Dict[str, FreeVar], closing: bool) -> Term:
        token: Token = self.peek()
        if token.kind == 'upper_word':
            self.advance()
            if token.value in env:
                return env[token.value]
            existing: List[FreeVar] = [v for v in self.free_order if v.name == token.value]
            if existing:
                return existing[0]
            var: FreeVar = FreeVar(token.value, IOTA)
            self.free_order.append(var)
            return var
        return self.parse_fof_application(env, closing, IOTA)

    def parse_fof_application(self, env: Dict[str, FreeVar], closing: bool, result: Type) -> Term:
        token: Token = self.advance()
        if token.kind not in ('lower_word', 'number', 'distinct'):
            self.error("expected a symbol", token)
        self.check_reserved(token)
        args: List[Term] = []
        if self.at('('):
            self.advance()
            while True:
                args.append(self.parse_fof_term(env, closing))
                if self.at(','):
                    self.advance()
                    continue
                break
            self.expect(')')
        symbol_type: Type = self.symbol_type(token, [a.ty for a in args], result)
        term: Term = Const(token.value, symbol_type)
        for arg in args:
            term = App(term, arg)
        return term

    def symbol_type(self, token: Token, arg_types: List[Type], result: Type) -> Type:
        '''
        Declared type of a FOF symbol, or the inferred $i based one.
        '''
        inferred: Type = fun_type(*arg_types, result)
        declared: Optional[Type] = self.problem.signature.get(token.value)
        if declared is None:
            self.problem.signature[token.value] = inferred
            return inferred
        declared_args, declared_result = split_type(declared)
        if len(declared_args) != len(arg_types) or declared_result != result \
                or any(a != b for a, b in zip(declared_args, arg_types)):
            self.type_error(f"symbol {token.value} used as {inferred} but has type {declared}", token)
        return declared


def resolve_include(path: str, base_dir: str) -> str:
    '''
    Look an include up relative to base_dir, then relative to $TPTP.
    Returns '' when not found.
    '''
    candidates: List[str] = [os.path.join(base_dir, path)]
    if TPTP_ROOT:
        candidates.append(os.path.join(TPTP_ROOT, path))
    for candidate in candidates:
        if os.path.isfile(candidate):
            return os.path.abspath(candidate)
    return ''


def parse_problem(text: str, base_dir: str = '.', source: str = '', allow_reserved: bool = False) -> Problem:
    '''
    Parse TPTP text into a Problem.
    Args:
        text: str - THF0, FOF and / or CNF formulas.
        base_dir: str - directory includes are resolved against first.
        source: str - name recorded on the problem.
        allow_reserved: bool - accept generated symbol names (sk<N>, leoLift<N>, eps<N>),
            as found in printed translations.
    Raises:
        TptpSyntaxError, TptpTypeError, TptpIncludeError
    '''
    problem: Problem = TptpParser(base_dir, allow_reserved=allow_reserved).parse(text)
    problem.expected_status = status_header(text)
    problem.source = source
    logger.debug(f"parsed {len(problem.formulas)} formulas from {source or 'text'}")
    return problem


def parse_file(path: str, allow_reserved: bool = False) -> Problem:
    with open(path, 'r') as handle:
        text: str = handle.read()
    return parse_problem(text, os.path.dirname(os.path.abspath(path)), source=path, allow_reserved=allow_reserved)
