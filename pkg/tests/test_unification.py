'''
Here in tests, we want to test the following:
1. Trivial and eta constraints are solved with the empty substitution.
2. F c =? g c enumerates imitation solutions at depth 2 and none at depth 1.
3. Every returned preunifier makes both sides equal.
4. Solutions found at depth d are found at depth d + 1.
5. Flex-flex pairs are returned as residual constraints.
6. On random first-order problems the engine agrees with a first-order unification oracle.
7. match_term binds pattern variables one way only.
8. Stopping at max_solutions is told apart from the depth bound.
9. A passed deadline stops the enumeration.
'''

# builtins
import random
import time
from typing import Dict, List, Optional, Set, Tuple
from unittest import TestCase

# local
from hol_prover.basis.types import IOTA, OMICRON, FunType, Type, fun_type
from hol_prover.basis.terms import (
    Term, Const, FreeVar, Abs, App, BoundVar, FreshSupply, spine, substitute, mk_app,
)
from hol_prover.basis.unification import ExtFlags, PreunifyResult, Unifier, preunify, unify_terms, match_term
from hol_prover.common.deadline import DeadlineExceeded


I_TO_I: Type = FunType(IOTA, IOTA)
FIRST_ORDER: ExtFlags = ExtFlags(boolean_ext=False, functional_ext=False, max_depth=3)


def solves(unifier: Unifier, s: Term, t: Term) -> bool:
    return substitute(s, unifier.substitution) == substitute(t, unifier.substitution) or bool(unifier.flex_flex)


def random_first_order(rng: random.Random, depth: int) -> Term:
    '''
    A first-order term over a, b, f/1, g/2 and the variables X, Y, Z.
    '''
    if depth == 0 or rng.random() < 0.3:
        return rng.choice([
            Const('a', IOTA), Const('b', IOTA),
            FreeVar('X', IOTA), FreeVar('Y', IOTA), FreeVar('Z', IOTA),
        ])
    if rng.random() < 0.5:
        return App(Const('f', I_TO_I), random_first_order(rng, depth - 1))
    return mk_app(Const('g', fun_type(IOTA, IOTA, IOTA)),
                  [random_first_order(rng, depth - 1), random_first_order(rng, depth - 1)])


def _walk(t: Term, bindings: Dict[str, Term]) -> Term:
    while isinstance(t, FreeVar) and t.name in bindings:
        t = bindings[t.name]
    return t


def _occurs(name: str, t: Term, bindings: Dict[str, Term]) -> bool:
    t = _walk(t, bindings)
    if isinstance(t, FreeVar):
        return t.name == name
    return any(_occurs(name, arg, bindings) for arg in spine(t)[1])


def reference_unifiable(s: Term, t: Term) -> bool:
    '''
    Robinson unification with occurs check on first-order terms.
    '''
    bindings: Dict[str, Term] = {}
    pending: List[Tuple[Term, Term]] = [(s, t)]
    while pending:
        left, right = pending.pop()
        left, right = _walk(left, bindings), _walk(right, bindings)
        if left == right:
            continue
        if isinstance(left, FreeVar) or isinstance(right, FreeVar):
            var, other = (left, right) if isinstance(left, FreeVar) else (right, left)
            if _occurs(var.name, other, bindings):
                return False
            bindings[var.name] = other
            continue
        left_head, left_args = spine(left)
        right_head, right_args = spine(right)
        if left_head != right_head or len(left_args) != len(right_args):
            return False
        pending.extend(zip(left_args, right_args))
    return True


class TestPreunify(TestCase):
    '''
    Tests for preunify
    '''
    def setUp(self) -> None:
        self.c: Const = Const('c', IOTA)
        self.g: Const = Const('g', I_TO_I)
        self.F: FreeVar = FreeVar('F', I_TO_I)

    def test_1_trivial_and_eta(self) -> None:
        '''
        Test case 1: c =? c and lambda x. p x =? p have one empty solution.
        '''
        print('test_1_trivial_and_eta: ', end="")
        result: PreunifyResult = unify_terms(self.c, self.c)
        self.assertEqual(len(result.solutions), 1)
        self.assertFalse(result.solutions[0].substitution)
        p: Const = Const('p', FunType(IOTA, OMICRON))
        result = unify_terms(Abs(IOTA, App(p, BoundVar(0, IOTA))), p)
        self.assertEqual(len(result.solutions), 1)
        self.assertTrue(result.solutions[0].is_complete)
        print('OK')

    def test_2_flex_rigid_depth_two(self) -> None:
        '''
        Test case 2: F c =? g c has the solutions F -> g and F -> lambda x. g c at depth 2.
        '''
        print('test_2_flex_rigid_depth_two: ', end="")
        lhs: Term = App(self.F, self.c)
        rhs: Term = App(self.g, self.c)
        result: PreunifyResult = preunify([(lhs, rhs)], ExtFlags(max_depth=2), FreshSupply())
        bindings: Set[Term] = {u.substitution.get('F') for u in result.solutions}
        self.assertEqual(bindings, {self.g, Abs(IOTA, App(self.g, self.c))})
        for unifier in result.solutions:
            self.assertTrue(solves(unifier, lhs, rhs))
        shallow: PreunifyResult = preunify([(lhs, rhs)], ExtFlags(max_depth=1), FreshSupply())
        self.assertFalse(shallow.solutions)
        self.assertTrue(shallow.depth_exhausted)
        self.assertFalse(shallow.truncated)
        self.assertFalse(shallow.failed)
        print('OK')

    def test_3_definite_failure(self) -> None:
        '''
        Test case 3: clashing constants fail without exhausting the depth.
        '''
        print('test_3_definite_failure: ', end="")
        result: PreunifyResult = unify_terms(App(self.g, self.c), self.c)
        self.assertTrue(result.failed)
        result = unify_terms(FreeVar('X', IOTA), App(self.g, FreeVar('X', IOTA)))
        self.assertTrue(result.failed)
        print('OK')

    def test_4_depth_monotonicity(self) -> None:
        '''
        Test case 4: every solution at depth d is also found at depth d + 1.
        '''
        print('test_4_depth_monotonicity: ', end="")
        h: Const = Const('h', fun_type(IOTA, IOTA, IOTA))
        X: FreeVar = FreeVar('X', IOTA)
        problems: List[Tuple[Term, Term]] = [
            (App(self.F, self.c), App(self.g, self.c)),
            (App(self.F, X), mk_app(h, [X, self.c])),
            (App(self.F, App(self.g, self.c)), App(self.g, App(self.g, self.c))),
        ]
        for lhs, rhs in problems:
            for depth in (1, 2, 3):
                low = {u.key() for u in preunify([(lhs, rhs)], ExtFlags(max_depth=depth, max_solutions=64)).solutions}
                high = {u.key() for u in preunify([(lhs, rhs)], ExtFlags(max_depth=depth + 1, max_solutions=64)).solutions}
                self.assertTrue(low <= high, f"{lhs} =? {rhs} at depth {depth}")
        print('OK')

    def test_5_flex_flex_residual(self) -> None:
        '''
        Test case 5: F c =? G c is left as a flex-flex pair.
        '''
        print('test_5_flex_flex_residual: ', end="")
        G: FreeVar = FreeVar('G', I_TO_I)
        result: PreunifyResult = unify_terms(App(self.F, self.c), App(G, self.c))
        self.assertEqual(len(result.solutions), 1)
        self.assertEqual(len(result.solutions[0].flex_flex), 1)
        self.assertFalse(result.solutions[0].is_complete)
        print('OK')

    def test_6_first_order_oracle(self) -> None:
        '''
        Test case 6: on 1000 random first-order problems the engine agrees with Robinson unification.
        '''
        print('test_6_first_order_oracle: ', end="")
        rng: random.Random = random.Random(1234)
        for _ in range(1000):
            s: Term = random_first_order(rng, 3)
            t: Term = random_first_order(rng, 3)
            result: PreunifyResult = preunify([(s, t)], FIRST_ORDER, FreshSupply())
            expected: bool = reference_unifiable(s, t)
            self.assertEqual(bool(result.solutions), expected, f"{s} =? {t}")
            self.assertFalse(result.depth_exhausted)
            for unifier in result.solutions:
                self.assertEqual(substitute(s, unifier.substitution), substitute(t, unifier.substitution))
        print('OK')

    def test_7_truncation_is_not_depth(self) -> None:
        '''
        Test case 7: stopping at max_solutions marks the result truncated, not depth exhausted.
        '''
        print('test_7_truncation_is_not_depth: ', end="")
        lhs: Term = App(self.F, self.c)
        rhs: Term = App(self.g, self.c)
        result: PreunifyResult = preunify([(lhs, rhs)], ExtFlags(max_depth=2, max_solutions=1), FreshSupply())
        self.assertEqual(len(result.solutions), 1)
        self.assertTrue(result.truncated)
        self.assertFalse(result.depth_exhausted)
        self.assertFalse(result.failed)
        complete: PreunifyResult = preunify([(lhs, rhs)], ExtFlags(max_depth=2), FreshSupply())
        self.assertFalse(complete.truncated)
        print('OK')

    def test_8_deadline(self) -> None:
        '''
        Test case 8: a deadline that has passed stops the enumeration, no deadline never does.
        '''
        print('test_8_deadline: ', end="")
        lhs: Term = App(self.F, App(self.g, self.c))
        rhs: Term = App(self.g, App(self.g, self.c))
        with self.assertRaises(DeadlineExceeded):
            preunify([(lhs, rhs)], ExtFlags(max_depth=4), FreshSupply(), time.monotonic() - 1.0)
        with self.assertRaises(DeadlineExceeded):
            unify_terms(lhs, rhs, ExtFlags(max_depth=4), FreshSupply(), time.monotonic() - 1.0)
        self.assertTrue(preunify([(lhs, rhs)], ExtFlags(max_depth=4), FreshSupply(), None).solutions)
        print('OK')


class TestMatchTerm(TestCase):
    '''
    Tests for match_term
    '''
    def test_1_one_way_matching(self) -> None:
        '''
        Test case 1: pattern variables bind, target variables behave like constants.
        '''
        print('test_1_one_way_matching: ', end="")
        f: Const = Const('f', fun_type(IOTA, IOTA, IOTA))
        X: FreeVar = FreeVar('X', IOTA)
        Y: FreeVar = FreeVar('Y', IOTA)
        a: Const = Const('a', IOTA)
        bindings: Optional[Dict[str, Term]] = match_term(mk_app(f, [X, X]), mk_app(f, [a, a]))
        self.assertEqual(bindings, {'X': a})
        self.assertIsNone(match_term(mk_app(f, [X, X]), mk_app(f, [a, Y])))
        self.assertIsNone(match_term(mk_app(f, [a, a]), mk_app(f, [X, X])))
        print('OK')
