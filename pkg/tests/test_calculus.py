'''
Here in tests, we want to test the following:
1. Resolution of complementary literals yields the empty clause after simplification.
2. Resolution with a flexible atom yields a constraint that unification discharges; only the depth bound stalls it.
3. Factorisation merges unifiable literals and equates arguments of flexible ones.
4. Equality resolution turns clashing negative equations into failing constraints.
5. detectChoiceFn fires exactly on the choice axiom clause shape.
6. The choice rule instantiates the axiom of choice once per predicate and choice function.
7. LeibEQ and AndrEQ produce the equations their patterns stand for.
8. Primitive substitution emits one clause per logical head in each mode.
9. Simplification and subsumption, including a brute-force matching oracle.
10. Rule flags switch rules off.
11. Every rule conclusion holds in every size 2 model of its premises.
'''

# builtins
from collections import Counter
from itertools import product
import random
from typing import Dict, Iterator, List, Optional, Sequence, Set
from unittest import TestCase

# local
from hol_prover.basis.types import IOTA, OMICRON, FunType, Type, choice_type, fun_type
from hol_prover.basis.terms import (
    Term, Const, FreeVar, App, Substitution, TRUE,
    constants_of, mk_app, mk_eq, mk_forall, replace_free, spine,
)
from hol_prover.basis.unification import ExtFlags
from hol_prover.calculus import RuleContext, RuleFlags, RuleResult
from hol_prover.calculus.all_rules import GENERATING_RULES, RULES, get_rule
from hol_prover.calculus.choice_ops import (
    CHOICE_RULE, DETECT_RULE, ChoiceRegister, apply_choice, detect_choice_fn, match_choice_clause,
)
from hol_prover.calculus.clauses import Clause, Literal, Origin, make_clause
from hol_prover.calculus.equality_ops import ANDR_EQ_RULE, LEIB_EQ_RULE, andr_eq, leib_eq
from hol_prover.calculus.prim_subst_ops import prim_subst
from hol_prover.calculus.resolution_ops import equality_resolution, factorise, resolve, unify_constraints
from hol_prover.calculus.simplification import forward_subsumed, is_tautology, simplify, subsumes
from hol_prover.search.finite_models import Evaluator, Universe


I_TO_O: Type = FunType(IOTA, OMICRON)
I_TO_I: Type = FunType(IOTA, IOTA)

p: Const = Const('p', I_TO_O)
q: Const = Const('q', OMICRON)
r: Const = Const('r', fun_type(IOTA, IOTA, OMICRON))
g: Const = Const('g', I_TO_I)
a: Const = Const('a', IOTA)
b: Const = Const('b', IOTA)
c: Const = Const('c', IOTA)
sk: Const = Const('sk', choice_type(IOTA))
P: FreeVar = FreeVar('P', I_TO_O)
Q: FreeVar = FreeVar('Q', I_TO_O)
F: FreeVar = FreeVar('F', I_TO_I)
X: FreeVar = FreeVar('X', IOTA)
Y: FreeVar = FreeVar('Y', IOTA)


def pos(atom: Term) -> Literal:
    return Literal(atom, True)


def neg(atom: Term) -> Literal:
    return Literal(atom, False)


def clause(ctx: RuleContext, *literals: Literal) -> Clause:
    return make_clause(literals, Origin('input'), ctx.supply)


def models(clauses: Sequence[Clause], size: int, extra: Sequence[Clause] = (),
           choice_names: Set[str] = frozenset()) -> Iterator[Evaluator]:
    '''
    Every interpretation of the constants of clauses and extra, at domain size
    size, that satisfies clauses. choice_names are interpreted as choice functions.
    '''
    signature: Dict[str, Type] = {}
    for cl in list(clauses) + list(extra):
        for lit in cl.literals:
            for name, ty in constants_of(lit.atom).items():
                signature.setdefault(name, ty)
    names: List[str] = sorted(signature)
    universe: Universe = Universe(size)
    pools: List[List] = [
        list(universe.choice_functions(signature[name])) if name in choice_names else universe.domain(signature[name])
        for name in names
    ]
    for values in product(*pools):
        evaluator: Evaluator = Evaluator(universe, dict(zip(names, values)))
        if all(evaluator.clause(cl) for cl in clauses):
            yield evaluator


class TestResolution(TestCase):
    '''
    Tests for resolve, factorise, eq_res and unify
    '''
    def setUp(self) -> None:
        self.ctx: RuleContext = RuleContext()

    def test_1_complementary_units(self) -> None:
        '''
        Test case 1: [p c]^tt and [p c]^ff resolve to the empty clause.
        '''
        print('test_1_complementary_units: ', end="")
        result: RuleResult = resolve(clause(self.ctx, pos(App(p, c))), clause(self.ctx, neg(App(p, c))), self.ctx)
        self.assertEqual(len(result.new_clauses), 1)
        self.assertTrue(simplify(result.new_clauses[0]).is_empty)
        no_pair: RuleResult = resolve(clause(self.ctx, pos(App(p, c))), clause(self.ctx, pos(App(p, a))), self.ctx)
        self.assertFalse(no_pair.applicable)
        print('OK')

    def test_2_flexible_resolution(self) -> None:
        '''
        Test case 2: [p (F c)]^tt against [p (g c)]^ff leaves F c =? g c, solved by two preunifiers.
        '''
        print('test_2_flexible_resolution: ', end="")
        left: Clause = clause(self.ctx, pos(App(p, App(F, c))))
        right: Clause = clause(self.ctx, neg(App(p, App(g, c))))
        resolvent: Clause = resolve(left, right, self.ctx).new_clauses[0]
        self.assertEqual(len(resolvent.constraints), 1)
        self.assertEqual(resolvent.origin.rule, 'resolve')
        self.assertEqual(resolvent.origin.parents, (left.id, right.id))
        solved: RuleResult = unify_constraints(resolvent, self.ctx)
        self.assertEqual(solved.removed, [resolvent.id])
        self.assertEqual(len(solved.new_clauses), 2)
        self.assertTrue(all(cl.is_empty for cl in solved.new_clauses))
        print('OK')

    def test_3_factorise(self) -> None:
        '''
        Test case 3: [p X] | [p c] factors to [p c]; [P a] | [P b] factors with [a = b]^ff; p and q do not.
        '''
        print('test_3_factorise: ', end="")
        factors: List[Clause] = factorise(clause(self.ctx, pos(App(p, X)), pos(App(p, c))), self.ctx).new_clauses
        self.assertEqual(len(factors), 1)
        solved: List[Clause] = unify_constraints(factors[0], self.ctx).new_clauses
        self.assertEqual([lit.atom for lit in solved[0].literals], [App(p, c)])
        flex: List[Clause] = factorise(clause(self.ctx, pos(App(P, a)), pos(App(P, b))), self.ctx).new_clauses
        self.assertEqual(len(flex), 1)
        self.assertIn(neg(mk_eq(a, b)), flex[0].literals)
        self.assertIn(pos(App(P, a)), flex[0].literals)
        rigid: RuleResult = factorise(clause(self.ctx, pos(App(p, X)), pos(q)), self.ctx)
        self.assertFalse(rigid.applicable)
        print('OK')

    def test_4_equality_resolution(self) -> None:
        '''
        Test case 4: [a = b]^ff | [q]^tt becomes [q] plus a constraint that fails to unify.
        '''
        print('test_4_equality_resolution: ', end="")
        premise: Clause = clause(self.ctx, neg(mk_eq(a, b)), pos(q))
        derived: List[Clause] = equality_resolution(premise, self.ctx).new_clauses
        self.assertEqual(len(derived), 1)
        self.assertEqual(len(derived[0].constraints), 1)
        discharged: RuleResult = unify_constraints(derived[0], self.ctx)
        self.assertEqual(discharged.removed, [derived[0].id])
        self.assertFalse(discharged.new_clauses)
        self.assertFalse(discharged.stalled)
        reflexive: Clause = equality_resolution(clause(self.ctx, neg(mk_eq(X, c))), self.ctx).new_clauses[0]
        self.assertTrue(unify_constraints(reflexive, self.ctx).new_clauses[0].is_empty)
        print('OK')

    def test_5_truncated_unifiers_do_not_stall(self) -> None:
        '''
        Test case 5: F c =? g c cut at one preunifier is truncated but not stalled; at depth 1 it stalls.
        '''
        print('test_5_truncated_unifiers_do_not_stall: ', end="")
        capped: RuleContext = RuleContext(flags=RuleFlags(ext=ExtFlags(max_depth=2, max_solutions=1)))
        left: Clause = clause(capped, pos(App(p, App(F, c))))
        right: Clause = clause(capped, neg(App(p, App(g, c))))
        resolvent: Clause = resolve(left, right, capped).new_clauses[0]
        solved: RuleResult = unify_constraints(resolvent, capped)
        self.assertEqual(len(solved.new_clauses), 1)
        self.assertTrue(solved.truncated)
        self.assertEqual(solved.stalled, [])
        shallow: RuleContext = RuleContext(flags=RuleFlags(ext=ExtFlags(max_depth=1)))
        cut: RuleResult = unify_constraints(resolvent, shallow)
        self.assertEqual(cut.stalled, [resolvent])
        self.assertFalse(cut.truncated)
        print('OK')


class TestChoiceRules(TestCase):
    '''
    Tests for detectChoiceFn and choice
    '''
    def setUp(self) -> None:
        self.ctx: RuleContext = RuleContext()

    def test_1_detect_choice_axiom(self) -> None:
        '''
        Test case 1: [P X]^ff | [P (sk P)]^tt is removed and sk registered; other shapes are left alone.
        '''
        print('test_1_detect_choice_axiom: ', end="")
        axiom: Clause = clause(self.ctx, pos(App(P, App(sk, P))), neg(App(P, X)))
        result: RuleResult = detect_choice_fn(axiom, self.ctx)
        self.assertEqual(result.removed, [axiom.id])
        self.assertEqual(result.register_updates, [sk])
        self.assertIn(sk, self.ctx.register)
        again: RuleResult = detect_choice_fn(axiom, self.ctx)
        self.assertEqual(again.register_updates, [])
        self.assertFalse(detect_choice_fn(clause(self.ctx, pos(App(p, c))), self.ctx).applicable)
        mixed: Clause = clause(self.ctx, neg(App(P, X)), pos(App(Q, App(sk, Q))))
        self.assertFalse(detect_choice_fn(mixed, self.ctx).applicable)
        print('OK')

    def test_2_detection_is_exact(self) -> None:
        '''
        Test case 2: over all two-literal clauses of a micro signature, detection matches the axiom shape only.
        '''
        print('test_2_detection_is_exact: ', end="")
        atoms: List[Term] = [
            App(P, X), App(P, Y), App(Q, X), App(P, c), App(p, X),
            App(P, App(sk, P)), App(Q, App(sk, Q)), App(P, App(sk, Q)), App(p, App(sk, P)),
        ]
        fired: int = 0
        for first, second in product(atoms, repeat=2):
            for first_sign, second_sign in product((True, False), repeat=2):
                candidate: Clause = clause(self.ctx, Literal(first, first_sign), Literal(second, second_sign))
                expected: bool = False
                if first_sign != second_sign:
                    negative, positive = (second, first) if first_sign else (first, second)
                    head, args = spine(negative)
                    expected = (
                        isinstance(head, FreeVar) and isinstance(args[0], FreeVar)
                        and positive == App(head, App(sk, head))
                    )
                found: Optional[Const] = match_choice_clause(candidate)
                self.assertEqual(found is not None, expected, str(candidate))
                fired += expected
        self.assertEqual(fired, 6)
        print('OK')

    def test_3_choice_instances(self) -> None:
        '''
        Test case 3: [q (sk p)]^tt with sk registered emits [p Y]^ff | [p (sk p)]^tt exactly once.
        '''
        print('test_3_choice_instances: ', end="")
        self.ctx.register.register(sk)
        premise: Clause = clause(self.ctx, pos(mk_app(r, [a, App(sk, p)])))
        result: RuleResult = apply_choice(premise, self.ctx)
        self.assertEqual(len(result.new_clauses), 1)
        instance: Clause = result.new_clauses[0]
        negative: Literal = next(lit for lit in instance.literals if not lit.positive)
        positive: Literal = next(lit for lit in instance.literals if lit.positive)
        self.assertEqual(spine(negative.atom)[0], p)
        self.assertIsInstance(spine(negative.atom)[1][0], FreeVar)
        self.assertEqual(positive.atom, App(p, App(sk, p)))
        self.assertEqual(instance.origin.rule, CHOICE_RULE)
        self.assertFalse(apply_choice(premise, self.ctx).new_clauses)
        print('OK')

    def test_4_choice_side_conditions(self) -> None:
        '''
        Test case 4: a free variable head mints eps, bound arguments and bare variables emit nothing.
        '''
        print('test_4_choice_side_conditions: ', end="")
        E: FreeVar = FreeVar('E', choice_type(IOTA))
        minted: RuleResult = apply_choice(clause(self.ctx, pos(App(p, App(E, p)))), self.ctx)
        self.assertEqual(len(minted.new_clauses), 1)
        self.assertEqual(len(minted.register_updates), 1)
        self.assertTrue(minted.register_updates[0].name.startswith('eps'))
        self.ctx.register.register(sk)
        bound: Clause = clause(self.ctx, pos(mk_forall(X, App(p, App(sk, App(r, X))))))
        self.assertFalse(apply_choice(bound, self.ctx).new_clauses)
        bare: RuleResult = apply_choice(clause(self.ctx, pos(App(P, App(sk, P)))), self.ctx)
        self.assertFalse(bare.new_clauses)
        self.assertTrue(bare.throttled)
        self.assertFalse(apply_choice(clause(self.ctx, pos(App(p, c))), self.ctx).applicable)
        print('OK')

    def test_5_several_choice_functions(self) -> None:
        '''
        Test case 5: with sk and sk2 registered, sk2 p is instantiated with sk2 only and E p with both.
        '''
        print('test_5_several_choice_functions: ', end="")
        sk2: Const = Const('sk2', choice_type(IOTA))
        self.ctx.register.register(sk)
        self.ctx.register.register(sk2)
        own: RuleResult = apply_choice(clause(self.ctx, pos(mk_app(r, [a, App(sk2, p)]))), self.ctx)
        self.assertEqual(len(own.new_clauses), 1)
        positive: Literal = next(lit for lit in own.new_clauses[0].literals if lit.positive)
        self.assertEqual(positive.atom, App(p, App(sk2, p)))
        fresh: RuleContext = RuleContext()
        fresh.register.register(sk)
        fresh.register.register(sk2)
        E: FreeVar = FreeVar('E', choice_type(IOTA))
        flexible: RuleResult = apply_choice(clause(fresh, pos(App(p, App(E, p)))), fresh)
        heads: Set[str] = {
            spine(spine(lit.atom)[1][0])[0].name
            for instance in flexible.new_clauses for lit in instance.literals if lit.positive
        }
        self.assertEqual(heads, {'sk', 'sk2'})
        self.assertEqual(flexible.register_updates, [])
        print('OK')


class TestEqualityRules(TestCase):
    '''
    Tests for LeibEQ and AndrEQ
    '''
    def setUp(self) -> None:
        self.ctx: RuleContext = RuleContext()

    def test_1_leib_eq(self) -> None:
        '''
        Test case 1: [P a]^ff | [P b]^tt | [q]^tt gives [a = b]^tt | [q]^tt; a constant p gives nothing.
        '''
        print('test_1_leib_eq: ', end="")
        result: RuleResult = leib_eq(clause(self.ctx, neg(App(P, a)), pos(App(P, b))), self.ctx)
        self.assertEqual([cl.literals for cl in result.new_clauses], [(pos(mk_eq(a, b)),)])
        self.assertEqual(result.new_clauses[0].origin.rule, LEIB_EQ_RULE)
        with_rest: RuleResult = leib_eq(clause(self.ctx, pos(q), neg(App(P, a)), pos(App(P, b))), self.ctx)
        self.assertEqual(set(with_rest.new_clauses[0].literals), {pos(q), pos(mk_eq(a, b))})
        self.assertFalse(leib_eq(clause(self.ctx, neg(App(p, a)), pos(App(p, b))), self.ctx).applicable)
        print('OK')

    def test_2_andr_eq(self) -> None:
        '''
        Test case 2: [R a a]^ff gives the empty clause, [q] | [R c c]^ff gives [q], [R a b]^ff nothing.
        '''
        print('test_2_andr_eq: ', end="")
        R: FreeVar = FreeVar('R', fun_type(IOTA, IOTA, OMICRON))
        unit: RuleResult = andr_eq(clause(self.ctx, neg(mk_app(R, [a, a]))), self.ctx)
        self.assertEqual(len(unit.new_clauses), 1)
        self.assertTrue(unit.new_clauses[0].is_empty)
        self.assertEqual(unit.new_clauses[0].origin.rule, ANDR_EQ_RULE)
        rest: RuleResult = andr_eq(clause(self.ctx, pos(q), neg(mk_app(R, [c, c]))), self.ctx)
        self.assertEqual(rest.new_clauses[0].literals, (pos(q),))
        self.assertFalse(andr_eq(clause(self.ctx, neg(mk_app(R, [a, b]))), self.ctx).applicable)
        print('OK')


class TestPrimSubst(TestCase):
    '''
    Tests for prim_subst
    '''
    def test_1_modes(self) -> None:
        '''
        Test case 1: [P]^ff with P: $o gives no clause in mode 0, four in mode 1 and six in mode 2.
        '''
        print('test_1_modes: ', end="")
        ctx: RuleContext = RuleContext()
        premise: Clause = clause(ctx, neg(FreeVar('B', OMICRON)))
        self.assertFalse(prim_subst(premise, ctx, 0).applicable)
        self.assertEqual(len(prim_subst(premise, ctx, 1).new_clauses), 4)
        self.assertEqual(len(prim_subst(premise, ctx, 2).new_clauses), 6)
        heads: Set[str] = {spine(cl.literals[0].atom)[0].name for cl in prim_subst(premise, ctx, 2).new_clauses}
        self.assertEqual(heads, {'~', '&', '|', '=', '!!', '??'})
        print('OK')

    def test_2_flag_mode(self) -> None:
        '''
        Test case 2: without an explicit mode the strategy's ps_mode is used.
        '''
        print('test_2_flag_mode: ', end="")
        ctx: RuleContext = RuleContext(flags=RuleFlags(ps_mode=1))
        premise: Clause = clause(ctx, pos(App(P, a)))
        self.assertEqual(len(prim_subst(premise, ctx).new_clauses), 4)
        self.assertFalse(get_rule('prim_subst')([premise], RuleContext(flags=RuleFlags(ps_mode=0))).applicable)
        print('OK')


class TestSimplification(TestCase):
    '''
    Tests for simplify and subsumes
    '''
    def setUp(self) -> None:
        self.ctx: RuleContext = RuleContext()

    def test_1_simplify(self) -> None:
        '''
        Test case 1: trivial literals are dropped and tautologies deleted.
        '''
        print('test_1_simplify: ', end="")
        simplified: Clause = simplify(clause(self.ctx, neg(mk_eq(a, a)), pos(q), pos(q)))
        self.assertEqual(simplified.literals, (pos(q),))
        self.assertIsNone(simplify(clause(self.ctx, pos(mk_eq(a, a)))))
        self.assertIsNone(simplify(clause(self.ctx, pos(q), neg(q))))
        self.assertTrue(is_tautology(clause(self.ctx, pos(TRUE))))
        untouched: Clause = clause(self.ctx, pos(App(p, c)))
        self.assertIs(simplify(untouched), untouched)
        print('OK')

    def test_2_subsumes(self) -> None:
        '''
        Test case 2: [p X] subsumes [p c] | [q]^ff but not the other way round.
        '''
        print('test_2_subsumes: ', end="")
        general: Clause = clause(self.ctx, pos(App(p, X)))
        specific: Clause = clause(self.ctx, pos(App(p, c)), neg(q))
        self.assertTrue(subsumes(general, specific))
        self.assertFalse(subsumes(clause(self.ctx, pos(App(p, c))), clause(self.ctx, pos(App(p, X)))))
        self.assertIs(forward_subsumed(specific, [general]), general)
        symmetric: Clause = clause(self.ctx, pos(mk_eq(X, a)))
        self.assertTrue(subsumes(symmetric, clause(self.ctx, pos(mk_eq(b, c)), pos(mk_eq(a, b)))))
        print('OK')

    def test_3_subsumption_oracle(self) -> None:
        '''
        Test case 3: on 1000 random clause pairs subsumes agrees with brute-force matching.
        '''
        print('test_3_subsumption_oracle: ', end="")
        rng: random.Random = random.Random(99)
        arguments: List[Term] = [a, b, c, X, Y]

        def random_clause(size: int) -> Clause:
            literals: List[Literal] = []
            for _ in range(size):
                if rng.random() < 0.5:
                    atom: Term = App(p, rng.choice(arguments))
                else:
                    atom = mk_app(r, [rng.choice(arguments), rng.choice(arguments)])
                literals.append(Literal(atom, rng.random() < 0.5))
            return clause(self.ctx, *literals)

        for _ in range(1000):
            general: Clause = random_clause(rng.randint(1, 2))
            specific: Clause = random_clause(rng.randint(1, 3))
            variables: List[FreeVar] = [FreeVar(name, IOTA) for name in sorted(general.free_vars())]
            targets: Set[Term] = {a, b, c} | {FreeVar(name, IOTA) for name in specific.free_vars()}
            available: Counter = Counter((lit.atom, lit.positive) for lit in specific.literals)
            expected: bool = False
            for values in product(sorted(targets, key=str), repeat=len(variables)):
                subst: Substitution = Substitution(dict(zip(variables, values)))
                needed: Counter = Counter(
                    (replace_free(lit.atom, subst), lit.positive) for lit in general.literals
                )
                if not needed - available:
                    expected = True
                    break
            self.assertEqual(subsumes(general, specific), expected, f"{general} / {specific}")
        print('OK')


class TestRuleRegistry(TestCase):
    '''
    Tests for the rule registry and rule flags
    '''
    def test_1_registry(self) -> None:
        '''
        Test case 1: every generating rule is registered and unknown names raise KeyError.
        '''
        print('test_1_registry: ', end="")
        for name in GENERATING_RULES:
            self.assertIn(name, RULES)
        self.assertEqual(get_rule('resolve').arity, 2)
        with self.assertRaises(KeyError):
            get_rule('paramodulation')
        with self.assertRaises(ValueError):
            get_rule('resolve')([], RuleContext())
        print('OK')

    def test_2_flags_disable_rules(self) -> None:
        '''
        Test case 2: -nuc, -nrleq and -nraeq switch off exactly their rules.
        '''
        print('test_2_flags_disable_rules: ', end="")
        off: RuleContext = RuleContext(flags=RuleFlags(choice=False, leib_eq=False, andr_eq=False))
        R: FreeVar = FreeVar('R', fun_type(IOTA, IOTA, OMICRON))
        axiom: Clause = clause(off, neg(App(P, X)), pos(App(P, App(sk, P))))
        self.assertFalse(get_rule(DETECT_RULE)([axiom], off).applicable)
        self.assertFalse(get_rule(LEIB_EQ_RULE)([clause(off, neg(App(P, a)), pos(App(P, b)))], off).applicable)
        self.assertFalse(get_rule(ANDR_EQ_RULE)([clause(off, neg(mk_app(R, [a, a])))], off).applicable)
        self.assertEqual(len(off.register.symbols()), 0)
        on: RuleContext = RuleContext()
        self.assertTrue(get_rule(DETECT_RULE)([axiom], on).applicable)
        print('OK')


class TestSoundness(TestCase):
    '''
    Every conclusion is true in every size 2 model of its premises
    '''
    def check(self, premises: List[Clause], conclusions: List[Clause], choice_names: Set[str] = frozenset()) -> None:
        self.assertTrue(conclusions)
        checked: int = 0
        for evaluator in models(premises, 2, conclusions, choice_names):
            for conclusion in conclusions:
                self.assertTrue(evaluator.clause(conclusion), f"{conclusion} from {[str(c) for c in premises]}")
            checked += 1
        self.assertGreater(checked, 0)

    def test_1_binary_rules(self) -> None:
        '''
        Test case 1: resolution and the solved resolvents.
        '''
        print('test_1_binary_rules: ', end="")
        ctx: RuleContext = RuleContext()
        left: Clause = clause(ctx, pos(App(p, X)), pos(mk_app(r, [X, a])))
        right: Clause = clause(ctx, neg(App(p, c)), pos(q))
        resolvents: List[Clause] = resolve(left, right, ctx).new_clauses
        self.check([left, right], resolvents)
        solved: List[Clause] = [s for cl in resolvents for s in unify_constraints(cl, ctx).new_clauses]
        self.check([left, right], solved)
        print('OK')

    def test_2_unary_rules(self) -> None:
        '''
        Test case 2: factorisation, LeibEQ, AndrEQ and primitive substitution.
        '''
        print('test_2_unary_rules: ', end="")
        ctx: RuleContext = RuleContext()
        R: FreeVar = FreeVar('R', fun_type(IOTA, IOTA, OMICRON))
        cases = [
            (clause(ctx, pos(App(p, X)), pos(App(p, c)), pos(q)), factorise),
            (clause(ctx, pos(q), neg(App(P, a)), pos(App(P, b))), leib_eq),
            (clause(ctx, pos(q), neg(mk_app(R, [c, c]))), andr_eq),
            (clause(ctx, pos(App(P, a)), neg(q)), lambda cl, context: prim_subst(cl, context, 2)),
        ]
        for premise, rule in cases:
            self.check([premise], rule(premise, ctx).new_clauses)
        print('OK')

    def test_3_choice_rule(self) -> None:
        '''
        Test case 3: choice instances hold when sk is read as a choice function.
        '''
        print('test_3_choice_rule: ', end="")
        ctx: RuleContext = RuleContext(register=ChoiceRegister())
        ctx.register.register(sk)
        premise: Clause = clause(ctx, pos(App(p, App(sk, p))), neg(q))
        self.check([premise], apply_choice(premise, ctx).new_clauses, {'sk'})
        print('OK')
