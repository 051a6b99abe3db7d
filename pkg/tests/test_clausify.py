'''
Here in tests, we want to test the following:
1. A negated excluded middle gives the two complementary unit clauses.
2. Conjunctions under a universal are split into unit clauses.
3. Skolemization replaces existentials by fresh Skolem terms over the universals in scope.
4. An axiom asserting a choice function gives the detectChoiceFn premise shape.
5. Definitions are expanded before clausification.
6. Clausification preserves satisfiability at domain size 2 (finite-model oracle).
7. Lazy clausification unfolds equations by Bool and Func extensionality and adds Leibniz readings.
8. Input clauses cite the formula they come from.
9. Literal atoms must be formulas.
'''

# builtins
from typing import List
from unittest import TestCase

# local
from hol_prover.basis.types import IOTA, OMICRON, FunType, choice_type
from hol_prover.basis.terms import Const, FreeVar, FreshSupply, HolTypeError, spine, constants_of, mk_eq
from hol_prover.basis.unification import ExtFlags
from hol_prover.calculus import RuleContext, RuleFlags
from hol_prover.calculus.choice_ops import match_choice_clause
from hol_prover.calculus.clauses import Clause, Literal, Origin, make_clause
from hol_prover.calculus.clausify import (
    BOOL_EXT_RULE, FUNC_EXT_RULE, LEIBNIZ_RULE, clausify, normalize_clause, skolemize,
)
from hol_prover.parser.thf_parser import Problem, parse_problem
from hol_prover.search.finite_models import finite_model_oracle, problem_model


def clauses_of(text: str, leibniz_expand: bool = False) -> List[Clause]:
    ctx: RuleContext = RuleContext(flags=RuleFlags(leibniz_expand=leibniz_expand))
    return clausify(parse_problem(text), ctx)


class TestClausify(TestCase):
    '''
    Tests for clausify and skolemize
    '''
    def test_1_excluded_middle(self) -> None:
        '''
        Test case 1: the conjecture p | ~p gives [p]^ff and [p]^tt, both marked as conjecture clauses.
        '''
        print('test_1_excluded_middle: ', end="")
        clauses: List[Clause] = clauses_of("thf(p_type, type, p: $o).\nthf(em, conjecture, p | ~ p).\n")
        self.assertEqual(len(clauses), 2)
        p: Const = Const('p', OMICRON)
        signs = sorted((c.literals[0].atom == p, c.literals[0].positive) for c in clauses)
        self.assertEqual(signs, [(True, False), (True, True)])
        self.assertTrue(all(c.conjecture for c in clauses))
        self.assertTrue(all(len(c.literals) == 1 for c in clauses))
        print('OK')

    def test_2_conjunction_split(self) -> None:
        '''
        Test case 2: forall X. p X & q X gives [p X]^tt and [q X]^tt.
        '''
        print('test_2_conjunction_split: ', end="")
        clauses: List[Clause] = clauses_of(
            "thf(p_type, type, p: $i > $o).\nthf(q_type, type, q: $i > $o).\n"
            "thf(ax, axiom, ![X:$i]: ((p @ X) & (q @ X))).\n"
        )
        self.assertEqual(len(clauses), 2)
        heads = sorted(spine(c.literals[0].atom)[0].name for c in clauses)
        self.assertEqual(heads, ['p', 'q'])
        for clause in clauses:
            self.assertTrue(clause.literals[0].positive)
            self.assertIsInstance(spine(clause.literals[0].atom)[1][0], FreeVar)
            self.assertFalse(clause.conjecture)
        print('OK')

    def test_3_skolemization(self) -> None:
        '''
        Test case 3: exists X. p X becomes p sk, forall Y. exists X. r Y X becomes r Y (sk Y).
        '''
        print('test_3_skolemization: ', end="")
        clauses: List[Clause] = clauses_of(
            "thf(p_type, type, p: $i > $o).\nthf(ax, axiom, ?[X:$i]: (p @ X)).\n"
        )
        head, args = spine(clauses[0].literals[0].atom)
        self.assertEqual(head.name, 'p')
        self.assertIsInstance(args[0], Const)
        self.assertTrue(args[0].name.startswith('sk'))
        clauses = clauses_of(
            "thf(r_type, type, r: $i > $i > $o).\nthf(ax, axiom, ![Y:$i]: ?[X:$i]: (r @ Y @ X)).\n"
        )
        _, (first, second) = spine(clauses[0].literals[0].atom)
        self.assertIsInstance(first, FreeVar)
        sk_head, sk_args = spine(second)
        self.assertTrue(sk_head.name.startswith('sk'))
        self.assertEqual(sk_args, [first])
        print('OK')

    def test_4_skolem_symbols_are_fresh(self) -> None:
        '''
        Test case 4: two existentials get two different Skolem symbols.
        '''
        print('test_4_skolem_symbols_are_fresh: ', end="")
        problem: Problem = parse_problem(
            "thf(p_type, type, p: $i > $o).\nthf(a, axiom, (?[X:$i]: (p @ X)) & (?[X:$i]: ~ (p @ X))).\n"
        )
        term = skolemize(problem.formulas[1].formula, True, FreshSupply())
        symbols = [name for name in constants_of(term) if name.startswith('sk')]
        self.assertEqual(len(symbols), 2)
        print('OK')

    def test_5_choice_axiom_shape(self) -> None:
        '''
        Test case 5: asserting a choice function gives [P X]^ff | [P (sk P)]^tt with sk: ($i > $o) > $i.
        '''
        print('test_5_choice_axiom_shape: ', end="")
        clauses: List[Clause] = clauses_of(
            "thf(ac, axiom, ?[E:(($i>$o)>$i)]: ![P:($i>$o)]: ((?[X:$i]: (P@X)) => (P @ (E@P)))).\n"
        )
        self.assertEqual(len(clauses), 1)
        symbol = match_choice_clause(clauses[0])
        self.assertIsNotNone(symbol)
        self.assertTrue(symbol.name.startswith('sk'))
        self.assertEqual(symbol.const_type, choice_type(IOTA))
        print('OK')

    def test_6_definitions_expanded(self) -> None:
        '''
        Test case 6: a defined symbol does not survive clausification.
        '''
        print('test_6_definitions_expanded: ', end="")
        clauses: List[Clause] = clauses_of(
            "thf(a_type, type, a: $i).\nthf(b_type, type, b: $i).\n"
            "thf(leq_type, type, leq: $i > $i > $o).\n"
            "thf(leq_def, definition, leq = (^[X:$i,Y:$i]: ![P:$i>$o]: ((P@X) => (P@Y)))).\n"
            "thf(goal, conjecture, (leq @ a @ b) => (a = b)).\n"
        )
        self.assertTrue(clauses)
        for clause in clauses:
            for lit in clause.literals:
                self.assertNotIn('leq', constants_of(lit.atom))
        flex = [c for c in clauses if any(lit.is_flex for lit in c.literals)]
        self.assertEqual(len(flex), 1)
        self.assertEqual(len(flex[0].literals), 2)
        print('OK')

    def test_7_satisfiability_preserved(self) -> None:
        '''
        Test case 7: the oracle finds a size 2 model of the problem iff it finds one of its clauses.
        '''
        print('test_7_satisfiability_preserved: ', end="")
        problems: List[str] = [
            "thf(p_type, type, p: $i > $o).\nthf(a, axiom, ?[X:$i]: (p @ X)).\nthf(b, axiom, ![X:$i]: ~ (p @ X)).\n",
            "thf(r_type, type, r: $i > $i > $o).\nthf(a, axiom, ![Y:$i]: ?[X:$i]: (r @ Y @ X)).\n"
            "thf(b, axiom, ?[X:$i]: ~ (r @ X @ X)).\n",
            "thf(d_type, type, d: $i > $o).\nthf(g, conjecture, ?[X:$i]: ((d @ X) => ![Y:$i]: (d @ Y))).\n",
            "thf(f_type, type, f: $i > $i).\nthf(g_type, type, g: $i > $i).\nthf(g, conjecture, f = g).\n",
            "thf(g, conjecture, ![X:$i,Y:$i]: (X = Y)).\n",
            "thf(p_type, type, p: $i > $o).\nthf(c_type, type, c: $i).\nthf(a, axiom, p @ c).\n"
            "thf(g, conjecture, ![X:$i]: (p @ X)).\n",
        ]
        for text in problems:
            problem: Problem = parse_problem(text)
            original = problem_model(problem, max_size=2)
            clausal = finite_model_oracle(clausify(problem, RuleContext()), max_size=2)
            self.assertEqual(original is None, clausal is None, text)
        print('OK')

    def test_8_normalize_clause(self) -> None:
        '''
        Test case 8: equations at o and at function types are unfolded by extensionality,
        positive base-type equations get their Leibniz readings.
        '''
        print('test_8_normalize_clause: ', end="")
        supply: FreshSupply = FreshSupply()
        plain: RuleContext = RuleContext(supply, RuleFlags(leibniz_expand=False))
        p: Const = Const('p', OMICRON)
        q: Const = Const('q', OMICRON)
        bool_eq: Clause = make_clause([Literal(mk_eq(p, q), True)], Origin('input'), supply)
        bool_parts: List[Clause] = normalize_clause(bool_eq, plain)
        self.assertEqual({c.origin.rule for c in bool_parts}, {BOOL_EXT_RULE})
        self.assertEqual(
            {frozenset((lit.atom, lit.positive) for lit in c.literals) for c in bool_parts},
            {frozenset({(p, True), (q, False)}), frozenset({(p, False), (q, True)})},
        )

        f: Const = Const('f', FunType(IOTA, IOTA))
        g: Const = Const('g', FunType(IOTA, IOTA))
        fun_diseq: Clause = make_clause([Literal(mk_eq(f, g), False)], Origin('input'), supply)
        [applied] = normalize_clause(fun_diseq, plain)
        self.assertEqual(applied.origin.rule, FUNC_EXT_RULE)
        lhs, rhs = applied.literals[0].sides
        self.assertEqual(lhs.fn, f)
        self.assertEqual(rhs.fn, g)
        self.assertEqual(lhs.arg, rhs.arg)
        no_ext: RuleContext = RuleContext(supply, RuleFlags(leibniz_expand=False, ext=ExtFlags(functional_ext=False)))
        self.assertEqual(normalize_clause(fun_diseq, no_ext), [fun_diseq])

        a: Const = Const('a', IOTA)
        b: Const = Const('b', IOTA)
        base_eq: Clause = make_clause([Literal(mk_eq(a, b), True)], Origin('input'), supply)
        expanded: List[Clause] = normalize_clause(base_eq, RuleContext(supply, RuleFlags(leibniz_expand=True)))
        self.assertEqual(expanded[0], base_eq)
        self.assertEqual([c.origin.rule for c in expanded[1:]], [LEIBNIZ_RULE, LEIBNIZ_RULE])
        self.assertTrue(all(len(c.literals) == 2 and c.literals[0].is_flex for c in expanded[1:]))
        print('OK')

    def test_9_input_origins(self) -> None:
        '''
        Test case 9: input clauses cite their formula and no clause id, with and without Leibniz readings.
        '''
        print('test_9_input_origins: ', end="")
        text: str = (
            "fof(men_mortal, axiom, ![X]: (man(X) => mortal(X))).\n"
            "fof(same, axiom, a = b).\n"
            "fof(goal, conjecture, mortal(a)).\n"
        )
        clauses: List[Clause] = clauses_of(text, leibniz_expand=True)
        ids: List[int] = [c.id for c in clauses]
        for clause in clauses:
            if clause.origin.rule == LEIBNIZ_RULE:
                self.assertEqual(len(clause.origin.parents), 1)
                self.assertIn(clause.origin.parents[0], ids)
            else:
                self.assertEqual(clause.origin.parents, (), str(clause))
                self.assertIn(clause.origin.source, ('men_mortal', 'same', 'goal'))
        self.assertIn(LEIBNIZ_RULE, {c.origin.rule for c in clauses})
        print('OK')

    def test_10_literal_atoms_are_formulas(self) -> None:
        '''
        Test case 10: a literal whose atom is not of type o is rejected.
        '''
        print('test_10_literal_atoms_are_formulas: ', end="")
        with self.assertRaises(HolTypeError):
            Literal(Const('a', IOTA), True)
        with self.assertRaises(HolTypeError):
            Literal(Const('f', FunType(IOTA, OMICRON)), False)
        self.assertTrue(Literal(Const('q', OMICRON), True).positive)
        print('OK')
