'''
Here in tests, we want to test the following:
1. A refutation is extracted as a proof whose parents are all in the proof.
2. Unification cut by the depth bound is retried at a larger depth.
3. With choice on, an axiom asserting a choice function is detected and instantiated.
4. A finite saturation is read as CounterSatisfiable only when it is complete.
5. A backend refutation decides the problem.
6. The schedule never runs past its budget.
7. Passive clauses are selected alternately by age and by weight.
8. Proof extraction needs every ancestor; discarded clauses are not kept.
9. A backend refutation that does not need the conjecture gives Unsatisfiable.
10. A backend that never answers is killed within the budget and its grace period.
'''

# builtins
import os
import time
from typing import List, Set, Union
from unittest import TestCase

# local
from hol_prover.atp.backend import BackendConfig
from hol_prover.atp.szs import SzsStatus
from hol_prover.calculus.choice_ops import DETECT_RULE
from hol_prover.basis.terms import App, Const
from hol_prover.basis.types import IOTA, OMICRON, FunType
from hol_prover.calculus.clauses import Clause, Literal, Origin, make_clause
from hol_prover.common.config import CORPUS_DIR, SLICE_GRACE
from hol_prover.parser.thf_parser import Problem, parse_file, parse_problem
from hol_prover.search.finite_models import problem_model
from hol_prover.search.main_loop import (
    SlotExpired, SzsResult, apply_rule, extract_proof, format_proof, given_clause_step, initial_state,
    insert_clause, prove_problem, refutation_status, saturate,
)
from hol_prover.search.schedule import Schedule, Strategy
from hol_prover.search.state import PassiveQueue, ProverState, select_clause


MINI: BackendConfig = BackendConfig(
    "mini", ["{python}", "-m", "hol_prover.atp.mini_prover", "--timeout", "{timeout}", "{file}"], timeout=20,
)

ENDLESS_CHAIN: str = (
    "fof(start, axiom, p(a)).\n"
    "fof(step, axiom, ![X]: (p(X) => p(f(X)))).\n"
    "fof(goal, conjecture, q).\n"
)

CONTRADICTORY_AXIOMS: str = (
    "fof(yes, axiom, p).\n"
    "fof(no, axiom, ~ p).\n"
    "fof(goal, conjecture, q).\n"
)

SLEEPER: BackendConfig = BackendConfig(
    "sleeper", ["{python}", "-c", "import time; time.sleep(3600)", "{file}"], timeout=60,
)


def corpus(name: str) -> Problem:
    return parse_file(os.path.join(CORPUS_DIR, name))


def run(problem: Problem, strategy: Strategy, seconds: float = 20.0) -> Union[SzsResult, SlotExpired]:
    state: ProverState = initial_state(problem, strategy)
    return saturate(state, strategy, time.monotonic() + seconds)


class TestGivenClauseLoop(TestCase):
    '''
    Tests for initial_state, given_clause_step and proof extraction
    '''
    def test_1_syllogism_proof(self) -> None:
        '''
        Test case 1: the syllogism is a Theorem, its proof ends with the empty clause and is closed under parents.
        '''
        print('test_1_syllogism_proof: ', end="")
        outcome = run(corpus('fof_syllogism.p'), Strategy('plain', 20.0))
        self.assertIsInstance(outcome, SzsResult)
        self.assertEqual(outcome.status, SzsStatus.THEOREM)
        ids: List[int] = [c.id for c in outcome.proof]
        self.assertEqual(ids, sorted(ids))
        self.assertTrue(outcome.proof[-1].is_refutation)
        for clause in outcome.proof:
            self.assertTrue(set(clause.origin.parents) <= set(ids), str(clause))
        self.assertTrue(any(c.conjecture for c in outcome.proof))
        outcome.problem = 'fof_syllogism.p'
        lines: List[str] = format_proof(outcome)
        self.assertEqual(lines[0], "% SZS output start CNFRefutation for fof_syllogism.p")
        self.assertEqual(lines[-1], "% SZS output end CNFRefutation for fof_syllogism.p")
        print('OK')

    def test_2_single_steps(self) -> None:
        '''
        Test case 2: one step moves a passive clause to active; apply_rule checks ids and arity.
        '''
        print('test_2_single_steps: ', end="")
        state: ProverState = initial_state(corpus('fof_syllogism.p'), Strategy('plain', 5.0))
        self.assertEqual(len(state.input_ids), 3)
        self.assertTrue(state.has_conjecture)
        given: Clause = given_clause_step(state)
        self.assertIn(given.id, state.active)
        self.assertEqual(state.iterations, 1)
        with self.assertRaises(KeyError):
            apply_rule(state, 'factorise', [10 ** 6])
        with self.assertRaises(ValueError):
            apply_rule(state, 'resolve', [given.id])
        with self.assertRaises(KeyError):
            apply_rule(state, 'paramodulate', [given.id])
        print('OK')

    def test_3_refutation_status(self) -> None:
        '''
        Test case 3: Theorem needs a conjecture used in the refutation, otherwise Unsatisfiable.
        '''
        print('test_3_refutation_status: ', end="")
        self.assertEqual(refutation_status(True, True), SzsStatus.THEOREM)
        self.assertEqual(refutation_status(True, False), SzsStatus.UNSATISFIABLE)
        self.assertEqual(refutation_status(False, False), SzsStatus.UNSATISFIABLE)
        print('OK')

    def test_4_clause_selection(self) -> None:
        '''
        Test case 4: the passive queue alternates age and weight picks by its ratio.
        '''
        print('test_4_clause_selection: ', end="")
        a: Const = Const('a', IOTA)
        f: Const = Const('f', FunType(IOTA, IOTA))
        q: Const = Const('q', FunType(IOTA, OMICRON))
        heavy: Clause = Clause(1, (Literal(App(q, App(f, App(f, a))), True),))
        light: Clause = Clause(2, (Literal(Const('p', OMICRON), True),))
        medium: Clause = Clause(3, (Literal(App(q, a), True),))
        alternating: PassiveQueue = PassiveQueue((1, 1))
        by_weight: PassiveQueue = PassiveQueue((0, 1))
        for clause in (heavy, light, medium):
            alternating.push(clause)
            by_weight.push(clause)
        self.assertEqual([select_clause(alternating).id for _ in range(3)], [1, 2, 3])
        self.assertEqual([select_clause(by_weight).id for _ in range(3)], [2, 3, 1])
        with self.assertRaises(IndexError):
            select_clause(by_weight)
        with self.assertRaises(ValueError):
            PassiveQueue((0, 0))
        print('OK')

    def test_5_missing_ancestor(self) -> None:
        '''
        Test case 5: proof extraction refuses a refutation whose parent is not recorded.
        '''
        print('test_5_missing_ancestor: ', end="")
        state: ProverState = initial_state(corpus('fof_syllogism.p'), Strategy('plain', 5.0))
        known: int = state.input_ids[0]
        orphan: Clause = Clause(10 ** 6, (), Origin('resolve', (known, 10 ** 6 - 1)))
        with self.assertRaises(KeyError):
            extract_proof(state, orphan)
        closed: Clause = Clause(10 ** 6 + 1, (), Origin('resolve', (known,)))
        self.assertEqual([c.id for c in extract_proof(state, closed)], [known, closed.id])
        print('OK')

    def test_6_discarded_clauses_forgotten(self) -> None:
        '''
        Test case 6: tautologies and forward subsumed clauses are not kept, the input clauses stay.
        '''
        print('test_6_discarded_clauses_forgotten: ', end="")
        state: ProverState = initial_state(corpus('fof_syllogism.p'), Strategy('plain', 5.0))
        flag: Const = Const('flag', OMICRON)
        tautology: Clause = make_clause([Literal(flag, True), Literal(flag, False)], Origin('input'), state.supply)
        self.assertEqual(insert_clause(state, tautology, normalized=True), [])
        self.assertNotIn(tautology.id, state.clauses)
        queued: Clause = list(state.passive)[0]
        duplicate: Clause = make_clause(list(queued.literals), Origin('input'), state.supply)
        self.assertEqual(insert_clause(state, duplicate, normalized=True), [])
        self.assertNotIn(duplicate.id, state.clauses)
        self.assertTrue(set(state.input_ids) <= set(state.clauses))
        print('OK')


class TestHigherOrderSearch(TestCase):
    '''
    Tests for depth extension and the choice rules inside the loop
    '''
    def test_1_depth_extension(self) -> None:
        '''
        Test case 1: p (F a) against p (f (g a)) needs three bindings, starting at depth 1 the depth is raised.
        '''
        print('test_1_depth_extension: ', end="")
        strategy: Strategy = Strategy('shallow', 20.0, ps_mode=0, unification_depth=1)
        state: ProverState = initial_state(corpus('ho_depth_three.p'), strategy)
        outcome = saturate(state, strategy, time.monotonic() + 20.0)
        self.assertIsInstance(outcome, SzsResult)
        self.assertEqual(outcome.status, SzsStatus.THEOREM)
        self.assertGreater(state.depth, 1)
        print('OK')

    def test_2_choice_trace(self) -> None:
        '''
        Test case 2: the choice axiom is registered and the choice rule fires on eps p.
        '''
        print('test_2_choice_trace: ', end="")
        strategy: Strategy = Strategy('choice', 20.0, choice=True, ps_mode=0)
        state: ProverState = initial_state(corpus('choice_axiom_eps.p'), strategy)
        self.assertIn('eps', [c.name for c in state.register.symbols()])
        outcome = saturate(state, strategy, time.monotonic() + 20.0)
        self.assertEqual(outcome.status, SzsStatus.THEOREM)
        rules: Set[str] = outcome.rules_used()
        self.assertIn(DETECT_RULE, rules)
        self.assertIn('choice', rules)
        print('OK')


class TestClassification(TestCase):
    '''
    Tests for saturation results and backend verdicts
    '''
    def test_1_counter_satisfiable(self) -> None:
        '''
        Test case 1: (p | q) => (p & q) saturates to a CounterSatisfiable verdict that a finite model confirms.
        '''
        print('test_1_counter_satisfiable: ', end="")
        problem: Problem = corpus('prop_or_and_csa.p')
        outcome = run(problem, Strategy('complete', 20.0))
        self.assertEqual(outcome.status, SzsStatus.COUNTER_SATISFIABLE)
        self.assertTrue(outcome.model_basis)
        self.assertEqual(outcome.incomplete, [])
        self.assertIsNotNone(problem_model(problem, 1))
        self.assertEqual(format_proof(outcome)[0], "% SZS output start Saturation")
        print('OK')

    def test_2_incomplete_gives_up(self) -> None:
        '''
        Test case 2: choice terms with the choice rules off never give a CounterSatisfiable verdict.
        '''
        print('test_2_incomplete_gives_up: ', end="")
        schedule: Schedule = Schedule('no_choice', 3.0, [Strategy('no_choice', 3.0, choice=False, ps_mode=0)])
        result: SzsResult = prove_problem(corpus('choice_not_unique_csa.p'), schedule, None, 'choice_not_unique_csa.p')
        self.assertIn(result.status, (SzsStatus.GAVE_UP, SzsStatus.TIMEOUT))
        print('OK')

    def test_3_backend_refutation(self) -> None:
        '''
        Test case 3: dispatching at start hands the syllogism to the bundled prover, whose refutation is accepted.
        '''
        print('test_3_backend_refutation: ', end="")
        strategy: Strategy = Strategy('dispatch', 30.0, dispatch_period=1, dispatch_at_start=True)
        state: ProverState = initial_state(corpus('fof_syllogism.p'), strategy)
        outcome = saturate(state, strategy, time.monotonic() + 30.0, {"mini": MINI})
        self.assertEqual(outcome.status, SzsStatus.THEOREM)
        self.assertEqual(outcome.backend, 'mini')
        print('OK')

    def test_4_budget(self) -> None:
        '''
        Test case 4: an endless chain of p facts ends within the budget as Timeout or GaveUp.
        '''
        print('test_4_budget: ', end="")
        schedule: Schedule = Schedule('chain', 1.5, [Strategy('a', 0.75), Strategy('b', 0.75, ps_mode=0)])
        started: float = time.monotonic()
        result: SzsResult = prove_problem(parse_problem(ENDLESS_CHAIN), schedule, None, 'chain')
        self.assertIn(result.status, (SzsStatus.TIMEOUT, SzsStatus.GAVE_UP))
        self.assertLess(time.monotonic() - started, 1.5 + SLICE_GRACE + 1.0)
        self.assertEqual(result.problem, 'chain')
        print('OK')

    def test_5_backend_contradictory_axioms(self) -> None:
        '''
        Test case 5: a backend refutation of p and ~p with an unrelated conjecture q is Unsatisfiable.
        '''
        print('test_5_backend_contradictory_axioms: ', end="")
        strategy: Strategy = Strategy('dispatch', 30.0, dispatch_period=1, dispatch_at_start=True)
        state: ProverState = initial_state(parse_problem(CONTRADICTORY_AXIOMS), strategy)
        outcome = saturate(state, strategy, time.monotonic() + 30.0, {"mini": MINI})
        self.assertIsInstance(outcome, SzsResult)
        self.assertEqual(outcome.status, SzsStatus.UNSATISFIABLE)
        self.assertEqual(outcome.backend, 'mini')
        print('OK')

    def test_6_hanging_backend(self) -> None:
        '''
        Test case 6: a backend that never answers cannot stretch the run past the budget and the kill grace.
        '''
        print('test_6_hanging_backend: ', end="")
        strategy: Strategy = Strategy('sleepy', 1.0, dispatch_period=1, dispatch_at_start=True)
        started: float = time.monotonic()
        result: SzsResult = prove_problem(parse_problem(ENDLESS_CHAIN), Schedule('sleepy', 1.0, [strategy]),
                                          {"sleeper": SLEEPER}, 'chain')
        self.assertIn(result.status, (SzsStatus.TIMEOUT, SzsStatus.GAVE_UP))
        self.assertLess(time.monotonic() - started, 1.0 + SLICE_GRACE + 1.0)
        print('OK')
