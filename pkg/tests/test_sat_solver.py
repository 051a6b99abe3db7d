'''
Here in tests, we want to test the following:
1. Small instances: a contradiction, a satisfiable pair and the empty CNF.
2. Models returned for satisfiable instances satisfy every clause.
3. On random 3-CNF instances DPLL agrees with brute force.
4. A decision budget of 0 gives an undecided result on instances that need branching.
5. 0 is rejected as a literal.
'''

# builtins
from itertools import product
import random
from typing import List
from unittest import TestCase

# local
from hol_prover.translation.sat_solver import Cnf, SatResult, sat_solve


def brute_force(cnf: Cnf, variables: int) -> bool:
    for values in product((False, True), repeat=variables):
        if all(any(values[abs(lit) - 1] == (lit > 0) for lit in clause) for clause in cnf):
            return True
    return False


def satisfied(cnf: Cnf, result: SatResult) -> bool:
    return all(any(result.model.get(abs(lit)) == (lit > 0) for lit in clause) for clause in cnf)


class TestSatSolve(TestCase):
    '''
    Tests for sat_solve
    '''
    def test_1_small_instances(self) -> None:
        '''
        Test case 1: {1}, {-1} is UNSAT; {1 2}, {-1 2}, {1 -2} is SAT with 1 and 2 true; {} is SAT.
        '''
        print('test_1_small_instances: ', end="")
        self.assertFalse(sat_solve([[1], [-1]]).satisfiable)
        result: SatResult = sat_solve([[1, 2], [-1, 2], [1, -2]])
        self.assertTrue(result.satisfiable)
        self.assertEqual(result.model, {1: True, 2: True})
        self.assertTrue(sat_solve([]).satisfiable)
        self.assertFalse(sat_solve([[]]).satisfiable)
        print('OK')

    def test_2_models_satisfy(self) -> None:
        '''
        Test case 2: the returned model satisfies a chain of implications.
        '''
        print('test_2_models_satisfy: ', end="")
        cnf: Cnf = [[-1, 2], [-2, 3], [-3, 4], [1, 4], [-4, -5]]
        result: SatResult = sat_solve(cnf)
        self.assertTrue(result.satisfiable)
        self.assertTrue(satisfied(cnf, result))
        print('OK')

    def test_3_random_instances(self) -> None:
        '''
        Test case 3: 300 random 3-CNF instances over 6 variables agree with brute force.
        '''
        print('test_3_random_instances: ', end="")
        rng: random.Random = random.Random(11)
        for _ in range(300):
            cnf: Cnf = []
            for _ in range(rng.randint(1, 30)):
                variables: List[int] = rng.sample(range(1, 7), 3)
                cnf.append([v if rng.random() < 0.5 else -v for v in variables])
            result: SatResult = sat_solve(cnf)
            self.assertEqual(result.satisfiable, brute_force(cnf, 6), str(cnf))
            if result.satisfiable:
                self.assertTrue(satisfied(cnf, result))
        print('OK')

    def test_4_budget(self) -> None:
        '''
        Test case 4: without decisions an instance that needs a branch stays undecided.
        '''
        print('test_4_budget: ', end="")
        result: SatResult = sat_solve([[1, 2], [-1, -2], [1, -2], [-1, 2, 3]], budget=0)
        self.assertIsNone(result.satisfiable)
        print('OK')

    def test_5_zero_literal(self) -> None:
        '''
        Test case 5: 0 raises ValueError.
        '''
        print('test_5_zero_literal: ', end="")
        with self.assertRaises(ValueError):
            sat_solve([[0, 1]])
        print('OK')
