"""
Bundled first-order prover.

Runs the saturation loop with every higher-order rule switched off and
first-order equality axioms added, and prints one SZS status line. It is
the default backend, so tests never need an external prover:

    python -m hol_prover.atp.mini_prover --timeout 10 problem.p
"""
# builtins
import argparse
import logging
import os
import sys
import time
from typing import Dict, List, Optional, Union

# local
from hol_prover.atp.szs import SzsStatus, status_line
from hol_prover.basis.types import Type, FunType, OMICRON, split_type
from hol_prover.basis.terms import (
    Const, FreeVar, HolTypeError, EQUALS_NAME, constants_of, mk_app, mk_eq, subterms, is_logical,
)
from hol_prover.calculus.clauses import Clause, Literal, Origin, make_clause
from hol_prover.parser.thf_parser import Problem, TptpSyntaxError, parse_file
from hol_prover.search.main_loop import SlotExpired, SzsResult, initial_state, insert_clause, saturate
from hol_prover.search.schedule import Strategy
from hol_prover.search.state import ProverState


logger = logging.getLogger(__name__)

EQUALITY_AXIOM = "equality_axiom"
DEFAULT_MINI_TIMEOUT = 10.0


def first_order_strategy(timeout: float) -> Strategy:
    return Strategy(
        name="first_order",
        time_slice=timeout,
        choice=False,
        leib_eq=False,
        andr_eq=False,
        ps_mode=0,
        dispatch_period=0,
        leibniz_expand=False,
    )


def equality_types(clauses: List[Clause]) -> List[Type]:
    found: List[Type] = []
    for clause in clauses:
        for lit in clause.literals:
            for sub, _ in subterms(lit.atom):
                if is_logical(sub, EQUALS_NAME):
                    alpha: Type = split_type(sub.ty)[0][0]
                    if alpha != OMICRON and alpha not in found:
                        found.append(alpha)
    return found


def equality_axioms(state: ProverState, clauses: List[Clause]) -> List[Clause]:
    '''
    Symmetry, transitivity and congruence (one argument position at a
    time) for every type at which the clauses use equality.
    '''
    supply = state.supply
    types: List[Type] = equality_types(clauses)
    if not types:
        return []
    origin: Origin = Origin(EQUALITY_AXIOM)
    axioms: List[Clause] = []
    for alpha in types:
        x, y, z = supply.var(alpha, 'X'), supply.var(alpha, 'Y'), supply.var(alpha, 'Z')
        axioms.append(make_clause([Literal(mk_eq(x, y), False), Literal(mk_eq(y, x), True)], origin, supply))
        axioms.append(make_clause(
            [Literal(mk_eq(x, y), False), Literal(mk_eq(y, z), False), Literal(mk_eq(x, z), True)],
            origin, supply,
        ))
    symbols: Dict[str, Type] = {}
    for clause in clauses:
        for lit in clause.literals:
            symbols.update(constants_of(lit.atom))
    for name, ty in sorted(symbols.items()):
        if not isinstance(ty, FunType):
            continue
        arg_types, result = split_type(ty)
        head: Const = Const(name, ty)
        for position, alpha in enumerate(arg_types):
            if alpha not in types:
                continue
            args: List[FreeVar] = [supply.var(a, 'A') for a in arg_types]
            x, y = supply.var(alpha, 'X'), supply.var(alpha, 'Y')
            left = mk_app(head, args[:position] + [x] + args[position + 1:])
            right = mk_app(head, args[:position] + [y] + args[position + 1:])
            if result == OMICRON:
                literals: List[Literal] = [Literal(mk_eq(x, y), False), Literal(left, False), Literal(right, True)]
            elif result in types:
                literals = [Literal(mk_eq(x, y), False), Literal(mk_eq(left, right), True)]
            else:
                continue
            axioms.append(make_clause(literals, origin, supply))
    logger.debug(f"{len(axioms)} equality axiom(s) for {len(types)} type(s)")
    return axioms


def prove_first_order(problem: Problem, timeout: float = DEFAULT_MINI_TIMEOUT) -> SzsResult:
    '''
    Saturate a first-order problem.
    Returns:
        SzsResult - Timeout when the deadline passed.
    '''
    started: float = time.monotonic()
    strategy: Strategy = first_order_strategy(timeout)
    state: ProverState = initial_state(problem, strategy)
    inputs: List[Clause] = [state.clauses[i] for i in state.input_ids if i in state.clauses]
    for axiom in equality_axioms(state, inputs):
        insert_clause(state, axiom, normalized=True)
    outcome: Union[SzsResult, SlotExpired] = saturate(state, strategy, started + timeout)
    if isinstance(outcome, SlotExpired):
        return SzsResult(SzsStatus.TIMEOUT, strategy=strategy.name, elapsed=time.monotonic() - started)
    return outcome


def build_parser() -> argparse.ArgumentParser:
    parser: argparse.ArgumentParser = argparse.ArgumentParser(
        prog="mini_prover", description="Bundled first-order saturation prover.",
    )
    parser.add_argument("problem", help="TPTP FOF/CNF problem file")
    parser.add_argument("--timeout", type=float, default=DEFAULT_MINI_TIMEOUT, help="seconds")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args: argparse.Namespace = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr)
    name: str = os.path.basename(args.problem)
    try:
        problem: Problem = parse_file(args.problem, allow_reserved=True)
        result: SzsResult = prove_first_order(problem, args.timeout)
    except (TptpSyntaxError, HolTypeError, OSError, ValueError) as e:
        logger.error(f"Error reading {args.problem}: {e}")
        print(status_line(SzsStatus.ERROR, name))
        return 1
    print(status_line(result.status, name))
    return 0


if __name__ == '__main__':
    sys.exit(main())
