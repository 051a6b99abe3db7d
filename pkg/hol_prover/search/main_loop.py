"""
Given-clause saturation over the calculus, backend dispatch and result
classification.
"""
# builtins
from collections import deque
from dataclasses import dataclass, field
import logging
import time
from typing import Any, Deque, Dict, List, Optional, Set, Union

# local
from hol_prover.atp.backend import BackendConfig, BackendResult, invoke_backend, select_backend
from hol_prover.atp.szs import SzsStatus, is_solved, is_unsat
from hol_prover.basis.terms import HolTypeError
from hol_prover.calculus import RuleResult
from hol_prover.calculus.all_rules import GENERATING_RULES, get_rule
from hol_prover.calculus.choice_ops import DETECT_RULE
from hol_prover.calculus.clauses import Clause
from hol_prover.calculus.clausify import clausify, normalize_clause, problem_types
from hol_prover.calculus.prim_subst_ops import flex_heads
from hol_prover.calculus.resolution_ops import RESOLVE_RULE, UNIFY_RULE, unify_constraints
from hol_prover.calculus.simplification import backward_subsumed, forward_subsumed, simplify
from hol_prover.common.config import DEPTH_EXTENSION_PERIOD, MAX_CLAUSE_WEIGHT, MAX_UNIFICATION_DEPTH
from hol_prover.common.deadline import DeadlineExceeded, check_deadline
from hol_prover.parser.thf_parser import Problem
from hol_prover.search.schedule import Schedule, Strategy
from hol_prover.search.state import ProverState, TraceEntry, has_choice_terms, select_clause
from hol_prover.translation.fo_language import TranslationError, print_fof
from hol_prover.translation.intermediate import translate_clauses


logger = logging.getLogger(__name__)


@dataclass
class SzsResult:
    '''
    Verdict of a proof attempt.
    Args:
        status: SzsStatus
        problem: str - problem name used in the status line.
        strategy: str - strategy that produced the verdict.
        elapsed: float - seconds.
        proof: List[Clause] - derivation of the empty clause (internal refutations only).
        trace: List[TraceEntry] - rule applications of the deciding slot.
        model_basis: List[Clause] - saturated clause set for Satisfiable / CounterSatisfiable.
        backend: str - backend whose refutation decided the problem.
        incomplete: List[str] - reasons the deciding slot could not claim saturation.
    '''
    status: SzsStatus
    problem: str = ''
    strategy: str = ''
    elapsed: float = 0.0
    proof: List[Clause] = field(default_factory=list)
    trace: List[TraceEntry] = field(default_factory=list)
    model_basis: List[Clause] = field(default_factory=list)
    backend: Optional[str] = None
    incomplete: List[str] = field(default_factory=list)

    def rules_used(self) -> Set[str]:
        return {entry.rule for entry in self.trace}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "problem": self.problem,
            "strategy": self.strategy,
            "elapsed": round(self.elapsed, 3),
            "proof": [c.id for c in self.proof],
            "trace": [entry.to_dict() for entry in self.trace],
            "model_basis": [c.id for c in self.model_basis],
            "backend": self.backend,
            "incomplete": list(self.incomplete),
        }


@dataclass
class SlotExpired:
    '''
    The slot deadline passed before a verdict; state is kept for diagnostics.
    '''
    strategy: str
    state: ProverState

    def to_dict(self) -> Dict[str, Any]:
        return {"strategy": self.strategy, **self.state.summary()}


# Clause insertion
def _record_by_origin(state: ProverState, parent: Clause, conclusions: List[Clause]) -> None:
    by_rule: Dict[str, List[Clause]] = {}
    for clause in conclusions:
        by_rule.setdefault(clause.origin.rule, []).append(clause)
    for rule, group in by_rule.items():
        state.record(rule, (parent.id,), group)


def insert_clause(state: ProverState, clause: Clause, normalized: bool = False) -> List[Clause]:
    '''
    Run a new clause through normalisation, constraint solving,
    simplification, choice detection and forward subsumption, and queue what
    survives as passive.
    Args:
        state: ProverState
        clause: Clause
        normalized: bool - skip the first normalisation (clausified input).
    Returns:
        List[Clause] - the clauses that reached the passive queue.
    '''
    queued: List[Clause] = []
    work: List[tuple] = [(clause, normalized)]
    while work:
        check_deadline(state.ctx.deadline)
        current, done = work.pop()
        state.remember(current)
        if current.weight > MAX_CLAUSE_WEIGHT:
            state.incomplete.add("weight")
            state.forget(current.id)
            logger.debug(f"discarded heavy clause {current.id}")
            continue
        if not done:
            results: List[Clause] = normalize_clause(current, state.ctx)
            if results[0] is not current:
                _record_by_origin(state, current, results)
                work.extend((c, True) for c in reversed(results))
                continue
            if len(results) > 1:
                _record_by_origin(state, current, results[1:])
                work.extend((c, True) for c in reversed(results[1:]))
        if any(lit.constraint and not lit.is_flex_flex for lit in current.literals):
            solved: RuleResult = unify_constraints(current, state.ctx)
            state.stalled.extend(solved.stalled)
            if solved.truncated:
                state.incomplete.add("unifiers")
            if solved.new_clauses:
                state.record(UNIFY_RULE, (current.id,), solved.new_clauses)
            work.extend((c, False) for c in reversed(solved.new_clauses))
            continue
        simplified: Optional[Clause] = simplify(current)
        if simplified is None:
            state.forget(current.id)
            continue
        current = simplified
        state.clauses[current.id] = current
        if current.is_refutation:
            if state.refutation is None:
                state.refutation = current
                logger.info(f"refutation found: clause {current.id}")
            continue
        detected: RuleResult = get_rule(DETECT_RULE)([current], state.ctx)
        if detected.applicable:
            state.record(DETECT_RULE, (current.id,), [])
            logger.info(f"clause {current.id} registered choice function(s) "
                        f"{[c.name for c in detected.register_updates]}")
            continue
        others: List[Clause] = list(state.active.values()) + list(state.passive)
        if forward_subsumed(current, others) is not None:
            state.forget(current.id)
            continue
        state.passive.push(current)
        queued.append(current)
    return queued


def apply_to(state: ProverState, rule_name: str, premises: List[Clause]) -> RuleResult:
    '''
    Apply one calculus rule to premise clauses and integrate the result:
    trace entry, removed clauses and insertion of the conclusions.
    '''
    result: RuleResult = get_rule(rule_name)(premises, state.ctx)
    if result.throttled:
        state.incomplete.add("choice")
    if result.truncated:
        state.incomplete.add("unifiers")
    if not result.applicable:
        return result
    state.record(rule_name, tuple(p.id for p in premises), result.new_clauses)
    for clause_id in result.removed:
        state.remove(clause_id)
    for clause in result.new_clauses:
        insert_clause(state, clause)
    return result


def apply_rule(state: ProverState, rule_name: str, clause_ids: List[int]) -> RuleResult:
    '''
    apply_to for clauses named by id (interactive mode).
    Raises:
        KeyError: unknown rule or clause id.
        ValueError: wrong number of premises.
    '''
    premises: List[Clause] = []
    for clause_id in clause_ids:
        clause: Optional[Clause] = state.find(clause_id)
        if clause is None:
            raise KeyError(f"no active or passive clause {clause_id}")
        premises.append(clause)
    return apply_to(state, rule_name, premises)


def given_clause_step(state: ProverState, deadline: Optional[float] = None) -> Optional[Clause]:
    '''
    One iteration: select a passive clause, move it to active unless active
    subsumes it, then apply every generating rule to it and resolve it
    against the active set.
    Returns:
        Optional[Clause] - the given clause, None when passive is empty.
    '''
    if not state.passive:
        return None
    given: Clause = select_clause(state.passive)
    state.iterations += 1
    active: List[Clause] = list(state.active.values())
    if forward_subsumed(given, active) is not None:
        return given
    for victim in backward_subsumed(given, active):
        del state.active[victim.id]
    state.active[given.id] = given
    logger.debug(f"given clause {given}")
    if state.flags.ps_mode < 2 and flex_heads(given):
        state.incomplete.add("ps_mode")
    for rule_name in GENERATING_RULES:
        check_deadline(deadline)
        apply_to(state, rule_name, [given])
        if state.refutation is not None:
            return given
    for partner in list(state.active.values()):
        check_deadline(deadline)
        if given.id not in state.active:
            break
        apply_to(state, RESOLVE_RULE, [given, partner])
        if state.refutation is not None:
            return given
    return given


def extend_depth(state: ProverState) -> bool:
    '''
    Raise the preunification depth by one and retry the stalled clauses.
    Returns:
        bool - False when nothing stalled or the depth is at its maximum.
    '''
    if not state.stalled or state.depth >= MAX_UNIFICATION_DEPTH:
        return False
    state.set_depth(state.depth + 1)
    stalled, state.stalled = state.stalled, []
    for clause in stalled:
        insert_clause(state, clause, normalized=True)
    return True


# Search state from a problem
def initial_state(problem: Problem, strategy: Strategy, deadline: Optional[float] = None) -> ProverState:
    '''
    Fresh prover state holding the clausified problem.
    Raises:
        HolTypeError, ValueError: the problem cannot be clausified.
        DeadlineExceeded: deadline passed while the input clauses were inserted.
    '''
    state: ProverState = ProverState(strategy.flags(), problem_types(problem), strategy.age_weight_ratio)
    state.ctx.deadline = deadline
    inputs: List[Clause] = clausify(problem, state.ctx)
    state.has_conjecture = problem.has_conjecture()
    state.choice_terms = has_choice_terms(inputs)
    for clause in inputs:
        state.input_ids.append(clause.id)
        insert_clause(state, clause, normalized=True)
    state.ctx.deadline = None
    logger.info(f"{len(inputs)} input clause(s), {len(state.passive)} queued")
    return state


# Proof extraction
def extract_proof(state: ProverState, refutation: Clause) -> List[Clause]:
    '''
    Ancestors of the refutation (itself included) ordered by id.
    Raises:
        KeyError: an ancestor is not recorded in the state.
    '''
    seen: Dict[int, Clause] = {}
    queue: Deque[int] = deque([refutation.id])
    while queue:
        clause_id: int = queue.popleft()
        if clause_id in seen:
            continue
        clause: Optional[Clause] = refutation if clause_id == refutation.id else state.clauses.get(clause_id)
        if clause is None:
            raise KeyError(f"proof ancestor {clause_id} of clause {refutation.id} is not recorded")
        seen[clause_id] = clause
        queue.extend(clause.origin.parents)
    return [seen[k] for k in sorted(seen)]


def format_proof(result: SzsResult) -> List[str]:
    '''
    SZS output block of a result: the refutation for Theorem / Unsatisfiable,
    the saturated clause set for Satisfiable / CounterSatisfiable.
    '''
    if result.proof:
        kind: str = "CNFRefutation"
        clauses: List[Clause] = result.proof
    elif result.model_basis:
        kind = "Saturation"
        clauses = result.model_basis
    else:
        return []
    suffix: str = f" for {result.problem}" if result.problem else ""
    return [f"% SZS output start {kind}{suffix}"] + [c.to_tptp() for c in clauses] + \
        [f"% SZS output end {kind}{suffix}"]


# Classification
def refutation_status(has_conjecture: bool, conjecture_used: bool) -> SzsStatus:
    return SzsStatus.THEOREM if has_conjecture and conjecture_used else SzsStatus.UNSATISFIABLE


def _refuted(state: ProverState, strategy: Strategy, started: float) -> SzsResult:
    refutation: Clause = state.refutation
    return SzsResult(
        status=refutation_status(state.has_conjecture, refutation.conjecture),
        strategy=strategy.name,
        elapsed=time.monotonic() - started,
        proof=extract_proof(state, refutation),
        trace=list(state.trace),
    )


def saturation_is_complete(state: ProverState) -> bool:
    '''
    May a saturated state be read as a model: nothing throttled, nothing
    stalled and choice rules on whenever choice terms occur.
    '''
    if state.incomplete or state.stalled:
        return False
    return not state.choice_terms or state.flags.choice


def _saturated(state: ProverState, strategy: Strategy, started: float) -> SzsResult:
    if saturation_is_complete(state):
        status: SzsStatus = SzsStatus.COUNTER_SATISFIABLE if state.has_conjecture else SzsStatus.SATISFIABLE
        basis: List[Clause] = state.current_clauses()
    else:
        status = SzsStatus.GAVE_UP
        basis = []
    reasons: List[str] = sorted(state.incomplete) + (["depth"] if state.stalled else [])
    logger.info(f"strategy {strategy.name} saturated after {state.iterations} iteration(s): {status}")
    return SzsResult(
        status=status,
        strategy=strategy.name,
        elapsed=time.monotonic() - started,
        trace=list(state.trace),
        model_basis=basis,
        incomplete=reasons,
    )


# Backend cooperation
def _backend_status(clauses: List[Clause], state: ProverState, strategy: Strategy, backend: BackendConfig,
                    deadline: float) -> Optional[SzsStatus]:
    remaining: float = deadline - time.monotonic()
    if remaining <= 0:
        return None
    try:
        text: str = print_fof(translate_clauses(clauses, strategy.translation, state.supply))
    except (TranslationError, HolTypeError) as e:
        logger.warning(f"translation for backend {backend.name} failed: {e}")
        return None
    outcome: BackendResult = invoke_backend(text, backend, timeout=min(backend.timeout, remaining))
    return outcome.status


def dispatch(state: ProverState, strategy: Strategy, backend: BackendConfig,
             deadline: float) -> Optional[SzsResult]:
    '''
    Translate the current clauses, run the backend on them and accept its
    refutation. Any other backend outcome leaves the search running.
    A refutation counts as a Theorem only when the conjecture clauses are
    needed for it: the clauses without them are sent once more, and a
    refutation of those alone gives Unsatisfiable.
    '''
    started: float = time.monotonic()
    current: List[Clause] = state.current_clauses()
    status: Optional[SzsStatus] = _backend_status(current, state, strategy, backend, deadline)
    logger.info(f"backend {backend.name} after {state.iterations} iteration(s): {status}")
    if status is None or not is_unsat(status):
        return None
    axioms: List[Clause] = [c for c in current if not c.conjecture]
    conjecture_used: bool = len(axioms) < len(current)
    if conjecture_used and axioms:
        without: Optional[SzsStatus] = _backend_status(axioms, state, strategy, backend, deadline)
        logger.info(f"backend {backend.name} without the conjecture clauses: {without}")
        conjecture_used = without is None or not is_unsat(without)
    return SzsResult(
        status=refutation_status(state.has_conjecture, conjecture_used),
        strategy=strategy.name,
        elapsed=time.monotonic() - started,
        trace=list(state.trace),
        backend=backend.name,
    )


def saturate(state: ProverState, strategy: Strategy, deadline: float,
             backends: Optional[Dict[str, BackendConfig]] = None) -> Union[SzsResult, SlotExpired]:
    '''
    Given-clause loop until refutation, saturation or the deadline.
    Args:
        state: ProverState - initialised with strategy's flags.
        strategy: Strategy - dispatch period, translation mode.
        deadline: float - time.monotonic() value ending the slot.
        backends: Dict[str, BackendConfig] - first enabled backend is used; None disables dispatch.
    Returns:
        SzsResult | SlotExpired
    '''
    started: float = time.monotonic()
    backend: Optional[BackendConfig] = None
    if backends and strategy.dispatch_period > 0:
        backend = select_backend(backends)
    state.ctx.deadline = deadline
    try:
        if state.refutation is None and backend is not None and strategy.dispatch_at_start:
            verdict: Optional[SzsResult] = dispatch(state, strategy, backend, deadline)
            if verdict is not None:
                return verdict
        while True:
            if state.refutation is not None:
                return _refuted(state, strategy, started)
            check_deadline(deadline)
            if not state.passive:
                if extend_depth(state):
                    continue
                return _saturated(state, strategy, started)
            given_clause_step(state, deadline)
            if state.refutation is not None:
                continue
            if state.stalled and state.iterations % DEPTH_EXTENSION_PERIOD == 0:
                extend_depth(state)
            if backend is not None and state.iterations % strategy.dispatch_period == 0:
                verdict = dispatch(state, strategy, backend, deadline)
                if verdict is not None:
                    return verdict
    except DeadlineExceeded:
        # clauses still being inserted are lost
        state.incomplete.add("deadline")
        logger.info(f"strategy {strategy.name} expired after {state.iterations} iteration(s)")
        return SlotExpired(strategy.name, state)
    finally:
        state.ctx.deadline = None


def prove_problem(problem: Problem, schedule: Schedule,
                  backends: Optional[Dict[str, BackendConfig]] = None, name: str = '') -> SzsResult:
    '''
    Run the strategies of a schedule one after another, each on a fresh
    state, until one decides the problem or the budget is spent. Time a
    strategy leaves unused passes to the next one.
    Args:
        problem: Problem
        schedule: Schedule
        backends: Dict[str, BackendConfig] - None for backendless runs.
        name: str - problem name for the result.
    Returns:
        SzsResult - Timeout when the budget ran out, GaveUp otherwise.
    '''
    started: float = time.monotonic()
    global_deadline: float = started + schedule.budget
    leftover: float = 0.0
    last: Optional[SzsResult] = None
    for strategy in schedule.strategies:
        now: float = time.monotonic()
        if now >= global_deadline:
            break
        slot_deadline: float = min(now + strategy.time_slice + leftover, global_deadline)
        logger.info(f"strategy {strategy.name} for {slot_deadline - now:.2f}s")
        try:
            state: ProverState = initial_state(problem, strategy, slot_deadline)
        except DeadlineExceeded:
            logger.info(f"strategy {strategy.name} expired while inserting the input clauses")
            leftover = 0.0
            continue
        outcome: Union[SzsResult, SlotExpired] = saturate(state, strategy, slot_deadline, backends)
        if isinstance(outcome, SzsResult):
            outcome.problem = name
            outcome.elapsed = time.monotonic() - started
            if is_solved(outcome.status):
                return outcome
            last = outcome
            leftover = max(0.0, slot_deadline - time.monotonic())
        else:
            leftover = 0.0
    timed_out: bool = time.monotonic() >= global_deadline or last is None
    status: SzsStatus = SzsStatus.TIMEOUT if timed_out else SzsStatus.GAVE_UP
    return SzsResult(
        status=status,
        problem=name,
        strategy=last.strategy if last else '',
        elapsed=time.monotonic() - started,
        trace=last.trace if last else [],
        incomplete=last.incomplete if last else [],
    )
