"""
Interactive mode: a line-oriented command interface to the prover state.

Commands:
    load FILE                 clausify a problem into a fresh state
    show state                list active and passive clauses
    show clause ID            print one clause with its origin
    apply RULE ID [ID]        apply one calculus rule to named clauses
    set FLAG VALUE            choice, leib_eq, andr_eq, ps_mode, depth, translation, dispatch_period
    translate [MODE]          print the first-order translation of the current clauses
    call-atp [NAME]           run one backend on the current clauses
    step [N]                  run N given-clause iterations
    prove [SECONDS]           continue automatically from the current state
    help
    quit
"""
# builtins
from dataclasses import replace
import logging
import os
import shlex
import sys
import time
from typing import Callable, Dict, List, Optional, TextIO, Union

# local
from hol_prover.atp.backend import BackendConfig, BackendConfigError, select_backend
from hol_prover.atp.szs import status_line
from hol_prover.basis.terms import HolTypeError
from hol_prover.calculus import RuleResult
from hol_prover.calculus.all_rules import RULES
from hol_prover.calculus.clauses import Clause
from hol_prover.cli.automatic import load_backends
from hol_prover.cli.config import CliConfig
from hol_prover.common.config import DEFAULT_TRANSLATION
from hol_prover.parser.thf_parser import Problem, TptpSyntaxError, parse_file
from hol_prover.search.main_loop import (
    SlotExpired, SzsResult, apply_rule, dispatch, format_proof, given_clause_step, initial_state, saturate,
)
from hol_prover.search.schedule import Strategy
from hol_prover.search.state import ProverState
from hol_prover.translation.fo_language import TranslationError, print_fof
from hol_prover.translation.intermediate import normalize_mode, translate_clauses


logger = logging.getLogger(__name__)

PROMPT = "hol> "
NOT_APPLICABLE = "rule not applicable"

RULE_ALIASES: Dict[str, str] = {
    "leib_eq": "LeibEQ",
    "leibeq": "LeibEQ",
    "andr_eq": "AndrEQ",
    "andreq": "AndrEQ",
    "detect_choice": "detectChoiceFn",
    "detect_choice_fn": "detectChoiceFn",
    "apply_choice": "choice",
    "primsubst": "prim_subst",
    "factorize": "factorise",
}

BOOL_VALUES: Dict[str, bool] = {"on": True, "true": True, "1": True, "off": False, "false": False, "0": False}


class ReplError(Exception):
    '''
    A command could not run; the state is unchanged.
    '''


def rule_name(name: str) -> str:
    canonical: str = RULE_ALIASES.get(name.lower(), name)
    if canonical not in RULES:
        raise ReplError(f"unknown rule '{name}', expected one of {', '.join(sorted(RULES))}")
    return canonical


def strategy_from(cfg: CliConfig) -> Strategy:
    return Strategy(
        name="interactive",
        time_slice=cfg.timeout,
        choice=cfg.choice if cfg.choice is not None else True,
        leib_eq=cfg.leib_eq if cfg.leib_eq is not None else True,
        andr_eq=cfg.andr_eq if cfg.andr_eq is not None else True,
        ps_mode=cfg.ps_mode if cfg.ps_mode is not None else 2,
        translation=cfg.translation or DEFAULT_TRANSLATION,
    )


class Repl:
    '''
    Holds the state of one interactive session and executes commands on it.
    Args:
        cfg: CliConfig
        out: TextIO - where command output goes.
        backends: Dict[str, BackendConfig] - loaded from the catalogue when None.
    '''
    def __init__(self, cfg: CliConfig, out: Optional[TextIO] = None,
                 backends: Optional[Dict[str, BackendConfig]] = None) -> None:
        self.cfg: CliConfig = cfg
        self.out: TextIO = out or sys.stdout
        self.strategy: Strategy = strategy_from(cfg)
        self.state: Optional[ProverState] = None
        self.problem: Optional[Problem] = None
        self.problem_name: str = ''
        self.backends: Optional[Dict[str, BackendConfig]] = backends
        self.done: bool = False
        self.commands: Dict[str, Callable[[List[str]], None]] = {
            "load": self.cmd_load,
            "show": self.cmd_show,
            "apply": self.cmd_apply,
            "set": self.cmd_set,
            "translate": self.cmd_translate,
            "call-atp": self.cmd_call_atp,
            "step": self.cmd_step,
            "prove": self.cmd_prove,
            "help": self.cmd_help,
            "quit": self.cmd_quit,
            "exit": self.cmd_quit,
        }

    def emit(self, text: str) -> None:
        print(text, file=self.out)

    def require_state(self) -> ProverState:
        if self.state is None:
            raise ReplError("no problem loaded")
        return self.state

    def execute(self, line: str) -> None:
        '''
        Run one command line. Errors are printed, never raised.
        '''
        line = line.split('#', 1)[0].strip()
        if not line:
            return
        try:
            words: List[str] = shlex.split(line)
        except ValueError as e:
            self.emit(f"error: {e}")
            return
        command: Optional[Callable[[List[str]], None]] = self.commands.get(words[0].lower())
        if command is None:
            self.emit(f"error: unknown command '{words[0]}', try help")
            return
        try:
            command(words[1:])
        except (ReplError, KeyError, ValueError) as e:
            self.emit(f"error: {e.args[0] if e.args else e}")

    # Commands
    def cmd_load(self, args: List[str]) -> None:
        if len(args) != 1:
            raise ReplError("usage: load FILE")
        try:
            problem: Problem = parse_file(args[0])
            state: ProverState = initial_state(problem, self.strategy)
        except (TptpSyntaxError, HolTypeError, OSError) as e:
            raise ReplError(f"cannot load {args[0]}: {e}")
        self.problem, self.state, self.problem_name = problem, state, os.path.basename(args[0])
        self.emit(f"loaded {self.problem_name}: {len(state.input_ids)} input clause(s), "
                  f"{len(state.passive)} passive")

    def cmd_show(self, args: List[str]) -> None:
        state: ProverState = self.require_state()
        if args == ["state"]:
            for clause in state.current_clauses():
                where: str = "active " if clause.id in state.active else "passive"
                self.emit(f"{where} {clause}")
            summary = state.summary()
            self.emit(f"active={summary['active']} passive={summary['passive']} depth={summary['depth']} "
                      f"iterations={summary['iterations']} choice_functions={summary['choice_functions']}")
            return
        if len(args) == 2 and args[0] == "clause":
            clause_id: int = self._clause_id(args[1])
            clause: Optional[Clause] = state.clauses.get(clause_id)
            if clause is None:
                raise ReplError(f"no clause {clause_id}")
            self.emit(str(clause))
            return
        raise ReplError("usage: show state | show clause ID")

    def cmd_apply(self, args: List[str]) -> None:
        state: ProverState = self.require_state()
        if len(args) < 2:
            raise ReplError("usage: apply RULE ID [ID]")
        name: str = rule_name(args[0])
        ids: List[int] = [self._clause_id(a) for a in args[1:]]
        result: RuleResult = apply_rule(state, name, ids)
        if not result.applicable:
            self.emit(NOT_APPLICABLE)
            return
        for clause in result.new_clauses:
            self.emit(f"new {clause}")
        for clause_id in result.removed:
            self.emit(f"removed {clause_id}")
        for symbol in result.register_updates:
            self.emit(f"registered {symbol.name}")
        if state.refutation is not None:
            self.emit(f"refutation: clause {state.refutation.id}")

    def cmd_set(self, args: List[str]) -> None:
        if len(args) != 2:
            raise ReplError("usage: set FLAG VALUE")
        flag, value = args[0].lower(), args[1].lower()
        if flag in ("choice", "leib_eq", "andr_eq"):
            if value not in BOOL_VALUES:
                raise ReplError(f"{flag} takes on or off")
            strategy: Strategy = replace(self.strategy, **{flag: BOOL_VALUES[value]})
        elif flag in ("ps_mode", "depth", "dispatch_period"):
            try:
                number: int = int(value)
            except ValueError:
                raise ReplError(f"{flag} takes an integer")
            field_name: str = "unification_depth" if flag == "depth" else flag
            strategy = replace(self.strategy, **{field_name: number})
        elif flag == "translation":
            strategy = replace(self.strategy, translation=normalize_mode(value))
        else:
            raise ReplError(f"unknown flag '{flag}'")
        if strategy.dispatch_period < 0:
            raise ReplError("dispatch_period must not be negative")
        self.strategy = strategy
        if self.state is not None:
            depth: int = self.state.depth if flag != "depth" else strategy.unification_depth
            self.state.set_flags(strategy.flags())
            self.state.set_depth(depth)
        self.emit(f"{flag} = {value}")

    def cmd_translate(self, args: List[str]) -> None:
        state: ProverState = self.require_state()
        mode: str = normalize_mode(args[0]) if args else self.strategy.translation
        try:
            self.emit(print_fof(translate_clauses(state.current_clauses(), mode, state.supply)).rstrip())
        except (TranslationError, HolTypeError) as e:
            raise ReplError(f"translation failed: {e}")

    def _backends(self) -> Dict[str, BackendConfig]:
        if self.backends is None:
            try:
                self.backends = load_backends(replace(self.cfg, no_atp=False)) or {}
            except BackendConfigError as e:
                raise ReplError(str(e))
        return self.backends

    def cmd_call_atp(self, args: List[str]) -> None:
        state: ProverState = self.require_state()
        backend: Optional[BackendConfig] = select_backend(self._backends(), args[0] if args else None)
        if backend is None:
            raise ReplError("no enabled backend")
        verdict: Optional[SzsResult] = dispatch(state, self.strategy, backend, time.monotonic() + backend.timeout)
        if verdict is None:
            self.emit(f"{backend.name}: no refutation")
        else:
            self.emit(f"{backend.name}: {verdict.status}")

    def cmd_step(self, args: List[str]) -> None:
        state: ProverState = self.require_state()
        count: int = self._count(args)
        for _ in range(count):
            if state.refutation is not None:
                self.emit(f"refutation: clause {state.refutation.id}")
                return
            given: Optional[Clause] = given_clause_step(state)
            if given is None:
                self.emit("passive set is empty")
                return
            self.emit(f"given {given}")
        if state.refutation is not None:
            self.emit(f"refutation: clause {state.refutation.id}")

    def cmd_prove(self, args: List[str]) -> None:
        state: ProverState = self.require_state()
        seconds: float = float(args[0]) if args else self.cfg.timeout
        backends: Optional[Dict[str, BackendConfig]] = None if self.cfg.no_atp else self._backends()
        outcome: Union[SzsResult, SlotExpired] = saturate(
            state, replace(self.strategy, time_slice=seconds), time.monotonic() + seconds, backends,
        )
        if isinstance(outcome, SlotExpired):
            self.emit(f"time slice of {seconds}s expired")
            return
        outcome.problem = self.problem_name
        self.emit(status_line(outcome.status, self.problem_name))
        for line in format_proof(outcome):
            self.emit(line)

    def cmd_help(self, args: List[str]) -> None:
        self.emit(__doc__.strip())

    def cmd_quit(self, args: List[str]) -> None:
        self.done = True

    # Helpers
    def _clause_id(self, word: str) -> int:
        try:
            return int(word)
        except ValueError:
            raise ReplError(f"'{word}' is not a clause id")

    def _count(self, args: List[str]) -> int:
        if not args:
            return 1
        try:
            count: int = int(args[0])
        except ValueError:
            raise ReplError(f"'{args[0]}' is not a number")
        if count < 1:
            raise ReplError("step count must be positive")
        return count


def repl_loop(cfg: CliConfig, lines: Optional[TextIO] = None, out: Optional[TextIO] = None) -> int:
    '''
    Run an interactive session: commands from --script, lines, or standard input.
    Problem files on the command line are loaded first.
    '''
    repl: Repl = Repl(cfg, out)
    for path in cfg.files:
        repl.execute(f"load {shlex.quote(path)}")
    prompt: bool = lines is None and cfg.script is None and sys.stdin.isatty()
    source: TextIO
    if cfg.script is not None:
        try:
            source = open(cfg.script, 'r')
        except OSError as e:
            logger.error(f"Error opening script {cfg.script}: {e}")
            return 2
    else:
        source = lines or sys.stdin
    try:
        while not repl.done:
            if prompt:
                print(PROMPT, end='', file=repl.out, flush=True)
            line: str = source.readline()
            if not line:
                break
            repl.execute(line)
    finally:
        if cfg.script is not None:
            source.close()
    return 0
