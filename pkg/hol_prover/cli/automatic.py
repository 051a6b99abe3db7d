"""
Automatic mode: schedule-driven proving with one SZS line per problem.
"""
# builtins
from dataclasses import replace
import logging
import os
import sys
from typing import Dict, List, Optional, TextIO

# local
from hol_prover.atp.backend import BackendConfig, BackendConfigError, apply_override
from hol_prover.atp.szs import SzsStatus, is_solved, status_line
from hol_prover.basis.terms import HolTypeError
from hol_prover.cli.config import CliConfig
from hol_prover.parser.thf_parser import Problem, TptpSyntaxError, parse_file
from hol_prover.search.features import ProblemFeatures, analyze_problem
from hol_prover.search.main_loop import SzsResult, format_proof, prove_problem
from hol_prover.search.schedule import Schedule, apply_overrides, select_schedule
from strategy_state.state_manager import StrategyStateManager


logger = logging.getLogger(__name__)

EXIT_SOLVED = 0
EXIT_UNSOLVED = 1
EXIT_ERROR = 2


def load_backends(cfg: CliConfig, manager: Optional[StrategyStateManager] = None) -> Optional[Dict[str, BackendConfig]]:
    '''
    Backend catalogue with the command line overrides applied. Enabled local
    backends whose executable is missing are disabled with a warning.
    Returns:
        Optional[Dict[str, BackendConfig]] - None with --no-atp.
    Raises:
        BackendConfigError: malformed catalogue entry or --atp value.
    '''
    if cfg.no_atp:
        return None
    manager = manager or StrategyStateManager()
    backends: Dict[str, BackendConfig] = {
        entry["name"]: BackendConfig.from_dict(entry) for entry in manager.get_state_list("backends")
    }
    for override in cfg.atp:
        backends = apply_override(backends, override)
    for name, backend in list(backends.items()):
        if cfg.atp_timeout is not None:
            backend = replace(backend, timeout=cfg.atp_timeout)
        if cfg.keep_temp:
            backend = replace(backend, keep_temp=True)
        if backend.enabled and not backend.remote and not backend.executable_available():
            logger.warning(f"backend {name}: {backend.command[0]} not found, disabled")
            backend = replace(backend, enabled=False)
        backends[name] = backend
    return backends


def schedule_for(problem: Problem, cfg: CliConfig) -> Schedule:
    features: ProblemFeatures = analyze_problem(problem)
    schedule: Schedule = select_schedule(features, cfg.timeout)
    return apply_overrides(
        schedule,
        choice=cfg.choice,
        leib_eq=cfg.leib_eq,
        andr_eq=cfg.andr_eq,
        ps_mode=cfg.ps_mode,
        translation=cfg.translation,
    )


def prove_file(path: str, cfg: CliConfig, backends: Optional[Dict[str, BackendConfig]] = None) -> SzsResult:
    '''
    Parse, analyse, schedule and prove one problem file. Input errors give
    an Error result instead of raising.
    '''
    name: str = os.path.basename(path)
    try:
        problem: Problem = parse_file(path)
        schedule: Schedule = schedule_for(problem, cfg)
        return prove_problem(problem, schedule, backends, name)
    except (TptpSyntaxError, HolTypeError, OSError, ValueError) as e:
        logger.error(f"Error proving {path}: {e}")
        return SzsResult(SzsStatus.ERROR, problem=name)


def exit_code(status: SzsStatus) -> int:
    if is_solved(status):
        return EXIT_SOLVED
    return EXIT_ERROR if status == SzsStatus.ERROR else EXIT_UNSOLVED


def run_automatic(cfg: CliConfig, out: Optional[TextIO] = None) -> int:
    '''
    Prove every input file and print its SZS status line (and, with -v, the
    proof or saturated clause set).
    Returns:
        int - 0 when every problem was decided, nonzero otherwise.
    '''
    out = out or sys.stdout
    try:
        backends: Optional[Dict[str, BackendConfig]] = load_backends(cfg)
    except (BackendConfigError, KeyError, ValueError) as e:
        logger.error(f"Error loading backends: {e}")
        for path in cfg.files:
            print(status_line(SzsStatus.ERROR, os.path.basename(path)), file=out)
        return EXIT_ERROR
    code: int = EXIT_SOLVED
    for path in cfg.files:
        result: SzsResult = prove_file(path, cfg, backends)
        print(status_line(result.status, result.problem), file=out)
        if cfg.verbosity >= 1:
            lines: List[str] = format_proof(result)
            if lines:
                print('\n'.join(lines), file=out)
        logger.info(f"{result.problem}: {result.status} by {result.strategy or '-'} in {result.elapsed:.2f}s")
        code = max(code, exit_code(result.status))
    out.flush()
    return code
