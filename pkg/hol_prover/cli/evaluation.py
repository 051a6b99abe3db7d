"""
Corpus evaluation: automatic mode over many problems, recorded in the run ledger.
"""
# builtins
import logging
import os
from typing import Any, Dict, List, Optional

# local
from hol_prover.atp.backend import BackendConfig
from hol_prover.atp.szs import SzsStatus
from hol_prover.basis.terms import HolTypeError
from hol_prover.cli.automatic import load_backends, schedule_for
from hol_prover.cli.config import CliConfig
from hol_prover.common.config import StoreConfig
from hol_prover.operations import OperationResult
from hol_prover.operations.proof_run_ops import ProofRunOps, rates_by_translation
from hol_prover.parser.thf_parser import Problem, TptpSyntaxError, parse_file
from hol_prover.search.main_loop import SzsResult, prove_problem
from hol_prover.search.schedule import Schedule
from hol_prover.translation.intermediate import normalize_mode


logger = logging.getLogger(__name__)


def run_record(path: str, cfg: CliConfig, backends: Optional[Dict[str, BackendConfig]]) -> Dict[str, Any]:
    '''
    Prove one file and describe the run as a ledger row.
    '''
    name: str = os.path.basename(path)
    expected: str = ''
    schedule_name: Optional[str] = None
    try:
        problem: Problem = parse_file(path)
        expected = problem.expected_status
        schedule: Schedule = schedule_for(problem, cfg)
        schedule_name = schedule.name
        result: SzsResult = prove_problem(problem, schedule, backends, name)
    except (TptpSyntaxError, HolTypeError, OSError, ValueError) as e:
        logger.error(f"Error evaluating {path}: {e}")
        result = SzsResult(SzsStatus.ERROR, problem=name)
    status: str = result.status.value
    return {
        "problem": name,
        "expected_status": expected or None,
        "status": status,
        "matched": bool(expected) and status == expected,
        "elapsed": result.elapsed,
        "translation": cfg.translation,
        "schedule": schedule_name,
        "strategy": result.strategy or None,
        "backend": result.backend or None,
        "timeout": cfg.timeout,
    }


def evaluate_corpus(
    files: List[str],
    mode: str,
    timeout: float,
    ops: Optional[ProofRunOps] = None,
    no_atp: bool = False,
) -> Dict[str, Any]:
    '''
    Run the automatic mode over files with one translation mode, record
    every run and report how often the SZS output matches the Status header.
    Args:
        files: List[str] - problem files.
        mode: str - translation mode (aliases accepted).
        timeout: float - budget per problem in seconds.
        ops: ProofRunOps - ledger to record into, the configured one by default.
        no_atp: bool - prove without first-order backends.
    Returns:
        Dict[str, Any] - {"Thm": percent, "All": percent, "runs": count}
    '''
    cfg: CliConfig = CliConfig(files=list(files), timeout=timeout, translation=normalize_mode(mode), no_atp=no_atp)
    backends: Optional[Dict[str, BackendConfig]] = load_backends(cfg)
    runs: List[Dict[str, Any]] = []
    for path in files:
        record: Dict[str, Any] = run_record(path, cfg, backends)
        logger.info(f"{record['problem']}: {record['status']} (expected {record['expected_status'] or '-'})")
        runs.append(record)
    ops = ops or ProofRunOps(StoreConfig())
    stored: OperationResult = ops.insert_many(runs)
    if not stored.success:
        logger.error(f"Error recording {len(runs)} runs: {stored.error}")
    rates: Dict[str, Dict[str, Any]] = rates_by_translation(runs)
    return rates.get(cfg.translation, {"Thm": 0.0, "All": 0.0, "runs": 0})
