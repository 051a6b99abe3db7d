'''
Here we evaluate the prover on a problem corpus and record every run in the ledger.
'''

# builtins
from dotenv import load_dotenv
import glob
import logging
import os
import sys
from typing import Any, Dict, List

# local
from hol_prover.cli.evaluation import evaluate_corpus
from hol_prover.common.config import CORPUS_DIR, StoreConfig
from hol_prover.operations.proof_run_ops import ProofRunOps
from hol_prover.translation.intermediate import FULLY_TYPED, FOF_FULL, FOF_EXPERIMENT

# load the environment variables
load_dotenv('.env')

EVALUATION_TIMEOUT = float(os.getenv('HOL_PROVER_EVAL_TIMEOUT', '5'))


class CorpusEvaluation():
    '''
    Evaluate every translation mode on the corpus.
    '''
    def __init__(self, corpus_dir: str = CORPUS_DIR) -> None:
        self.files: List[str] = sorted(glob.glob(os.path.join(corpus_dir, '*.p')))
        self.ops: ProofRunOps = ProofRunOps(StoreConfig())

    def evaluate(self, modes: List[str], timeout: float = EVALUATION_TIMEOUT) -> Dict[str, Dict[str, Any]]:
        '''
        Evaluate the given translation modes and print one table row per mode.
        '''
        table: Dict[str, Dict[str, Any]] = {}
        print(f"{'mode':<16}{'Thm':>8}{'All':>8}{'runs':>6}")
        for mode in modes:
            rates: Dict[str, Any] = evaluate_corpus(self.files, mode, timeout, ops=self.ops)
            table[mode] = rates
            print(f"{mode:<16}{rates['Thm']:>7.1f}%{rates['All']:>7.1f}%{rates['runs']:>6}")
        return table


if __name__ == "__main__":
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr)
    if len(sys.argv) > 1 and sys.argv[1] in ("-h", "--help"):
        print("Usage:")
        print("  python evaluate.py                 - Evaluate all translation modes")
        print("  python evaluate.py <mode> [<mode>] - Evaluate the given modes only")
        sys.exit(1)

    evaluation = CorpusEvaluation()
    evaluation.evaluate(sys.argv[1:] or [FULLY_TYPED, FOF_FULL, FOF_EXPERIMENT])
