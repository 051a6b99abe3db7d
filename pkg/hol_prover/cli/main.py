"""
Entry point of the hol-prover command.
"""
# builtins
import logging
import sys
from typing import List, Optional

# local
from hol_prover.cli.automatic import run_automatic
from hol_prover.cli.config import CliConfig, parse_cli
from hol_prover.cli.repl import repl_loop


LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(verbosity: int) -> None:
    '''
    Diagnostics go to standard error; standard output carries only SZS lines and proofs.
    '''
    level: int = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def main(argv: Optional[List[str]] = None) -> int:
    cfg: CliConfig = parse_cli(argv)
    configure_logging(cfg.verbosity)
    if cfg.interactive:
        return repl_loop(cfg)
    return run_automatic(cfg)


if __name__ == '__main__':
    sys.exit(main())
