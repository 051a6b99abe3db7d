"""
HOL Prover Package
Main entry point for the hol-prover package
"""
from hol_prover.parser.thf_parser import (
    Problem,
    AnnotatedFormula,
    TptpSyntaxError,
    parse_problem,
    parse_file
)

from hol_prover.atp.szs import (
    SzsStatus,
    parse_szs,
    status_line
)

from hol_prover.search.schedule import (
    Strategy,
    Schedule,
    select_schedule
)

from hol_prover.search.main_loop import (
    SzsResult,
    prove_problem,
    format_proof
)

__version__ = "0.1.0"
__all__ = [
    # Parsing
    'Problem',
    'AnnotatedFormula',
    'TptpSyntaxError',
    'parse_problem',
    'parse_file',
    # Results
    'SzsStatus',
    'parse_szs',
    'status_line',
    # Search
    'Strategy',
    'Schedule',
    'select_schedule',
    'SzsResult',
    'prove_problem',
    'format_proof'
]
