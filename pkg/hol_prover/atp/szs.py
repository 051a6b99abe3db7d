"""
SZS status values and their extraction from prover output.
"""
# builtins
from enum import Enum
import re
from typing import Optional


class SzsStatus(str, Enum):
    THEOREM = "Theorem"
    UNSATISFIABLE = "Unsatisfiable"
    COUNTER_SATISFIABLE = "CounterSatisfiable"
    SATISFIABLE = "Satisfiable"
    TIMEOUT = "Timeout"
    GAVE_UP = "GaveUp"
    ERROR = "Error"
    UNKNOWN = "Unknown"

    def __str__(self) -> str:
        return self.value


STATUS_LINE = re.compile(r"^[%#]?\s*SZS status (\w+)", re.MULTILINE)


def parse_szs(output: str) -> SzsStatus:
    '''
    Status of the first well-formed `SZS status <X>` line, Unknown otherwise.
    Status tokens are case-sensitive; unknown tokens give Unknown.
    '''
    for match in STATUS_LINE.finditer(output or ''):
        try:
            return SzsStatus(match.group(1))
        except ValueError:
            continue
    return SzsStatus.UNKNOWN


def is_unsat(status: SzsStatus) -> bool:
    return status in (SzsStatus.THEOREM, SzsStatus.UNSATISFIABLE)


def is_sat(status: SzsStatus) -> bool:
    return status in (SzsStatus.SATISFIABLE, SzsStatus.COUNTER_SATISFIABLE)


def is_solved(status: SzsStatus) -> bool:
    return is_unsat(status) or is_sat(status)


def status_line(status: SzsStatus, problem: Optional[str] = None) -> str:
    suffix: str = f" for {problem}" if problem else ""
    return f"% SZS status {status.value}{suffix}"
