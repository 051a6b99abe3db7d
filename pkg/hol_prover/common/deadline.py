"""
Slot deadlines checked inside long running search and unification loops.
"""
# builtins
import time
from typing import Optional


class DeadlineExceeded(Exception):
    '''
    Raised when a time.monotonic() deadline has passed.
    '''


def check_deadline(deadline: Optional[float]) -> None:
    '''
    Raises:
        DeadlineExceeded: deadline is set and has passed.
    '''
    if deadline is not None and time.monotonic() >= deadline:
        raise DeadlineExceeded()
