"""
Command line configuration.
"""
# builtins
import argparse
from dataclasses import dataclass, field
from typing import List, Optional

# local
from hol_prover.common.config import DEFAULT_TIMEOUT
from hol_prover.translation.intermediate import normalize_mode


AUTOMATIC = "automatic"
INTERACTIVE = "interactive"


@dataclass
class CliConfig:
    '''
    Parsed command line. Rule switches left as None keep the schedule's choice.
    '''
    files: List[str] = field(default_factory=list)
    timeout: float = DEFAULT_TIMEOUT
    choice: Optional[bool] = None
    leib_eq: Optional[bool] = None
    andr_eq: Optional[bool] = None
    ps_mode: Optional[int] = None
    translation: Optional[str] = None
    atp: List[str] = field(default_factory=list)
    atp_timeout: Optional[float] = None
    no_atp: bool = False
    mode: str = AUTOMATIC
    script: Optional[str] = None
    verbosity: int = 0
    keep_temp: bool = False

    @property
    def interactive(self) -> bool:
        return self.mode == INTERACTIVE


def _translation_mode(value: str) -> str:
    try:
        return normalize_mode(value)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_arg_parser() -> argparse.ArgumentParser:
    parser: argparse.ArgumentParser = argparse.ArgumentParser(
        prog="hol-prover",
        description="Higher-order resolution prover with first-order backend cooperation.",
        allow_abbrev=False,
    )
    parser.add_argument("files", nargs="*", help="THF/FOF problem files")
    parser.add_argument("-t", "--timeout", type=float, default=DEFAULT_TIMEOUT,
                        help="total time budget in seconds")
    parser.add_argument("-nuc", action="store_true", help="disable the choice rules")
    parser.add_argument("-nrleq", action="store_true", help="disable the LeibEQ rule")
    parser.add_argument("-nraeq", action="store_true", help="disable the AndrEQ rule")
    parser.add_argument("-ps", type=int, choices=[0, 1, 2], default=None, help="primitive substitution mode")
    parser.add_argument("--translation", type=_translation_mode, default=None,
                        help="first-order translation: fully_typed, fof_full or fof_experiment")
    parser.add_argument("--atp", action="append", default=[], metavar="NAME=PATH",
                        help="use this executable for backend NAME (repeatable)")
    parser.add_argument("--atp-timeout", type=float, default=None, help="seconds per backend call")
    parser.add_argument("--no-atp", action="store_true", help="never call a first-order backend")
    parser.add_argument("-i", "--interactive", action="store_true", help="start the command interface")
    parser.add_argument("--script", default=None, help="run interactive commands from a file")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v prints proofs and progress, -vv debug output")
    parser.add_argument("--keep-temp", action="store_true", help="keep backend input files")
    return parser


def parse_cli(argv: Optional[List[str]] = None) -> CliConfig:
    '''
    Raises:
        SystemExit: unknown flags or bad values (argparse exits with code 2).
    '''
    parser: argparse.ArgumentParser = build_arg_parser()
    args: argparse.Namespace = parser.parse_args(argv)
    if args.timeout <= 0:
        parser.error("-t must be positive")
    interactive: bool = args.interactive or args.script is not None
    if not interactive and not args.files:
        parser.error("no problem file given")
    return CliConfig(
        files=list(args.files),
        timeout=args.timeout,
        choice=False if args.nuc else None,
        leib_eq=False if args.nrleq else None,
        andr_eq=False if args.nraeq else None,
        ps_mode=args.ps,
        translation=args.translation,
        atp=list(args.atp),
        atp_timeout=args.atp_timeout,
        no_atp=args.no_atp,
        mode=INTERACTIVE if interactive else AUTOMATIC,
        script=args.script,
        verbosity=args.verbose,
        keep_temp=args.keep_temp,
    )
