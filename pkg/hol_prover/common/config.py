# builtins
import os

# dotenv
from dotenv import load_dotenv

# sqlalchemy
from sqlalchemy import create_engine
from sqlalchemy.engine import Engine
from sqlalchemy.orm import sessionmaker, Session
from sqlalchemy.pool import StaticPool


load_dotenv('.env')

PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

# Search defaults
DEFAULT_TIMEOUT = 60  # total budget (seconds) when -t is not given
DEFAULT_UNIFICATION_DEPTH = 3  # binding steps per preunification branch
MAX_UNIFICATION_DEPTH = 6  # depth extension stops here
DEPTH_EXTENSION_PERIOD = 100  # given-clause iterations between depth extensions of stalled clauses
DEFAULT_MAX_UNIFIERS = 16  # preunifiers kept per constraint set
DEFAULT_PS_MODE = 2  # primitive substitution mode when -ps is not given
DEFAULT_DISPATCH_PERIOD = 50  # given-clause iterations between backend calls
DEFAULT_AGE_WEIGHT_RATIO = (1, 3)  # age picks : weight picks
DEFAULT_TRANSLATION = "fof_full"
MAX_CLAUSE_WEIGHT = 120  # generated clauses heavier than this are discarded
SLICE_GRACE = 2.0  # seconds a slot may overrun before it is killed

# Fresh symbols
RESERVED_SYMBOL_PATTERN = r"^(sk|leoLift|eps)\d+$"

# Finite model oracle
ORACLE_MAX_SIZE = 3
ORACLE_MAX_INTERPRETATIONS = 200000  # refuse beyond this many candidate interpretations

# SAT solver used by the monotonicity analysis
SAT_DECISION_BUDGET = 20000

# Paths and environment overrides
TPTP_ROOT = os.getenv("TPTP", "")
CORPUS_DIR = os.path.join(PROJECT_ROOT, "corpus")
SCHEDULES_FILE = os.getenv(
    "HOL_PROVER_SCHEDULES", os.path.join(PROJECT_ROOT, "strategy_state", "states", "schedules.json")
)
BACKENDS_FILE = os.getenv(
    "HOL_PROVER_BACKENDS", os.path.join(PROJECT_ROOT, "strategy_state", "states", "backends.json")
)
DB_URL = os.getenv("HOL_PROVER_DB_URL", f"sqlite:///{os.path.join(PROJECT_ROOT, 'proof_runs.db')}")
KEEP_TEMP = os.getenv("HOL_PROVER_KEEP_TEMP", "false").lower() == "true"

# SQL Alchemy Configuration
SQL_ECHO = os.getenv("SQL_ECHO", "false").lower() == "true"


# Run ledger configuration
class StoreConfig:
    '''
    StoreConfig class. Gives you the engine and session factory of the run ledger.
    '''
    def __init__(self, database_url: str = DB_URL) -> None:
        '''
        Initialize the StoreConfig class.
        Args:
            database_url: str - SQLAlchemy URL, e.g. sqlite:///proof_runs.db or sqlite://
        '''
        self.database_url: str = database_url
        in_memory: bool = database_url in ("sqlite://", "sqlite:///:memory:")
        engine_args: dict = {"echo": SQL_ECHO}
        if database_url.startswith("sqlite"):
            engine_args["connect_args"] = {"check_same_thread": False}
        if in_memory:
            engine_args["poolclass"] = StaticPool  # one shared connection keeps the in-memory database alive
        self.engine: Engine = create_engine(self.database_url, **engine_args)
        self.session = sessionmaker(
            autocommit=False,
            autoflush=False,
            bind=self.engine,
        )

    def get_db_url(self) -> str:
        return self.database_url

    def get_db_session(self) -> Session:
        '''
        Get a ledger session.
        '''
        return self.session()
