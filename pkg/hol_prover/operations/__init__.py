"""
Run ledger operations module
Contains the result object, the base operations class and table creation
"""
# builtins
from abc import ABC, abstractmethod
from contextlib import contextmanager
from typing import Any, Callable, Dict, Iterator, List, Optional
import logging

# sqlalchemy
from sqlalchemy.exc import SQLAlchemyError
from sqlalchemy.orm import Session

# local
from hol_prover.common.config import StoreConfig
from hol_prover.models.all_models import Base


logger = logging.getLogger(__name__)


class OperationResult:
    """
    Result object for ledger operations
    """
    def __init__(self, success: bool, message: str = "", data: Any = None, error: str = ""):
        self.success = success
        self.message = message
        self.data = data
        self.error = error

    def to_dict(self) -> Dict[str, Any]:
        return {
            "success": self.success,
            "message": self.message,
            "data": self.data,
            "error": self.error
        }


def create_tables(store_config: StoreConfig) -> None:
    '''
    Create the ledger tables that do not exist yet.
    '''
    Base.metadata.create_all(store_config.engine)


class LedgerOperations(ABC):
    """
    Base class of the ledger operations.
    Each operation runs in its own session: committed when it succeeds,
    rolled back when it raises, closed in both cases.
    """

    def __init__(self, store_config: StoreConfig) -> None:
        self.store_config: StoreConfig = store_config
        create_tables(store_config)

    @contextmanager
    def session_scope(self, commit: bool = True) -> Iterator[Session]:
        session: Session = self.store_config.get_db_session()
        try:
            yield session
            if commit:
                session.commit()
        except Exception:
            session.rollback()
            raise
        finally:
            session.close()

    def guarded(self, action: str, work: Callable[[Session], OperationResult],
                commit: bool = True) -> OperationResult:
        '''
        Run work inside a session scope and turn failures into results.
        Args:
            action: str - what is being done, for the log, e.g. "recording proof run".
            work: Callable[[Session], OperationResult] - the operation body.
            commit: bool - False for read-only operations.
        Returns:
            OperationResult - the result of work, or a failed result carrying the error.
        '''
        try:
            with self.session_scope(commit) as session:
                return work(session)
        except ValueError as e:
            logger.error(f"Value Error {action}: {str(e)}")
            return OperationResult(success=False, error=str(e))
        except SQLAlchemyError as e:
            logger.error(f"Database error {action}: {str(e)}")
            return OperationResult(success=False, error=f"Database error: {str(e)}")

    @abstractmethod
    def find(self, filters: Dict[str, Any], limit: Optional[int] = None,
             offset: Optional[int] = None) -> OperationResult:
        """
        Find records matching every filter
        Args:
            filters: Dictionary of field-value pairs
            limit: Maximum number of records to return
            offset: Number of records to skip
        Returns:
            OperationResult with a list of records or error
        """
        pass

    @abstractmethod
    def find_one(self, filters: Dict[str, Any]) -> OperationResult:
        pass

    @abstractmethod
    def insert(self, data: Dict[str, Any]) -> OperationResult:
        pass

    @abstractmethod
    def insert_many(self, data_list: List[Dict[str, Any]]) -> OperationResult:
        pass

    @abstractmethod
    def delete(self, filters: Dict[str, Any]) -> OperationResult:
        """
        Delete every record matching the filters
        Returns:
            OperationResult with the deleted count
        """
        pass
