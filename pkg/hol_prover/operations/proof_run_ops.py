"""
Proof run operations - Ledger operations for the ProofRun model
"""
# builtins
from typing import Dict, List, Any, Optional
import logging

# sqlalchemy
from sqlalchemy.orm import Session, Query

# local
from hol_prover.models.proof_runs import ProofRun
from hol_prover.operations import LedgerOperations, OperationResult


logger = logging.getLogger(__name__)

THEOREM = "Theorem"


class ProofRunOps(LedgerOperations):
    """
    Proof run operations implementing LedgerOperations
    """

    def _filtered(self, session: Session, filters: Dict[str, Any]) -> Query:
        query: Query = session.query(ProofRun)
        for key, value in filters.items():
            if not hasattr(ProofRun, key):
                raise ValueError(f"ProofRun has no field {key}")
            query = query.filter(getattr(ProofRun, key) == value)
        return query

    def _build(self, data: Dict[str, Any]) -> ProofRun:
        if not data.get('problem') or not data.get('status') or not data.get('translation'):
            raise ValueError("problem, status and translation are required")
        expected: Optional[str] = data.get('expected_status')
        matched: bool = data.get('matched', expected is not None and data['status'] == expected)
        return ProofRun(
            problem=data['problem'],
            expected_status=expected,
            status=data['status'],
            matched=matched,
            elapsed=float(data.get('elapsed', 0.0)),
            translation=data['translation'],
            schedule=data.get('schedule'),
            strategy=data.get('strategy'),
            backend=data.get('backend'),
            timeout=data.get('timeout'),
        )

    def find(
        self,
        filters: Dict[str, Any],
        limit: Optional[int] = None,
        offset: Optional[int] = None,
        to_dict: bool = True
    ) -> OperationResult:
        """Find proof runs matching every filter, oldest first"""
        def work(session: Session) -> OperationResult:
            query: Query = self._filtered(session, filters).order_by(ProofRun.id)
            if offset:
                query = query.offset(offset)
            if limit:
                query = query.limit(limit)
            runs: List[ProofRun] = query.all()
            run_list: List[Any] = [run.to_dict() for run in runs] if to_dict else runs
            return OperationResult(success=True, message=f"Found {len(run_list)} proof runs", data=run_list)
        return self.guarded("finding proof runs", work, commit=False)

    def find_one(self, filters: Dict[str, Any], to_dict: bool = True) -> OperationResult:
        """Find the first proof run matching the filters"""
        def work(session: Session) -> OperationResult:
            run: Optional[ProofRun] = self._filtered(session, filters).order_by(ProofRun.id).first()
            if not run:
                return OperationResult(success=False, error="Proof run not found", data=None)
            return OperationResult(success=True, message="Proof run found", data=run.to_dict() if to_dict else run)
        return self.guarded("finding proof run", work, commit=False)

    def insert(self, data: Dict[str, Any]) -> OperationResult:
        """Insert a single proof run"""
        def work(session: Session) -> OperationResult:
            run: ProofRun = self._build(data)
            session.add(run)
            session.flush()
            return OperationResult(success=True, message="Proof run recorded", data=run.to_dict())
        return self.guarded("recording proof run", work)

    def insert_many(self, data_list: List[Dict[str, Any]]) -> OperationResult:
        """Insert several proof runs in one transaction"""
        def work(session: Session) -> OperationResult:
            runs: List[ProofRun] = [self._build(data) for data in data_list]
            session.add_all(runs)
            session.flush()
            return OperationResult(
                success=True, message=f"Recorded {len(runs)} proof runs", data=[run.to_dict() for run in runs]
            )
        return self.guarded("recording proof runs", work)

    def delete(self, filters: Dict[str, Any]) -> OperationResult:
        """Hard delete every proof run matching the filters"""
        def work(session: Session) -> OperationResult:
            deleted_count: int = self._filtered(session, filters).delete(synchronize_session=False)
            return OperationResult(
                success=True,
                message=f"Deleted {deleted_count} proof runs",
                data={"deleted_count": deleted_count}
            )
        return self.guarded("deleting proof runs", work)

    def match_rates(self, filters: Optional[Dict[str, Any]] = None) -> OperationResult:
        '''
        Percentage of runs whose status matches the expected status, per
        translation mode: "Thm" over problems expected to be theorems, "All"
        over every run with a known expected status.
        Returns:
            OperationResult with {translation: {"Thm": float, "All": float, "runs": int}}
        '''
        found: OperationResult = self.find(filters or {})
        if not found.success:
            return found
        rates: Dict[str, Dict[str, Any]] = rates_by_translation(found.data)
        return OperationResult(success=True, message=f"Match rates for {len(rates)} translation modes", data=rates)


def rates_by_translation(runs: List[Dict[str, Any]]) -> Dict[str, Dict[str, Any]]:
    rates: Dict[str, Dict[str, Any]] = {}
    for mode in sorted({run["translation"] for run in runs}):
        known: List[Dict[str, Any]] = [r for r in runs if r["translation"] == mode and r["expected_status"]]
        theorems: List[Dict[str, Any]] = [r for r in known if r["expected_status"] == THEOREM]
        rates[mode] = {"Thm": _percentage(theorems), "All": _percentage(known), "runs": len(known)}
    return rates


def _percentage(runs: List[Dict[str, Any]]) -> float:
    if not runs:
        return 0.0
    return round(100.0 * sum(1 for r in runs if r["matched"]) / len(runs), 1)
