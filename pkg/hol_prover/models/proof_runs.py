"""
ProofRun model - Schema definition only
"""
# builtins
from datetime import datetime, timezone
from typing import Any, Dict

# sqlalchemy
from sqlalchemy import Boolean, Column, DateTime, Float, Index, Integer, String

# local
from hol_prover.models import Base


class ProofRun(Base):
    """
    One automatic-mode run of the prover on one problem
    """
    __tablename__ = "proof_runs"

    # Primary key
    id = Column(Integer, primary_key=True, autoincrement=True)

    # Problem
    problem = Column(String(255), nullable=False, index=True)
    expected_status = Column(String(32), nullable=True)

    # Outcome
    status = Column(String(32), nullable=False)
    matched = Column(Boolean, default=False, nullable=False)
    elapsed = Column(Float, default=0.0, nullable=False)

    # Configuration
    translation = Column(String(32), nullable=False)
    schedule = Column(String(64), nullable=True)
    strategy = Column(String(64), nullable=True)
    backend = Column(String(64), nullable=True)
    timeout = Column(Float, nullable=True)

    # Timestamps
    created_at = Column(DateTime, default=lambda: datetime.now(timezone.utc), nullable=False)

    # Indexes
    __table_args__ = (
        Index('idx_proof_run_translation', translation),
        Index('idx_proof_run_expected', expected_status),
    )

    def to_dict(self) -> Dict[str, Any]:
        """Convert model instance to dictionary"""
        return {
            "id": self.id,
            "problem": self.problem,
            "expected_status": self.expected_status,
            "status": self.status,
            "matched": self.matched,
            "elapsed": self.elapsed,
            "translation": self.translation,
            "schedule": self.schedule,
            "strategy": self.strategy,
            "backend": self.backend,
            "timeout": self.timeout,
            "created_at": self.created_at.isoformat() if self.created_at else None,
        }
