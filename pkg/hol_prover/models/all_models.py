"""
Import all models to ensure they are registered with SQLAlchemy
"""
from hol_prover.models.proof_runs import ProofRun
from hol_prover.models import Base


__all__ = [
    'ProofRun',
    'Base'
]
