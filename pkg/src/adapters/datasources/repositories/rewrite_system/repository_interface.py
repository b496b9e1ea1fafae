from abc import ABC, abstractmethod
from typing import Optional

from src.core.domain.ncpoly import MonomialOrder
from src.core.domain.rewriting import RewriteSystem
from src.core.domain.scalars import ScalarField


class RewriteSystemRepositoryInterface(ABC):
    """Interface for completed rewrite system storage"""

    hits: int = 0
    misses: int = 0

    @abstractmethod
    def find(
        self, key: str, field: ScalarField, order: MonomialOrder
    ) -> Optional[RewriteSystem]:
        """Find a completed system by content hash"""
        pass

    @abstractmethod
    def save(self, key: str, system: RewriteSystem) -> None:
        """Store a completed system under its content hash"""
        pass
