from abc import ABC, abstractmethod
from pathlib import Path
from typing import Union

from src.core.domain.rmatrix import RMatrix
from src.core.domain.scalars import ScalarField


class RMatrixRepositoryInterface(ABC):
    """Interface for R-matrix sources"""

    @abstractmethod
    def load(self, source: str, field: ScalarField, N: int) -> RMatrix:
        """Load a built-in family member ('dj', 'permutation') or a file"""
        pass

    @abstractmethod
    def save(self, r: RMatrix, path: Union[str, Path]) -> Path:
        """Write an R-matrix in the file format load() reads"""
        pass
