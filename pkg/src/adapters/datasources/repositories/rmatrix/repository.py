from pathlib import Path
from typing import Union

from src.adapters.datasources.repositories.rmatrix.repository_interface import (
    RMatrixRepositoryInterface,
)
from src.core.domain.errors import ConfigurationError
from src.core.domain.rmatrix import (
    RMatrix,
    dj_rmatrix,
    dump_rmatrix,
    load_rmatrix,
    permutation_rmatrix,
)
from src.core.domain.scalars import ScalarField

DJ = "dj"
PERMUTATION = "permutation"


class RMatrixRepository(RMatrixRepositoryInterface):
    """Built-in R-matrix families plus the on-disk file format"""

    def load(self, source: str, field: ScalarField, N: int) -> RMatrix:
        """Load and validate an R-matrix"""
        if source == DJ:
            return dj_rmatrix(field, N)
        if source == PERMUTATION:
            return permutation_rmatrix(field, N)
        r = load_rmatrix(source, field)
        if r.N != N:
            raise ConfigurationError(
                f"{source} holds an R-matrix with N={r.N}, run asks for N={N}",
                hint=f"pass --N {r.N}",
            )
        return r

    def save(self, r: RMatrix, path: Union[str, Path]) -> Path:
        """Write the R-matrix file"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dump_rmatrix(r))
        return path
