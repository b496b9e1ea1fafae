import time
from typing import Dict

from src.core.domain.errors import PoleError
from src.core.domain.model import RMATRIX_CHECK, CheckStatus, IdentityReport, ParamValue
from src.core.domain.rmatrix import RMatrix, evaluate_entries
from src.core.domain.tensorspace import TensorMat, perm_matrix
from src.core.platform.appcontext.appcontext import Context


def degenerates_to_flip(r: RMatrix) -> bool:
    """R evaluated at q = 1 is the flip P_12"""
    flip = perm_matrix(1, 2, 2, r.N, r.field)
    try:
        return evaluate_entries(r.op, 1) == {key: 1 for key in flip.entries}
    except PoleError:
        return False


def format_diagonal(weights: TensorMat) -> str:
    f = weights.field
    diagonal = (weights.entry((i,), (i,)) for i in range(1, weights.N + 1))
    return " ".join(f.format(w.constant_term()) for w in diagonal)


class LoadRMatrixUseCase:
    """Use case for loading an R-matrix from a family name or a file"""

    def __init__(self, context: Context):
        self.context = context

    def execute(self, source: str, N: int) -> RMatrix:
        if self.context.repositories is None:
            raise ValueError("Repositories not initialized")
        r = self.context.repositories.rmatrix.load(source, self.context.field, N)
        self.context.logger.info(r.describe())
        return r


class ValidateRMatrixUseCase:
    """Use case for reporting the braid, Hecke and skew-invertibility flags"""

    def __init__(self, context: Context):
        self.context = context

    def execute(self, r: RMatrix) -> IdentityReport:
        start = time.perf_counter()
        f = r.field
        info: Dict[str, ParamValue] = {f"{flag}_ok": ok for flag, ok in r.flags.items()}
        if r.skew is not None:
            info["quantum_dimension"] = f.format(r.skew.quantum_dimension())
            info["weights"] = format_diagonal(r.skew.weights)
            info["left_weights"] = format_diagonal(r.skew.left_weights)
        if f.is_symbolic:
            info["degenerates_to_flip"] = degenerates_to_flip(r)

        failing = next((flag for flag, ok in r.flags.items() if not ok), None)
        if failing:
            witness = r.witnesses.get(failing)
            self.context.logger.warning(
                f"R-matrix {r.source} failed {failing}: {witness}"
            )
        return IdentityReport(
            id=RMATRIX_CHECK,
            params={"N": r.N, "q": f.describe(), "rmatrix": r.source},
            status=CheckStatus.FAILED if failing else CheckStatus.VERIFIED,
            entries_checked=r.N**4,
            failing_entry=failing,
            residual=r.witnesses.get(failing) if failing else None,
            ms=round((time.perf_counter() - start) * 1000.0, 3),
            info=info,
        )
