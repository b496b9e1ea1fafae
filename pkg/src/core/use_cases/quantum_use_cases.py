from src.core.domain.capelli import (
    verify_capelli_quantum,
    verify_corcap,
    verify_immanant_properties,
    verify_mrea_embedding,
)
from src.core.domain.combinatorics import Partition, format_shape, standard_tableaux
from src.core.domain.model import EQ7_CORCAP, IdentityReport
from src.core.domain.rmatrix import RMatrix
from src.core.platform.appcontext.appcontext import Context
from src.core.use_cases.rewrite_system_use_cases import BuildSystemUseCase

UNTRACED_INDEPENDENCE = "untraced_i_independent"


class VerifyQuantumCapelliUseCase:
    """Use case for the universal quantum identity in W(R)"""

    def __init__(self, context: Context, systems: BuildSystemUseCase):
        self.context = context
        self.systems = systems

    def execute(self, r: RMatrix, n: int) -> IdentityReport:
        return verify_capelli_quantum(
            r, n, self.systems.provider(), jobs=self.context.jobs
        )


class VerifyCorcapUseCase:
    """Use case for the idempotent-projected quantum identity of one shape.

    Untraced runs also check consistency with the universal identity. Both
    modes record whether the left side is the same for every tableau; the
    untraced outcome is informational and goes under its own key.
    """

    def __init__(self, context: Context, systems: BuildSystemUseCase):
        self.context = context
        self.systems = systems

    def execute(self, r: RMatrix, shape: Partition) -> IdentityReport:
        tableaux = standard_tableaux(shape)
        reports = [
            verify_corcap(
                r,
                shape,
                index,
                self.systems.provider(),
                with_trace=with_trace,
                consistency=not with_trace,
                check_independence=True,
                jobs=self.context.jobs,
            )
            for with_trace in (False, True)
            for index in range(len(tableaux))
        ]
        for report in reports:
            if not report.params["with_trace"]:
                report.info[UNTRACED_INDEPENDENCE] = report.info.pop("i_independent")
        params = {
            "N": r.N,
            "n": sum(shape),
            "shape": format_shape(shape),
            "tableaux": len(tableaux),
            "q": r.field.describe(),
            "rmatrix": r.source,
        }
        return IdentityReport.aggregate(EQ7_CORCAP, params, reports)


class VerifyImmanantPropertiesUseCase:
    """Use case for tableau independence and centrality of quantum immanants"""

    def __init__(self, context: Context, systems: BuildSystemUseCase):
        self.context = context
        self.systems = systems

    def execute(
        self, r: RMatrix, shape: Partition, centrality: bool = True
    ) -> IdentityReport:
        return verify_immanant_properties(
            r,
            shape,
            self.systems.provider(),
            centrality=centrality,
            jobs=self.context.jobs,
        )


class VerifyMreaEmbeddingUseCase:
    def __init__(self, context: Context, systems: BuildSystemUseCase):
        self.context = context
        self.systems = systems

    def execute(self, r: RMatrix) -> IdentityReport:
        return verify_mrea_embedding(r, self.systems.provider(), jobs=self.context.jobs)
