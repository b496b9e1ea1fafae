from src.core.domain.capelli import (
    verify_capelli_classical,
    verify_cdet_capelli,
    verify_imm,
)
from src.core.domain.combinatorics import Partition, format_shape, standard_tableaux
from src.core.domain.model import EQ3_IMMANANT, IdentityReport
from src.core.platform.appcontext.appcontext import Context
from src.core.use_cases.rewrite_system_use_cases import BuildSystemUseCase


class VerifyCdetUseCase:
    """Use case for cdet(XD + K) = det X det D"""

    def __init__(self, context: Context, systems: BuildSystemUseCase):
        self.context = context
        self.systems = systems

    def execute(self, N: int, shift: bool = True) -> IdentityReport:
        return verify_cdet_capelli(
            N, self.context.field, self.systems.provider(), shift=shift
        )


class VerifyClassicalCapelliUseCase:
    """Use case for the universal classical identity at width n"""

    def __init__(self, context: Context, systems: BuildSystemUseCase):
        self.context = context
        self.systems = systems

    def execute(self, N: int, n: int) -> IdentityReport:
        return verify_capelli_classical(
            N, n, self.context.field, self.systems.provider(), jobs=self.context.jobs
        )


class VerifyImmanantIdentityUseCase:
    """Use case for the immanant identity of one shape.

    Every standard tableau of the shape is checked in both trace modes.
    """

    def __init__(self, context: Context, systems: BuildSystemUseCase):
        self.context = context
        self.systems = systems

    def execute(self, shape: Partition, N: int) -> IdentityReport:
        tableaux = standard_tableaux(shape)
        reports = [
            verify_imm(
                shape,
                index,
                N,
                with_trace,
                self.context.field,
                self.systems.provider(),
                jobs=self.context.jobs,
            )
            for with_trace in (False, True)
            for index in range(len(tableaux))
        ]
        params = {
            "N": N,
            "n": sum(shape),
            "shape": format_shape(shape),
            "tableaux": len(tableaux),
            "q": self.context.field.describe(),
        }
        return IdentityReport.aggregate(EQ3_IMMANANT, params, reports)
