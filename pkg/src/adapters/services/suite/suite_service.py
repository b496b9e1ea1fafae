from typing import Callable, Dict, List, Optional

from src.core.domain.algebras import REA, REA_INV
from src.core.domain.combinatorics import (
    ClassicalCarrier,
    HeckeCarrier,
    format_shape,
    partitions,
)
from src.core.domain.errors import CapelliError, ConfigurationError
from src.core.domain.model import (
    CONFLUENCE_AUDIT,
    EQ1_CDET,
    EQ2_CLASSICAL,
    EQ3_IMMANANT,
    EQ6_QUANTUM,
    EQ7_CORCAP,
    IDEMPOTENTS_CHECK,
    IMMANANT_PROPS,
    MREA_EMBEDDING,
    RMATRIX_CHECK,
    CheckStatus,
    IdentityReport,
    ParamValue,
)
from src.core.domain.rmatrix import RMatrix
from src.core.platform.logging import Logger, get_logger
from src.core.use_cases.use_cases import Usecases
from src.schemas.schemas import RunConfig, Suite, SuiteReport

# immanant centrality needs a system one degree above the immanant
CENTRALITY_MAX_WIDTH = 2
STANDALONE_PRESETS = (REA, REA_INV)
NEEDS_RMATRIX = (Suite.RMATRIX, Suite.IDEMPOTENTS, Suite.QUANTUM, Suite.IMMANANTS)


class SuiteService:
    """Service running the selected suites in dependency order"""

    def __init__(self, usecases: Usecases, logger: Optional[Logger] = None):
        self.usecases = usecases
        self.logger = logger or get_logger("capelli.suite_service")

    def run(self, config: RunConfig) -> SuiteReport:
        """Run every check of the configured suite"""
        try:
            self.logger.info(f"Running suite {config.suite.value} with {config.echo()}")
            reports: List[IdentityReport] = []
            suite = config.suite
            every = suite is Suite.ALL

            r: Optional[RMatrix] = None
            if every or suite in NEEDS_RMATRIX:
                r = self._rmatrix(config, reports)
            if every or suite is Suite.CLASSICAL:
                self._classical(config, reports)
            if every or suite is Suite.IDEMPOTENTS:
                self._idempotents(config, r, reports)
            if r is not None and r.is_valid:
                if every or suite is Suite.QUANTUM:
                    self._quantum(config, r, reports)
                if every or suite is Suite.IMMANANTS:
                    self._immanants(config, r, reports)
            if every:
                self._audits(r, reports)

            repository = self.usecases.context.repositories.rewrite_system
            report = SuiteReport.from_reports(
                config, reports, repository.hits, repository.misses
            )
            summary = report.summary
            self.logger.info(
                f"Suite {suite.value} finished: "
                f"{summary.verified}/{summary.total} verified"
            )
            return report
        except Exception as e:
            self.logger.log_exception(f"Error running suite {config.suite.value}", e)
            raise

    def _check(
        self,
        identity: str,
        params: Dict[str, ParamValue],
        action: Callable[[], IdentityReport],
    ) -> IdentityReport:
        """Run one check; domain errors become a failed report"""
        self.logger.info(f"Checking {identity} {params}")
        try:
            report = action()
        except ConfigurationError:
            raise
        except CapelliError as e:
            self.logger.log_exception(f"{identity} {params} raised", e)
            return IdentityReport(
                id=identity,
                params=params,
                status=CheckStatus.FAILED,
                failing_entry=type(e).__name__,
                residual=str(e),
            )
        if report.verified:
            self.logger.info(
                f"{identity} verified: "
                f"{report.entries_checked} entries in {report.ms:.0f} ms"
            )
        else:
            self.logger.warning(
                f"{identity} failed at {report.failing_entry}: "
                f"residual {report.residual}"
            )
        return report

    def _rmatrix(
        self, config: RunConfig, reports: List[IdentityReport]
    ) -> Optional[RMatrix]:
        params: Dict[str, ParamValue] = {"N": config.N, "rmatrix": config.rmatrix}
        loaded: List[RMatrix] = []

        def validate() -> IdentityReport:
            r = self.usecases.rmatrix.load_usecase.execute(config.rmatrix, config.N)
            loaded.append(r)
            return self.usecases.rmatrix.validate_usecase.execute(r)

        reports.append(self._check(RMATRIX_CHECK, params, validate))
        return loaded[0] if loaded else None

    def _classical(self, config: RunConfig, reports: List[IdentityReport]) -> None:
        classical = self.usecases.classical
        N, n = config.N, config.n
        reports.append(
            self._check(EQ1_CDET, {"N": N}, lambda: classical.cdet_usecase.execute(N))
        )
        reports.append(
            self._check(
                EQ2_CLASSICAL,
                {"N": N, "n": n},
                lambda: classical.capelli_usecase.execute(N, n),
            )
        )
        for shape in partitions(n):
            reports.append(
                self._check(
                    EQ3_IMMANANT,
                    {"N": N, "shape": format_shape(shape)},
                    lambda: classical.immanant_usecase.execute(shape, N),
                )
            )

    def _idempotents(
        self, config: RunConfig, r: Optional[RMatrix], reports: List[IdentityReport]
    ) -> None:
        verify = self.usecases.idempotents.verify_usecase
        field = self.usecases.context.field
        reports.append(
            self._check(
                IDEMPOTENTS_CHECK,
                {"carrier": "classical", "N": config.N, "n": config.n},
                lambda: verify.execute(ClassicalCarrier(field, config.N, config.n)),
            )
        )
        if r is not None and r.is_valid:
            reports.append(
                self._check(
                    IDEMPOTENTS_CHECK,
                    {"carrier": "hecke", "N": config.N, "n": config.n},
                    lambda: verify.execute(HeckeCarrier(r, config.n)),
                )
            )

    def _quantum(
        self, config: RunConfig, r: RMatrix, reports: List[IdentityReport]
    ) -> None:
        quantum = self.usecases.quantum
        n = config.n
        reports.append(
            self._check(
                EQ6_QUANTUM,
                {"N": r.N, "n": n},
                lambda: quantum.capelli_usecase.execute(r, n),
            )
        )
        for shape in partitions(n):
            reports.append(
                self._check(
                    EQ7_CORCAP,
                    {"N": r.N, "shape": format_shape(shape)},
                    lambda: quantum.corcap_usecase.execute(r, shape),
                )
            )
        reports.append(
            self._check(
                MREA_EMBEDDING,
                {"N": r.N},
                lambda: quantum.mrea_embedding_usecase.execute(r),
            )
        )

    def _immanants(
        self, config: RunConfig, r: RMatrix, reports: List[IdentityReport]
    ) -> None:
        usecase = self.usecases.quantum.immanant_properties_usecase
        centrality = config.n <= CENTRALITY_MAX_WIDTH
        for shape in partitions(config.n):
            reports.append(
                self._check(
                    IMMANANT_PROPS,
                    {"N": r.N, "shape": format_shape(shape)},
                    lambda: usecase.execute(r, shape, centrality=centrality),
                )
            )

    def _audits(self, r: Optional[RMatrix], reports: List[IdentityReport]) -> None:
        rewrite = self.usecases.rewrite
        for system in rewrite.build_system_usecase.systems():
            reports.append(
                self._check(
                    CONFLUENCE_AUDIT,
                    {"system": system.label},
                    lambda: rewrite.audit_usecase.execute(system),
                )
            )
        if r is None or not r.is_valid:
            return
        # the reflection equation algebras on their own, outside W(R)
        for name in STANDALONE_PRESETS:
            reports.append(
                self._check(
                    CONFLUENCE_AUDIT,
                    {"preset": name, "N": r.N},
                    lambda: rewrite.preset_audit_usecase.execute(name, r),
                )
            )
