from unittest.mock import Mock

import pytest

from src.adapters.services.suite.suite_service import SuiteService
from src.core.domain.errors import ConfigurationError, RewriteError
from src.core.domain.model import (
    CONFLUENCE_AUDIT,
    EQ1_CDET,
    EQ2_CLASSICAL,
    EQ3_IMMANANT,
    EQ6_QUANTUM,
    EQ7_CORCAP,
    IDEMPOTENTS_CHECK,
    IDENTITY_IDS,
    IMMANANT_PROPS,
    MREA_EMBEDDING,
    RMATRIX_CHECK,
    CheckStatus,
)
from src.core.domain.rmatrix import RMatrix
from src.core.domain.scalars import ScalarField
from src.core.platform.logging import Logger
from src.core.use_cases.use_cases import Usecases
from src.schemas.schemas import RunConfig, SuiteReport
from tests.conftest import ReportBuilder


def report(identity: str, verified: bool = True):
    builder = ReportBuilder().with_id(identity)
    return builder.build() if verified else builder.failed().build()


class TestSuiteService:
    """Test cases for SuiteService"""

    def setup_method(self):
        """Setup test fixtures"""
        self.r = Mock(spec=RMatrix)
        self.r.is_valid = True
        self.r.N = 2
        self.r.field = ScalarField.symbolic()

        self.mock_usecases = Mock(spec=Usecases)
        self.mock_usecases.context = Mock()
        self.mock_usecases.context.field = ScalarField.symbolic()
        self.mock_usecases.context.repositories.rewrite_system.hits = 3
        self.mock_usecases.context.repositories.rewrite_system.misses = 2

        rmatrix = Mock()
        rmatrix.load_usecase.execute.return_value = self.r
        rmatrix.validate_usecase.execute.return_value = report(RMATRIX_CHECK)
        self.mock_usecases.rmatrix = rmatrix

        classical = Mock()
        classical.cdet_usecase.execute.return_value = report(EQ1_CDET)
        classical.capelli_usecase.execute.return_value = report(EQ2_CLASSICAL)
        classical.immanant_usecase.execute.return_value = report(EQ3_IMMANANT)
        self.mock_usecases.classical = classical

        self.mock_usecases.idempotents = Mock()
        verify = self.mock_usecases.idempotents.verify_usecase
        verify.execute.return_value = report(IDEMPOTENTS_CHECK)

        quantum = Mock()
        quantum.capelli_usecase.execute.return_value = report(EQ6_QUANTUM)
        quantum.corcap_usecase.execute.return_value = report(EQ7_CORCAP)
        quantum.mrea_embedding_usecase.execute.return_value = report(MREA_EMBEDDING)
        properties = quantum.immanant_properties_usecase
        properties.execute.return_value = report(IMMANANT_PROPS)
        self.mock_usecases.quantum = quantum

        self.system = Mock()
        self.system.label = "weyl_classical(N=2, symbolic)"
        rewrite = Mock()
        rewrite.build_system_usecase.systems.return_value = [self.system]
        rewrite.audit_usecase.execute.return_value = report(CONFLUENCE_AUDIT)
        rewrite.preset_audit_usecase.execute.return_value = report(CONFLUENCE_AUDIT)
        self.mock_usecases.rewrite = rewrite

        self.logger = Mock(spec=Logger)
        self.service = SuiteService(self.mock_usecases, self.logger)

    def ids(self, result: SuiteReport):
        return [check.id for check in result.checks]

    def test_classical_suite_order(self):
        result = self.service.run(RunConfig(suite="classical", N=2, n=2))

        assert self.ids(result) == [EQ1_CDET, EQ2_CLASSICAL, EQ3_IMMANANT, EQ3_IMMANANT]
        assert result.all_verified
        self.mock_usecases.rmatrix.load_usecase.execute.assert_not_called()
        self.mock_usecases.classical.immanant_usecase.execute.assert_any_call((1, 1), 2)

    def test_cache_counters_reach_the_summary(self):
        result = self.service.run(RunConfig(suite="classical", N=1, n=1))
        assert (result.summary.cache_hits, result.summary.cache_misses) == (3, 2)

    def test_quantum_suite_order(self):
        result = self.service.run(RunConfig(suite="quantum", N=2, n=2))

        assert self.ids(result) == [
            RMATRIX_CHECK,
            EQ6_QUANTUM,
            EQ7_CORCAP,
            EQ7_CORCAP,
            MREA_EMBEDDING,
        ]
        self.mock_usecases.rmatrix.load_usecase.execute.assert_called_once_with("dj", 2)

    def test_invalid_rmatrix_skips_dependent_checks(self):
        self.r.is_valid = False
        validate = self.mock_usecases.rmatrix.validate_usecase
        validate.execute.return_value = report(RMATRIX_CHECK, False)

        config = RunConfig(suite="quantum", N=2, n=2, rmatrix="permutation")
        result = self.service.run(config)

        assert self.ids(result) == [RMATRIX_CHECK]
        assert not result.all_verified
        self.mock_usecases.quantum.capelli_usecase.execute.assert_not_called()

    def test_idempotents_suite(self):
        result = self.service.run(RunConfig(suite="idempotents", N=2, n=2))

        assert self.ids(result) == [RMATRIX_CHECK, IDEMPOTENTS_CHECK, IDEMPOTENTS_CHECK]
        calls = self.mock_usecases.idempotents.verify_usecase.execute.call_args_list
        assert [call.args[0].kind for call in calls] == ["classical", "hecke"]
        assert calls[1].args[0].rmatrix is self.r

    def test_immanants_centrality_depends_on_width(self):
        self.service.run(RunConfig(suite="immanants", N=2, n=2))
        call = self.mock_usecases.quantum.immanant_properties_usecase.execute.call_args
        assert call.kwargs["centrality"] is True

        self.service.run(RunConfig(suite="immanants", N=2, n=3, q="2"))
        call = self.mock_usecases.quantum.immanant_properties_usecase.execute.call_args
        assert call.kwargs["centrality"] is False

    def test_all_suite_touches_every_identity(self):
        result = self.service.run(RunConfig(suite="all", N=2, n=2))

        ids = self.ids(result)
        assert set(IDENTITY_IDS) <= set(ids)
        assert ids[0] == RMATRIX_CHECK
        assert ids[-1] == CONFLUENCE_AUDIT
        audit = self.mock_usecases.rewrite.audit_usecase
        audit.execute.assert_called_once_with(self.system)

    def test_all_suite_audits_the_reflection_equation_algebras(self):
        result = self.service.run(RunConfig(suite="all", N=2, n=2))

        preset_audit = self.mock_usecases.rewrite.preset_audit_usecase.execute
        assert [call.args for call in preset_audit.call_args_list] == [
            ("rea", self.r),
            ("rea_inv", self.r),
        ]
        assert self.ids(result)[-3:] == [CONFLUENCE_AUDIT] * 3
        expected = f"Checking {CONFLUENCE_AUDIT} {{'preset': 'rea', 'N': 2}}"
        self.logger.info.assert_any_call(expected)

    def test_preset_audits_need_a_valid_rmatrix(self):
        self.r.is_valid = False
        self.service.run(RunConfig(suite="all", N=2, n=2))
        self.mock_usecases.rewrite.preset_audit_usecase.execute.assert_not_called()

    def test_other_suites_skip_the_audits(self):
        self.service.run(RunConfig(suite="quantum", N=2, n=2))
        self.mock_usecases.rewrite.audit_usecase.execute.assert_not_called()
        self.mock_usecases.rewrite.preset_audit_usecase.execute.assert_not_called()

    def test_domain_error_becomes_failed_check(self):
        capelli = self.mock_usecases.classical.capelli_usecase
        capelli.execute.side_effect = RewriteError("degree 5 above bound 4")

        result = self.service.run(RunConfig(suite="classical", N=2, n=2))

        failed = result.checks[1]
        assert failed.id == EQ2_CLASSICAL
        assert failed.status is CheckStatus.FAILED
        assert failed.failing_entry == "RewriteError"
        assert failed.residual == "degree 5 above bound 4"
        assert len(result.checks) == 4
        self.logger.log_exception.assert_called_once()

    def test_configuration_error_is_raised(self):
        load = self.mock_usecases.rmatrix.load_usecase
        load.execute.side_effect = ConfigurationError("N mismatch")

        with pytest.raises(ConfigurationError):
            self.service.run(RunConfig(suite="rmatrix", N=2, n=2))

        self.logger.log_exception.assert_called_once()
