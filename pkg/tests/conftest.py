"""
Test fixtures and configuration for the test suite.
"""

from typing import Dict, List, Optional
from unittest.mock import Mock

import pytest

from src.adapters.datasources.repositories.repositories import Repositories
from src.adapters.datasources.repositories.rewrite_system.repository import (
    InMemoryRewriteSystemRepository,
)
from src.adapters.datasources.repositories.rmatrix.repository import RMatrixRepository
from src.core.domain.algebras import AlgebraPreset, build_system
from src.core.domain.model import CheckStatus, IdentityReport, ParamValue
from src.core.domain.ncpoly import GenId, GenKind, NCPoly
from src.core.domain.rewriting import RewriteSystem
from src.core.domain.rmatrix import dj_rmatrix
from src.core.domain.scalars import ScalarField
from src.core.platform.appcontext.appcontext import Context
from src.core.platform.logging import Logger


@pytest.fixture
def symbolic_field():
    """Fixture that provides the rational function field QQ(q)"""
    return ScalarField.symbolic()


@pytest.fixture
def specialized_field():
    """Fixture that provides QQ with q specialized to 2"""
    return ScalarField.specialized(2)


@pytest.fixture
def dj1(symbolic_field):
    return dj_rmatrix(symbolic_field, 1)


@pytest.fixture
def dj2(symbolic_field):
    return dj_rmatrix(symbolic_field, 2)


@pytest.fixture
def dj2_specialized(specialized_field):
    return dj_rmatrix(specialized_field, 2)


class SystemCache:
    """Session-wide provider so each preset is completed once per bound"""

    def __init__(self):
        self.systems: Dict[tuple, RewriteSystem] = {}

    def __call__(self, preset: AlgebraPreset, degree_bound: int) -> RewriteSystem:
        key = (preset.label, degree_bound)
        if key not in self.systems:
            self.systems[key] = build_system(preset, degree_bound)
        return self.systems[key]


@pytest.fixture(scope="session")
def provider():
    """Fixture that provides a caching SystemProvider shared by the whole session"""
    return SystemCache()


@pytest.fixture
def memory_repository():
    return InMemoryRewriteSystemRepository()


def letter(field: ScalarField, kind: GenKind, row: int = 1, col: int = 1) -> NCPoly:
    return NCPoly.letter(field, GenId(kind, row, col))


class ReportBuilder:
    """Builder pattern for creating identity reports with various outcomes"""

    def __init__(self):
        self.identity = "eq2-classical"
        self.params: Dict[str, ParamValue] = {"N": 1, "n": 2}
        self.status = CheckStatus.VERIFIED
        self.failing_entry: Optional[str] = None
        self.residual: Optional[str] = None
        self.info: Dict[str, ParamValue] = {}
        self.ms = 1.5

    def with_id(self, identity: str):
        self.identity = identity
        return self

    def with_params(self, **params):
        self.params = dict(params)
        return self

    def with_info(self, **info):
        self.info = dict(info)
        return self

    def with_ms(self, ms: float):
        self.ms = ms
        return self

    def failed(self, entry: str = "(11,11)", residual: str = "x11"):
        self.status = CheckStatus.FAILED
        self.failing_entry = entry
        self.residual = residual
        return self

    def build(self) -> IdentityReport:
        return IdentityReport(
            id=self.identity,
            params=self.params,
            status=self.status,
            entries_checked=4,
            failing_entry=self.failing_entry,
            residual=self.residual,
            ms=self.ms,
            stats={"rules": 3},
            info=self.info,
        )


@pytest.fixture
def report_builder():
    """Fixture that provides a ReportBuilder for flexible report creation"""
    return ReportBuilder


def assert_verified(report: IdentityReport):
    """Helper function to assert a report verified, showing the residual otherwise"""
    assert report.status is CheckStatus.VERIFIED, (
        f"{report.id} {report.params} failed at {report.failing_entry}: "
        f"{report.residual}"
    )


def statuses(reports: List[IdentityReport]) -> List[CheckStatus]:
    return [r.status for r in reports]


def make_context(field: ScalarField, **knobs) -> Context:
    """Context over in-memory repositories with a mocked logger"""
    repositories = Repositories(InMemoryRewriteSystemRepository(), RMatrixRepository())
    return Context(
        field=field, repositories=repositories, logger=Mock(spec=Logger), **knobs
    )


@pytest.fixture
def context(symbolic_field):
    return make_context(symbolic_field)
