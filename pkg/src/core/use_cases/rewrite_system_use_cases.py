import time
from typing import Dict, List

from src.core.domain.algebras import (
    AlgebraPreset,
    SystemProvider,
    build_system,
    fingerprint,
    preset,
)
from src.core.domain.errors import ConfigurationError
from src.core.domain.model import CONFLUENCE_AUDIT, CheckStatus, IdentityReport
from src.core.domain.ncpoly import DEGLEX, format_word
from src.core.domain.rewriting import RewriteSystem, confluence_audit
from src.core.domain.rmatrix import RMatrix
from src.core.platform.appcontext.appcontext import Context

PRESET_AUDIT_BOUND = 3


class BuildSystemUseCase:
    """Use case for obtaining a completed rewrite system, cached by content hash"""

    def __init__(self, context: Context):
        self.context = context
        self.used: Dict[str, RewriteSystem] = {}

    def execute(self, preset: AlgebraPreset, degree_bound: int) -> RewriteSystem:
        """Find the system in the repository or complete it and store it"""
        if self.context.repositories is None:
            raise ValueError("Repositories not initialized")
        bound = self.context.bound_override or degree_bound
        key = fingerprint(preset, bound)
        repository = self.context.repositories.rewrite_system
        system = repository.find(key, preset.field, DEGLEX)
        if system is None:
            self.context.logger.info(f"Completing {preset.label} up to degree {bound}")
            start = time.perf_counter()
            system = build_system(preset, bound, max_rules=self.context.max_rules)
            elapsed = time.perf_counter() - start
            self.context.logger.info(f"Completed {system!r} in {elapsed:.2f}s")
            repository.save(key, system)
        else:
            self.context.logger.debug(f"Cache hit for {preset.label} at degree {bound}")
        self.used.setdefault(key, system)
        return system

    def provider(self) -> SystemProvider:
        return self.execute

    def systems(self) -> List[RewriteSystem]:
        """Systems handed out so far, in first-use order"""
        return list(self.used.values())


class ConfluenceAuditUseCase:
    """Use case for re-checking every overlap of a completed system"""

    def __init__(self, context: Context):
        self.context = context

    def execute(self, system: RewriteSystem) -> IdentityReport:
        start = time.perf_counter()
        failures = confluence_audit(system)
        first = failures[0] if failures else None
        return IdentityReport(
            id=CONFLUENCE_AUDIT,
            params={"system": system.label, "bound": system.degree_bound},
            status=CheckStatus.FAILED if first else CheckStatus.VERIFIED,
            entries_checked=len(system),
            failing_entry=format_word(first.overlap.word) if first else None,
            residual=first.residual.format() if first else None,
            ms=round((time.perf_counter() - start) * 1000.0, 3),
            stats=system.stats(),
            info={"unresolved": len(failures)},
        )


class AuditPresetUseCase:
    """Use case for completing a preset by name and auditing the result"""

    def __init__(
        self,
        context: Context,
        systems: BuildSystemUseCase,
        audit: ConfluenceAuditUseCase,
    ):
        self.context = context
        self.systems = systems
        self.audit = audit

    def execute(
        self, name: str, r: RMatrix, degree_bound: int = PRESET_AUDIT_BOUND
    ) -> IdentityReport:
        try:
            p = preset(name, r.N, r.field, r)
        except KeyError as e:
            raise ConfigurationError(e.args[0]) from e
        return self.audit.execute(self.systems.execute(p, degree_bound))
