from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

from src.core.domain.errors import FieldError
from src.core.domain.model import CheckStatus, IdentityReport, ParamValue
from src.core.domain.rewriting import DEFAULT_MAX_RULES
from src.core.domain.scalars import ScalarField

MAX_DIMENSION = 4
MAX_WIDTH = 4
SYMBOLIC_MAX_WIDTH = 2
QUANTUM_MAX_DIMENSION = 2
CLASSICAL_MAX_DIMENSION = 3
IDENTITY_MAX_WIDTH = 3

# excluded when two reports are compared for determinism
VOLATILE_FIELDS = ("ms", "cache_hits", "cache_misses")


class Suite(str, Enum):
    RMATRIX = "rmatrix"
    CLASSICAL = "classical"
    IDEMPOTENTS = "idempotents"
    QUANTUM = "quantum"
    IMMANANTS = "immanants"
    ALL = "all"


class ReportFormat(str, Enum):
    JSON = "json"
    TEXT = "text"


R_DEPENDENT = (Suite.QUANTUM, Suite.IMMANANTS, Suite.ALL)
CLASSICAL_SUITES = (Suite.CLASSICAL, Suite.ALL)
IDENTITY_SUITES = (Suite.CLASSICAL, Suite.QUANTUM, Suite.IMMANANTS, Suite.ALL)


class RunConfig(BaseModel):
    """Input schema for one verification run"""

    suite: Suite = Suite.ALL
    N: int = Field(2, ge=1, le=MAX_DIMENSION)
    n: int = Field(2, ge=1, le=MAX_WIDTH)
    q: Optional[str] = None
    rmatrix: str = "dj"
    bound: Optional[int] = Field(None, ge=2)
    cache_dir: Optional[str] = None
    report: ReportFormat = ReportFormat.JSON
    out: Optional[str] = None
    jobs: int = Field(1, ge=1)
    force: bool = False
    max_rules: int = Field(DEFAULT_MAX_RULES, ge=1)

    @model_validator(mode="after")
    def check_guards(self) -> "RunConfig":
        try:
            field = self.scalar_field()
        except FieldError as e:
            raise ValueError(f"{e}; pass --q symbolic or a rational such as 2") from e
        if self.force:
            return self
        if field.is_symbolic and self.n > SYMBOLIC_MAX_WIDTH:
            raise ValueError(
                f"symbolic q is limited to n <= {SYMBOLIC_MAX_WIDTH}, got n={self.n}; "
                "pass --q 2 or --force"
            )
        if self.N > QUANTUM_MAX_DIMENSION and self.suite in R_DEPENDENT:
            raise ValueError(
                f"the {self.suite.value} suite is limited to "
                f"N <= {QUANTUM_MAX_DIMENSION}, got N={self.N}; pass --force"
            )
        if self.n > IDENTITY_MAX_WIDTH and self.suite in IDENTITY_SUITES:
            raise ValueError(
                f"the {self.suite.value} suite is limited to "
                f"n <= {IDENTITY_MAX_WIDTH}, got n={self.n}; pass --force"
            )
        if self.suite in CLASSICAL_SUITES:
            if self.N > CLASSICAL_MAX_DIMENSION:
                raise ValueError(
                    f"classical identities are limited to "
                    f"N <= {CLASSICAL_MAX_DIMENSION}, got N={self.N}; pass --force"
                )
            if self.n == IDENTITY_MAX_WIDTH and self.N > QUANTUM_MAX_DIMENSION:
                raise ValueError(
                    f"the classical minor identity at n={self.n} is limited to "
                    f"N <= {QUANTUM_MAX_DIMENSION}, got N={self.N}; pass --force"
                )
        return self

    def scalar_field(self) -> ScalarField:
        """Unset q means symbolic up to n = 2 and q0 = 2 beyond"""
        if self.q is None:
            if self.n <= SYMBOLIC_MAX_WIDTH:
                return ScalarField.symbolic()
            return ScalarField.specialized()
        return ScalarField.from_token(self.q)

    def echo(self) -> Dict[str, ParamValue]:
        """The parts of the configuration that determine report content"""
        return {
            "suite": self.suite.value,
            "N": self.N,
            "n": self.n,
            "q": self.scalar_field().describe(),
            "rmatrix": self.rmatrix,
            "bound": self.bound,
            "max_rules": self.max_rules,
        }


class CheckOutput(BaseModel):
    """Output schema for one check"""

    id: str
    params: Dict[str, ParamValue]
    status: CheckStatus
    entries_checked: int
    failing_entry: Optional[str] = None
    residual: Optional[str] = None
    ms: float
    stats: Dict[str, int] = Field(default_factory=dict)
    info: Dict[str, ParamValue] = Field(default_factory=dict)

    @classmethod
    def from_report(cls, report: IdentityReport) -> "CheckOutput":
        """Create CheckOutput from IdentityReport domain model"""
        return cls(**report.model_dump())


class SuiteSummary(BaseModel):
    total: int
    verified: int
    failed: int
    cache_hits: int = 0
    cache_misses: int = 0
    ms: float = 0.0


class SuiteReport(BaseModel):
    """Output schema for a whole run"""

    config: Dict[str, ParamValue]
    checks: List[CheckOutput]
    summary: SuiteSummary

    @classmethod
    def from_reports(
        cls,
        config: RunConfig,
        reports: List[IdentityReport],
        cache_hits: int = 0,
        cache_misses: int = 0,
    ) -> "SuiteReport":
        verified = sum(1 for r in reports if r.verified)
        return cls(
            config=config.echo(),
            checks=[CheckOutput.from_report(r) for r in reports],
            summary=SuiteSummary(
                total=len(reports),
                verified=verified,
                failed=len(reports) - verified,
                cache_hits=cache_hits,
                cache_misses=cache_misses,
                ms=round(sum(r.ms for r in reports), 3),
            ),
        )

    @property
    def all_verified(self) -> bool:
        return self.summary.failed == 0

    def comparable(self) -> Dict[str, Any]:
        """Report content with timing and cache counters removed"""
        return self.model_dump(
            mode="json",
            exclude={
                "checks": {"__all__": {"ms"}},
                "summary": set(VOLATILE_FIELDS),
            },
        )

    def to_text(self) -> str:
        lines = ["config: " + " ".join(f"{k}={v}" for k, v in self.config.items())]
        for check in self.checks:
            params = " ".join(f"{k}={v}" for k, v in check.params.items())
            status = check.status.value.upper()
            lines.append(f"[{status:8}] {check.id} {params} ({check.ms:.0f} ms)")
            if check.status is CheckStatus.FAILED:
                lines.append(f"    failing entry: {check.failing_entry}")
                lines.append(f"    residual: {check.residual}")
        s = self.summary
        lines.append(
            f"{s.verified}/{s.total} verified, {s.failed} failed; "
            f"cache {s.cache_hits} hits, {s.cache_misses} misses; {s.ms:.0f} ms"
        )
        return "\n".join(lines) + "\n"
