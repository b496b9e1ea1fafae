from enum import Enum
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field

ParamValue = Union[int, str, bool, None]

EQ1_CDET = "eq1-cdet"
EQ2_CLASSICAL = "eq2-classical"
EQ3_IMMANANT = "eq3-immanant"
EQ6_QUANTUM = "eq6-quantum"
EQ7_CORCAP = "eq7-corcap"
IMMANANT_PROPS = "immanant-props"
MREA_EMBEDDING = "mrea-embedding"

IDENTITY_IDS = (
    EQ1_CDET,
    EQ2_CLASSICAL,
    EQ3_IMMANANT,
    EQ6_QUANTUM,
    EQ7_CORCAP,
    IMMANANT_PROPS,
    MREA_EMBEDDING,
)

RMATRIX_CHECK = "rmatrix"
IDEMPOTENTS_CHECK = "idempotents"
CONFLUENCE_AUDIT = "confluence-audit"


class CheckStatus(str, Enum):
    VERIFIED = "verified"
    FAILED = "failed"


class IdentityReport(BaseModel):
    """Outcome of one identity or property check"""

    id: str
    params: Dict[str, ParamValue] = Field(default_factory=dict)
    status: CheckStatus
    entries_checked: int = 0
    failing_entry: Optional[str] = None
    residual: Optional[str] = None
    ms: float = 0.0
    stats: Dict[str, int] = Field(default_factory=dict)
    info: Dict[str, ParamValue] = Field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return self.status is CheckStatus.VERIFIED

    @classmethod
    def aggregate(
        cls,
        identity: str,
        params: Dict[str, ParamValue],
        reports: List["IdentityReport"],
    ) -> "IdentityReport":
        """One report standing for several sub-checks; the first failure wins"""
        failing = next((r for r in reports if not r.verified), None)
        info: Dict[str, ParamValue] = {"subchecks": len(reports)}
        for r in reports:
            for key, value in r.info.items():
                if isinstance(value, bool):
                    info[key] = bool(info.get(key, True)) and value
        stats: Dict[str, int] = {}
        for r in reports:
            for key, value in r.stats.items():
                stats[key] = max(stats.get(key, 0), value)
        return cls(
            id=identity,
            params=params,
            status=CheckStatus.FAILED if failing else CheckStatus.VERIFIED,
            entries_checked=sum(r.entries_checked for r in reports),
            failing_entry=_locate(failing) if failing else None,
            residual=failing.residual if failing else None,
            ms=round(sum(r.ms for r in reports), 3),
            stats=stats,
            info=info,
        )


def _locate(report: IdentityReport) -> str:
    where = ", ".join(
        f"{k}={v}"
        for k, v in report.params.items()
        if k in ("tableau", "with_trace")
    )
    entry = report.failing_entry or "?"
    return f"{where}: {entry}" if where else entry
