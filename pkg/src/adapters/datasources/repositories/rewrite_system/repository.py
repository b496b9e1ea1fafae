import hashlib
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ValidationError

from src.adapters.datasources.repositories.rewrite_system.repository_interface import (
    RewriteSystemRepositoryInterface,
)
from src.core.domain.errors import CacheError, FieldError
from src.core.domain.ncpoly import MonomialOrder
from src.core.domain.rewriting import RewriteRule, RewriteSystem, confluence_audit
from src.core.domain.scalars import ScalarField
from src.core.platform.logging import Logger, get_logger


class RuleRecord(BaseModel):
    """One rule: head word and tail terms with scalar strings"""

    head: List[int]
    tail: List[Tuple[List[int], str]]


class SystemRecord(BaseModel):
    """Cache file contents for one completed system"""

    key: str
    label: str
    field: str
    order: str
    degree_bound: int
    rule_hash: str
    rules: List[RuleRecord]


def rule_records(system: RewriteSystem) -> List[RuleRecord]:
    f = system.field
    return [
        RuleRecord(
            head=list(rule.head),
            tail=[
                (list(word), f.format(c))
                for word, c in sorted(
                    rule.tail.items(), key=lambda t: system.order.key(t[0])
                )
            ],
        )
        for rule in system.rules
    ]


def hash_rules(rules: List[RuleRecord]) -> str:
    payload = "\n".join(rule.model_dump_json() for rule in rules)
    return hashlib.sha256(payload.encode()).hexdigest()


def to_record(key: str, system: RewriteSystem) -> SystemRecord:
    rules = rule_records(system)
    return SystemRecord(
        key=key,
        label=system.label,
        field=system.field.describe(),
        order=system.order.describe(),
        degree_bound=system.degree_bound,
        rule_hash=hash_rules(rules),
        rules=rules,
    )


def from_record(
    record: SystemRecord, field: ScalarField, order: MonomialOrder
) -> RewriteSystem:
    """Rebuild a system; raises CacheError when the record does not match"""
    if record.field != field.describe() or record.order != order.describe():
        raise CacheError(
            f"record {record.key} was written for {record.field}, {record.order}"
        )
    if hash_rules(record.rules) != record.rule_hash:
        raise CacheError(f"rule hash mismatch in record {record.key}")
    try:
        rules = [
            RewriteRule(
                tuple(rule.head),
                {tuple(word): field.parse(text) for word, text in rule.tail},
            )
            for rule in record.rules
        ]
    except FieldError as e:
        raise CacheError(f"unreadable scalar in record {record.key}: {e}") from e
    return RewriteSystem(
        field, rules, order, record.degree_bound, confluent=True, label=record.label
    )


class InMemoryRewriteSystemRepository(RewriteSystemRepositoryInterface):
    """In-memory implementation of the rewrite system repository"""

    def __init__(self):
        self._systems: Dict[str, RewriteSystem] = {}
        self.hits = 0
        self.misses = 0

    def find(
        self, key: str, field: ScalarField, order: MonomialOrder
    ) -> Optional[RewriteSystem]:
        """Find system by key"""
        system = self._systems.get(key)
        if system is None:
            self.misses += 1
        else:
            self.hits += 1
        return system

    def save(self, key: str, system: RewriteSystem) -> None:
        """Store system by key"""
        self._systems[key] = system


class FileRewriteSystemRepository(InMemoryRewriteSystemRepository):
    """JSON files under a cache directory, one per content hash.

    Loading re-runs the confluence audit; a corrupt or inconsistent file is
    reported and treated as a miss so the caller recomputes and overwrites it.
    """

    def __init__(self, cache_dir: Path, logger: Optional[Logger] = None):
        super().__init__()
        self.cache_dir = Path(cache_dir)
        self.logger = logger or get_logger("capelli.rewrite_system_cache")

    def path_for(self, key: str) -> Path:
        return self.cache_dir / f"{key}.json"

    def find(
        self, key: str, field: ScalarField, order: MonomialOrder
    ) -> Optional[RewriteSystem]:
        """Find system in memory, then on disk"""
        system = self._systems.get(key)
        if system is not None:
            self.hits += 1
            return system
        path = self.path_for(key)
        if not path.exists():
            self.misses += 1
            return None
        try:
            record = SystemRecord.model_validate_json(path.read_text())
            if record.key != key:
                raise CacheError(f"{path.name} holds record {record.key}")
            system = from_record(record, field, order)
            failures = confluence_audit(system)
            if failures:
                raise CacheError(f"{len(failures)} unresolved overlaps in {path.name}")
        except (OSError, ValidationError, CacheError) as e:
            self.logger.warning(f"Discarding cached system {path.name}: {e}")
            self.misses += 1
            return None
        self.logger.debug(f"Loaded {system!r} from {path}")
        self._systems[key] = system
        self.hits += 1
        return system

    def save(self, key: str, system: RewriteSystem) -> None:
        """Store system in memory and on disk; a failed write keeps it in memory only"""
        super().save(key, system)
        path = self.path_for(key)
        try:
            self.cache_dir.mkdir(parents=True, exist_ok=True)
            path.write_text(to_record(key, system).model_dump_json())
        except OSError as e:
            error = CacheError(f"cannot write {path}: {e}")
            self.logger.warning(f"Keeping {system!r} in memory only: {error}")
            return
        self.logger.debug(f"Wrote {system!r} to {path}")
