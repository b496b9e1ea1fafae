"""Degree-truncated completion of two-sided ideals in the free algebra.

A RewriteSystem is a list of rules ``head -> tail`` with every tail word
strictly smaller than its head under a degree-compatible order. Completion
is the noncommutative Buchberger procedure restricted to overlap words of
length at most ``degree_bound``; ``normal_form`` is then the membership
oracle for polynomials of degree at most the bound.
"""

from collections import deque
from dataclasses import dataclass
from typing import Deque, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from src.core.domain.errors import DegreeOverflowError, RuleExplosionError
from src.core.domain.ncpoly import DEGLEX, MonomialOrder, NCPoly, Terms, Word, add_into
from src.core.domain.scalars import ScalarField

DEFAULT_MAX_RULES = 20000


@dataclass(frozen=True)
class RewriteRule:
    head: Word
    tail: Terms

    def as_poly(self, field: ScalarField) -> NCPoly:
        """head - tail, an element of the ideal"""
        terms = {w: -c for w, c in self.tail.items()}
        terms[self.head] = field.one
        return NCPoly(field, terms)


@dataclass(frozen=True)
class Overlap:
    """Ambiguity between two rule heads: first = u.s, second = s.v"""

    first: Word
    second: Word
    shared: int

    @property
    def word(self) -> Word:
        return self.first + self.second[self.shared :]


@dataclass(frozen=True)
class AuditFailure:
    overlap: Overlap
    residual: NCPoly


class _Reducer:
    """Leftmost-match reduction of single words, memoised per rule set"""

    def __init__(self, field: ScalarField, rules: Dict[Word, Terms]):
        self.field = field
        self.rules = rules
        self.lengths = sorted({len(h) for h in rules})
        self.cache: Dict[Word, Terms] = {}

    def match(self, word: Word) -> Optional[Tuple[int, Word]]:
        size = len(word)
        for i in range(size):
            for length in self.lengths:
                if i + length > size:
                    break
                piece = word[i : i + length]
                if piece in self.rules:
                    return i, piece
        return None

    def reduce_word(self, word: Word) -> Terms:
        cached = self.cache.get(word)
        if cached is not None:
            return cached
        found = self.match(word)
        if found is None:
            result = {word: self.field.one}
        else:
            i, head = found
            prefix, suffix = word[:i], word[i + len(head) :]
            result = {}
            for tail_word, c in self.rules[head].items():
                add_into(result, self.reduce_word(prefix + tail_word + suffix), c)
        self.cache[word] = result
        return result

    def reduce(self, terms: Terms) -> Terms:
        result: Terms = {}
        for word, c in terms.items():
            add_into(result, self.reduce_word(word), c)
        return result


class RewriteSystem:
    """Completed rule list; immutable once built and safe to share"""

    def __init__(
        self,
        field: ScalarField,
        rules: Sequence[RewriteRule],
        order: MonomialOrder,
        degree_bound: int,
        confluent: bool,
        label: str = "",
    ):
        self.field = field
        self.rules: Tuple[RewriteRule, ...] = tuple(
            sorted(rules, key=lambda r: order.key(r.head))
        )
        self.order = order
        self.degree_bound = degree_bound
        self.confluent = confluent
        self.label = label
        self._reducer = _Reducer(field, {r.head: r.tail for r in self.rules})

    def __len__(self) -> int:
        return len(self.rules)

    def heads(self) -> List[Word]:
        return [r.head for r in self.rules]

    def stats(self) -> Dict[str, int]:
        return {
            "rules": len(self.rules),
            "degree_bound": self.degree_bound,
            "max_head_degree": max((len(r.head) for r in self.rules), default=0),
        }

    def reduce_terms(self, terms: Terms) -> Terms:
        return self._reducer.reduce(terms)

    def __repr__(self) -> str:
        label = self.label or "anonymous"
        return (
            f"RewriteSystem({label}, rules={len(self.rules)}, "
            f"bound={self.degree_bound})"
        )


def normal_form(p: NCPoly, system: RewriteSystem) -> NCPoly:
    """Unique reduced representative of p modulo the ideal presented by system"""
    degree = p.degree()
    if degree > system.degree_bound:
        raise DegreeOverflowError(degree, system.degree_bound)
    return NCPoly(system.field, system.reduce_terms(p.terms))


def _make_rule(terms: Terms, field: ScalarField, order: MonomialOrder) -> RewriteRule:
    head = max(terms, key=order.key)
    lead = terms[head]
    tail = {w: -c / lead for w, c in terms.items() if w != head}
    return RewriteRule(head, tail)


def _contains(word: Word, piece: Word) -> bool:
    size = len(piece)
    return any(word[i : i + size] == piece for i in range(len(word) - size + 1))


def overlaps(first: Word, second: Word, degree_bound: int) -> Iterator[Overlap]:
    """Proper suffix/prefix ambiguities of first.second with length <= bound"""
    for shared in range(1, min(len(first), len(second))):
        if len(first) + len(second) - shared > degree_bound:
            continue
        if first[len(first) - shared :] == second[:shared]:
            yield Overlap(first, second, shared)


def s_polynomial(
    overlap: Overlap, rules: Dict[Word, Terms], field: ScalarField
) -> Terms:
    """tail(first).v - u.tail(second) for the overlap word u.s.v"""
    u = overlap.first[: len(overlap.first) - overlap.shared]
    v = overlap.second[overlap.shared :]
    terms: Terms = {}
    for w, c in rules[overlap.first].items():
        add_into(terms, {w + v: c})
    for w, c in rules[overlap.second].items():
        add_into(terms, {u + w: -c})
    return terms


def complete(
    relations: Iterable[NCPoly],
    order: MonomialOrder = DEGLEX,
    degree_bound: int = 4,
    max_rules: int = DEFAULT_MAX_RULES,
    label: str = "",
    field: Optional[ScalarField] = None,
) -> RewriteSystem:
    """Truncated noncommutative Buchberger completion.

    Every rule head is kept irreducible by the other heads; the procedure
    stops when every overlap of length <= degree_bound resolves to zero.
    """
    relations = list(relations)
    if field is None:
        if not relations:
            raise ValueError("complete() needs a field when there are no relations")
        field = relations[0].field
    for r in relations:
        if r.degree() > degree_bound:
            raise DegreeOverflowError(r.degree(), degree_bound)

    rules: Dict[Word, Terms] = {}
    serial: Dict[Word, int] = {}
    next_serial = 0
    pending: Deque[Terms] = deque(r.terms for r in relations if r)
    processed: set = set()
    reducer = _Reducer(field, rules)

    while True:
        while pending:
            reduced = reducer.reduce(pending.popleft())
            if not reduced:
                continue
            rule = _make_rule(reduced, field, order)
            for head in [h for h in rules if _contains(h, rule.head)]:
                tail = rules.pop(head)
                serial.pop(head)
                old = {w: -c for w, c in tail.items()}
                old[head] = field.one
                pending.append(old)
            rules[rule.head] = rule.tail
            serial[rule.head] = next_serial
            next_serial += 1
            if len(rules) > max_rules:
                raise RuleExplosionError(len(rules), max_rules, degree_bound)
            reducer = _Reducer(field, rules)

        heads = sorted(rules, key=order.key)
        for first in heads:
            for second in heads:
                for overlap in overlaps(first, second, degree_bound):
                    key = (serial[first], serial[second], overlap.shared)
                    if key in processed:
                        continue
                    processed.add(key)
                    spoly = s_polynomial(overlap, rules, field)
                    if spoly:
                        pending.append(spoly)
        if not pending:
            break

    normalized = [
        RewriteRule(head, reducer.reduce(tail)) for head, tail in rules.items()
    ]
    return RewriteSystem(
        field, normalized, order, degree_bound, confluent=True, label=label
    )


def confluence_audit(system: RewriteSystem) -> List[AuditFailure]:
    """Re-check every overlap up to the bound and the irreducibility of heads"""
    rules = {r.head: r.tail for r in system.rules}
    failures: List[AuditFailure] = []
    heads = system.heads()
    for head in heads:
        for other in heads:
            if other != head and _contains(head, other):
                overlap = Overlap(head, other, len(other))
                failures.append(AuditFailure(overlap, NCPoly.word(system.field, head)))
    for first in heads:
        for second in heads:
            for overlap in overlaps(first, second, system.degree_bound):
                spoly = s_polynomial(overlap, rules, system.field)
                residual = system.reduce_terms(spoly)
                if residual:
                    residual_poly = NCPoly(system.field, residual)
                    failures.append(AuditFailure(overlap, residual_poly))
    return failures
