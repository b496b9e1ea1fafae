"""Free associative algebra over a session field.

Words are tuples of integer letter codes; a letter code packs the generator
kind, row and column so that comparing codes compares generator precedence.
"""

from dataclasses import dataclass, field
from enum import IntEnum
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Tuple

from src.core.domain.errors import FieldMismatchError
from src.core.domain.scalars import Scalar, ScalarField

Word = Tuple[int, ...]
Terms = Dict[Word, Scalar]

EMPTY_WORD: Word = ()


class GenKind(IntEnum):
    """Generator kinds; the value is the precedence rank of the kind"""

    LHAT = 1
    X = 2
    M = 3
    D_CL = 4
    D_Q = 5


_PREFIX = {
    GenKind.LHAT: "l",
    GenKind.X: "x",
    GenKind.M: "m",
    GenKind.D_CL: "d",
    GenKind.D_Q: "d",
}


class GenId(NamedTuple):
    kind: GenKind
    row: int
    col: int

    @property
    def code(self) -> int:
        return int(self.kind) * 100 + (self.row - 1) * 10 + (self.col - 1)

    @classmethod
    def from_code(cls, code: int) -> "GenId":
        kind, rest = divmod(code, 100)
        row, col = divmod(rest, 10)
        return cls(GenKind(kind), row + 1, col + 1)

    def __str__(self) -> str:
        return f"{_PREFIX[self.kind]}{self.row}{self.col}"


def format_word(word: Word) -> str:
    if not word:
        return "1"
    return "*".join(str(GenId.from_code(c)) for c in word)


@dataclass(frozen=True)
class MonomialOrder:
    """Degree-lexicographic order: total degree first, then letter precedence.

    ``precedence`` lists letter codes from smallest to largest; when omitted
    the natural order of the codes is used (d > m, x > lhat; row-major).
    """

    precedence: Optional[Tuple[int, ...]] = None
    _rank: Dict[int, int] = field(
        default_factory=dict, init=False, compare=False, repr=False
    )

    def __post_init__(self):
        if self.precedence is not None:
            self._rank.update({code: i for i, code in enumerate(self.precedence)})

    def key(self, word: Word):
        if self.precedence is None:
            return (len(word), word)
        return (len(word), tuple(self._rank[c] for c in word))

    def describe(self) -> str:
        if self.precedence is None:
            return "deglex:natural"
        return "deglex:" + ",".join(str(c) for c in self.precedence)


DEGLEX = MonomialOrder()


def add_into(target: Terms, source: Terms, scale: Optional[Scalar] = None) -> None:
    """target += scale * source, dropping cancelled terms"""
    for word, c in source.items():
        if scale is not None:
            c = c * scale
        if word in target:
            value = target[word] + c
            if value:
                target[word] = value
            else:
                del target[word]
        elif c:
            target[word] = c


class NCPoly:
    """Finite linear combination of words with coefficients in a ScalarField"""

    __slots__ = ("field", "terms")

    def __init__(self, field: ScalarField, terms: Optional[Terms] = None):
        self.field = field
        self.terms: Terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls, field: ScalarField) -> "NCPoly":
        return cls(field)

    @classmethod
    def constant(cls, field: ScalarField, value) -> "NCPoly":
        return cls(field, {EMPTY_WORD: field.convert(value)})

    @classmethod
    def letter(cls, field: ScalarField, gen: GenId) -> "NCPoly":
        return cls(field, {(gen.code,): field.one})

    @classmethod
    def word(cls, field: ScalarField, word: Word, coeff=None) -> "NCPoly":
        return cls(field, {tuple(word): field.one if coeff is None else coeff})

    @classmethod
    def _raw(cls, field: ScalarField, terms: Terms) -> "NCPoly":
        poly = cls.__new__(cls)
        poly.field = field
        poly.terms = terms
        return poly

    def _check(self, other: "NCPoly") -> None:
        if other.field != self.field:
            raise FieldMismatchError(
                f"cannot combine {self.field.describe()} with {other.field.describe()}"
            )

    def _coerce(self, other) -> "NCPoly":
        if isinstance(other, NCPoly):
            self._check(other)
            return other
        return NCPoly.constant(self.field, other)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Word, Scalar]]:
        return iter(self.terms.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            if other == 0:
                return not self.terms
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "NCPoly":
        other = self._coerce(other)
        terms = dict(self.terms)
        add_into(terms, other.terms)
        return NCPoly._raw(self.field, terms)

    __radd__ = __add__

    def __neg__(self) -> "NCPoly":
        return NCPoly._raw(self.field, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> "NCPoly":
        other = self._coerce(other)
        terms = dict(self.terms)
        add_into(terms, other.terms, -self.field.one)
        return NCPoly._raw(self.field, terms)

    def __rsub__(self, other) -> "NCPoly":
        return (-self) + other

    def scale(self, c: Scalar) -> "NCPoly":
        if not c:
            return NCPoly(self.field)
        return NCPoly._raw(self.field, {w: v * c for w, v in self.terms.items()})

    def __mul__(self, other) -> "NCPoly":
        if not isinstance(other, NCPoly):
            return self.scale(self.field.convert(other))
        return nc_mul(self, other)

    def __rmul__(self, other) -> "NCPoly":
        return self.scale(self.field.convert(other))

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1"""
        return max((len(w) for w in self.terms), default=-1)

    def leading(self, order: MonomialOrder = DEGLEX) -> Tuple[Word, Scalar]:
        word = max(self.terms, key=order.key)
        return word, self.terms[word]

    def constant_term(self) -> Scalar:
        return self.terms.get(EMPTY_WORD, self.field.zero)

    def is_scalar(self) -> bool:
        return all(not w for w in self.terms)

    def letters(self) -> set:
        return {c for w in self.terms for c in w}

    def map_coefficients(self, target: ScalarField) -> "NCPoly":
        """Specialize every coefficient into ``target`` (see ScalarField.specialize)"""
        terms = {w: self.field.specialize(c, target) for w, c in self.terms.items()}
        return NCPoly(target, terms)

    def sorted_terms(self, order: MonomialOrder = DEGLEX) -> List[Tuple[Word, Scalar]]:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def format(self, order: MonomialOrder = DEGLEX) -> str:
        if not self.terms:
            return "0"
        parts = []
        for word, c in self.sorted_terms(order):
            coeff = self.field.format(c)
            if not word:
                parts.append(coeff)
            elif coeff == "1":
                parts.append(format_word(word))
            elif coeff == "-1":
                parts.append("-" + format_word(word))
            else:
                parts.append(f"({coeff})*{format_word(word)}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"NCPoly({self.format()})"


def nc_mul(a: NCPoly, b: NCPoly) -> NCPoly:
    """Concatenation product extended bilinearly"""
    a._check(b)
    terms: Terms = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            word = wa + wb
            value = ca * cb
            if word in terms:
                value = terms[word] + value
                if value:
                    terms[word] = value
                else:
                    del terms[word]
            elif value:
                terms[word] = value
    return NCPoly._raw(a.field, terms)


def nc_sum(field: ScalarField, polys: Iterable[NCPoly]) -> NCPoly:
    terms: Terms = {}
    for p in polys:
        add_into(terms, p.terms)
    return NCPoly._raw(field, terms)


def commutator(a: NCPoly, b: NCPoly) -> NCPoly:
    return nc_mul(a, b) - nc_mul(b, a)


def specialize(p: NCPoly, target: ScalarField) -> NCPoly:
    """Evaluate every coefficient of a symbolic polynomial in ``target``"""
    return p.map_coefficients(target)
