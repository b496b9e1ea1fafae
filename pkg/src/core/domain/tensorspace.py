"""Sparse operators on (C^N)^{⊗k} with free-algebra entries.

Basis convention: multi-indices are enumerated row-major with slot 1
outermost, so e_ab ⊗ e_cd sits at row (a, c), column (b, d). Scalar operators
are the special case where every entry is a degree-0 NCPoly.
"""

from itertools import product
from typing import (
    Callable,
    Dict,
    Iterable,
    Iterator,
    List,
    Optional,
    Protocol,
    Sequence,
    Tuple,
)

from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from src.core.domain.errors import (
    FieldMismatchError,
    SingularOperatorError,
    TensorShapeError,
)
from src.core.domain.ncpoly import NCPoly, Terms, add_into
from src.core.domain.scalars import Scalar, ScalarField

MultiIndex = Tuple[int, ...]
Key = Tuple[MultiIndex, MultiIndex]


def basis(N: int, k: int) -> List[MultiIndex]:
    return list(product(range(1, N + 1), repeat=k))


def format_index(index: MultiIndex) -> str:
    return "".join(str(i) for i in index) or "-"


class TensorMat:
    """Sparse N^k x N^k operator; absent entries are zero"""

    __slots__ = ("field", "N", "k", "entries")

    def __init__(
        self,
        field: ScalarField,
        N: int,
        k: int,
        entries: Optional[Dict[Key, NCPoly]] = None,
    ):
        if N < 1 or k < 0:
            raise TensorShapeError(f"invalid operator shape N={N}, k={k}")
        self.field = field
        self.N = N
        self.k = k
        self.entries: Dict[Key, NCPoly] = {
            key: v for key, v in (entries or {}).items() if v
        }

    @classmethod
    def zero(cls, field: ScalarField, N: int, k: int) -> "TensorMat":
        return cls(field, N, k)

    @classmethod
    def identity(cls, field: ScalarField, N: int, k: int) -> "TensorMat":
        one = NCPoly.constant(field, 1)
        return cls(field, N, k, {(i, i): one for i in basis(N, k)})

    @classmethod
    def from_scalars(
        cls, field: ScalarField, N: int, k: int, values: Dict[Key, object]
    ) -> "TensorMat":
        entries = {key: NCPoly.constant(field, v) for key, v in values.items()}
        return cls(field, N, k, entries)

    @classmethod
    def from_rows(
        cls, field: ScalarField, N: int, k: int, rows: Sequence[Sequence[object]]
    ) -> "TensorMat":
        """Dense scalar rows listed in basis order"""
        index = basis(N, k)
        if len(rows) != len(index) or any(len(row) != len(index) for row in rows):
            raise TensorShapeError(f"expected a {len(index)}x{len(index)} array")
        values = {
            (r, c): rows[a][b]
            for a, r in enumerate(index)
            for b, c in enumerate(index)
        }
        return cls.from_scalars(field, N, k, values)

    @classmethod
    def element(cls, p: NCPoly, N: int) -> "TensorMat":
        """Width-0 operator holding a single algebra element"""
        return cls(p.field, N, 0, {((), ()): p})

    def entry(self, row: MultiIndex, col: MultiIndex) -> NCPoly:
        value = self.entries.get((tuple(row), tuple(col)))
        return value if value is not None else NCPoly.zero(self.field)

    def as_element(self) -> NCPoly:
        if self.k != 0:
            raise TensorShapeError(
                f"operator of width {self.k} is not an algebra element"
            )
        return self.entry((), ())

    def items(self) -> Iterator[Tuple[Key, NCPoly]]:
        return iter(self.entries.items())

    def sorted_items(self) -> List[Tuple[Key, NCPoly]]:
        return sorted(self.entries.items())

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def is_scalar(self) -> bool:
        return all(v.is_scalar() for v in self.entries.values())

    def degree(self) -> int:
        return max((v.degree() for v in self.entries.values()), default=-1)

    def _check(self, other: "TensorMat") -> None:
        if (self.N, self.k) != (other.N, other.k):
            raise TensorShapeError(
                f"shape mismatch: (N={self.N}, k={self.k}) "
                f"vs (N={other.N}, k={other.k})"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorMat):
            return NotImplemented
        return (self.N, self.k) == (other.N, other.k) and self.entries == other.entries

    __hash__ = None

    def _combine(self, other: "TensorMat", sign: int) -> "TensorMat":
        self._check(other)
        result = dict(self.entries)
        for key, value in other.entries.items():
            current = result.get(key)
            if current is None:
                result[key] = value if sign > 0 else -value
            else:
                result[key] = current + value if sign > 0 else current - value
        return TensorMat(self.field, self.N, self.k, result)

    def __add__(self, other: "TensorMat") -> "TensorMat":
        return self._combine(other, 1)

    def __sub__(self, other: "TensorMat") -> "TensorMat":
        return self._combine(other, -1)

    def __neg__(self) -> "TensorMat":
        return self.map_entries(lambda v: -v)

    def scale(self, c: Scalar) -> "TensorMat":
        return self.map_entries(lambda v: v.scale(c))

    def shift(self, c: Scalar) -> "TensorMat":
        """self + c * Id"""
        ident = TensorMat.identity(self.field, self.N, self.k)
        return self + ident.scale(self.field.convert(c))

    def __matmul__(self, other: "TensorMat") -> "TensorMat":
        return tmul(self, other)

    def __mul__(self, other) -> "TensorMat":
        if isinstance(other, TensorMat):
            return tmul(self, other)
        return self.scale(self.field.convert(other))

    def __rmul__(self, other) -> "TensorMat":
        return self.scale(self.field.convert(other))

    def map_entries(
        self, fn: Callable[[NCPoly], NCPoly], field: Optional[ScalarField] = None
    ) -> "TensorMat":
        entries = {key: fn(v) for key, v in self.entries.items()}
        return TensorMat(field or self.field, self.N, self.k, entries)

    def specialize(self, target: ScalarField) -> "TensorMat":
        return self.map_entries(lambda p: p.map_coefficients(target), target)

    def scalar_rows(self) -> List[List[Scalar]]:
        index = basis(self.N, self.k)
        return [[scalar_value(self.entry(r, c)) for c in index] for r in index]

    def dump(self) -> str:
        """One line per nonzero entry: 'row col poly', indices as digit strings"""
        return "\n".join(
            f"{format_index(r)} {format_index(c)} {v.format()}"
            for (r, c), v in self.sorted_items()
        )

    def __repr__(self) -> str:
        return f"TensorMat(N={self.N}, k={self.k}, nnz={self.nnz})"


def scalar_value(p: NCPoly) -> Scalar:
    if not p.is_scalar():
        raise TensorShapeError(f"entry {p.format()} is not a scalar")
    return p.constant_term()


def _accumulate(terms: Terms, word, value) -> None:
    current = terms.get(word)
    if current is None:
        if value:
            terms[word] = value
        return
    current = current + value
    if current:
        terms[word] = current
    else:
        del terms[word]


def _from_terms(a: TensorMat, k: int, acc: Dict[Key, Terms]) -> TensorMat:
    entries = {key: NCPoly._raw(a.field, t) for key, t in acc.items() if t}
    return TensorMat(a.field, a.N, k, entries)


def tmul(a: TensorMat, b: TensorMat) -> TensorMat:
    """Operator product; entries of ``a`` multiply from the left"""
    a._check(b)
    if a.field != b.field:
        raise FieldMismatchError(
            f"cannot multiply {a.field.describe()} by {b.field.describe()}"
        )
    by_row: Dict[MultiIndex, List[Tuple[MultiIndex, NCPoly]]] = {}
    for (s, c), value in b.entries.items():
        by_row.setdefault(s, []).append((c, value))
    acc: Dict[Key, Terms] = {}
    for (r, s), left in a.entries.items():
        for c, right in by_row.get(s, ()):
            terms = acc.setdefault((r, c), {})
            for wl, cl in left.terms.items():
                for wr, cr in right.terms.items():
                    _accumulate(terms, wl + wr, cl * cr)
    return _from_terms(a, a.k, acc)


def embed_block(a: TensorMat, start: int, width: int) -> TensorMat:
    """Place a width-m operator on slots start..start+m-1 of a width-``width`` space"""
    m = a.k
    if start < 1 or start + m - 1 > width:
        raise TensorShapeError(
            f"cannot place a width-{m} block at slot {start} of width {width}"
        )
    left = basis(a.N, start - 1)
    right = basis(a.N, width - start - m + 1)
    entries = {}
    for (r, c), value in a.entries.items():
        for lo in left:
            for hi in right:
                entries[(lo + r + hi, lo + c + hi)] = value
    return TensorMat(a.field, a.N, width, entries)


def embed_at(a: TensorMat, pos: int, width: int) -> TensorMat:
    """A_pos: identity in every slot except ``pos``"""
    if a.k != 1:
        raise TensorShapeError(f"embed_at expects a width-1 operator, got width {a.k}")
    return embed_block(a, pos, width)


def perm_matrix(i: int, j: int, width: int, N: int, field: ScalarField) -> TensorMat:
    """P_ij swapping tensor slots i and j"""
    if i == j or not (1 <= i <= width and 1 <= j <= width):
        raise TensorShapeError(f"invalid transposition ({i},{j}) at width {width}")
    one = NCPoly.constant(field, 1)
    entries = {}
    for row in basis(N, width):
        col = list(row)
        col[i - 1], col[j - 1] = col[j - 1], col[i - 1]
        entries[(row, tuple(col))] = one
    return TensorMat(field, N, width, entries)


def trace_slots(a: TensorMat, slots: Iterable[int]) -> TensorMat:
    """Partial trace over the listed 1-based slots"""
    slots = sorted(set(slots))
    if any(s < 1 or s > a.k for s in slots):
        raise TensorShapeError(f"trace slots {slots} out of range for width {a.k}")
    traced = {s - 1 for s in slots}
    keep = [p for p in range(a.k) if p not in traced]
    acc: Dict[Key, Terms] = {}
    for (r, c), value in a.entries.items():
        if all(r[p] == c[p] for p in traced):
            key = (tuple(r[p] for p in keep), tuple(c[p] for p in keep))
            add_into(acc.setdefault(key, {}), value.terms)
    return _from_terms(a, len(keep), acc)


def r_trace(a: TensorMat, slots: Iterable[int], weights: TensorMat) -> TensorMat:
    """Tr_R over ``slots``: trace_slots(a · Π_s C_s)"""
    slots = sorted(set(slots))
    weighted = a
    for s in slots:
        weighted = weighted @ embed_at(weights, s, a.k)
    return trace_slots(weighted, slots)


class Braiding(Protocol):
    """Anything carrying a width-2 invertible operator and its inverse"""

    @property
    def op(self) -> TensorMat: ...

    @property
    def inverse_op(self) -> TensorMat: ...


def braid_factors(braiding: Braiding, width: int) -> List[Tuple[TensorMat, TensorMat]]:
    """[(R_i, R_i^{-1}) for i = 1..width-1] at the given width"""
    return [
        (embed_block(braiding.op, i, width), embed_block(braiding.inverse_op, i, width))
        for i in range(1, width)
    ]


def bar_conjugate(
    a: TensorMat,
    kslot: int,
    width: int,
    braiding: Braiding,
    factors: Optional[List[Tuple[TensorMat, TensorMat]]] = None,
) -> TensorMat:
    """A_{bar k} = R_{k-1}...R_1 A_1 R_1^{-1}...R_{k-1}^{-1}"""
    if not 1 <= kslot <= width:
        raise TensorShapeError(f"bar slot {kslot} out of range for width {width}")
    if factors is None:
        factors = braid_factors(braiding, width)
    result = embed_at(a, 1, width)
    for r_i, r_i_inv in factors[: kslot - 1]:
        result = r_i @ result @ r_i_inv
    return result


def inverse(a: TensorMat) -> TensorMat:
    """Exact inverse of a scalar operator by Gauss-Jordan over the session field"""
    index = basis(a.N, a.k)
    size = len(index)
    matrix = DomainMatrix(a.scalar_rows(), (size, size), a.field.domain)
    try:
        inv = matrix.inv()
    except DMNonInvertibleMatrixError as e:
        raise SingularOperatorError(f"operator of width {a.k} is singular") from e
    values = {}
    for x, r in enumerate(index):
        for y, c in enumerate(index):
            value = inv[x, y].element
            if value:
                values[(r, c)] = value
    return TensorMat.from_scalars(a.field, a.N, a.k, values)
