"""Partitions, standard tableaux, Jucys-Murphy operators and primitive idempotents."""

from abc import ABC, abstractmethod
from copy import deepcopy
from dataclasses import dataclass
from typing import Dict, List, Tuple

from sympy.utilities.iterables import partitions as _sympy_partitions

from src.core.domain.errors import CombinatoricsError, IdempotentError
from src.core.domain.rmatrix import RMatrix
from src.core.domain.scalars import Scalar, ScalarField
from src.core.domain.tensorspace import TensorMat, embed_block, perm_matrix

Partition = Tuple[int, ...]


def check_partition(shape: Partition) -> Partition:
    shape = tuple(shape)
    if not shape or any(p <= 0 for p in shape):
        raise CombinatoricsError(f"{shape} is not a partition")
    if any(a < b for a, b in zip(shape, shape[1:])):
        raise CombinatoricsError(f"{shape} is not weakly decreasing")
    return shape


def partitions(n: int) -> List[Partition]:
    """All partitions of n, largest first part first"""
    if n < 1:
        raise CombinatoricsError(f"cannot partition {n}")
    result = []
    for parts in _sympy_partitions(n):
        shape = []
        for part, mult in sorted(parts.items(), reverse=True):
            shape.extend([part] * mult)
        result.append(tuple(shape))
    return sorted(result, reverse=True)


def format_shape(shape: Partition) -> str:
    return "(" + ",".join(str(p) for p in shape) + ")"


def addable_contents(shape: Tuple[int, ...]) -> List[int]:
    """Contents (col - row) of the cells that can be added to ``shape``"""
    rows = list(shape)
    result = []
    for r, length in enumerate(rows + [0]):
        if r == 0 or rows[r - 1] > length:
            result.append(length - r)
    return result


@dataclass(frozen=True)
class StdTableau:
    """Standard Young tableau; ``rows[r][c]`` is the entry in cell (r+1, c+1)"""

    shape: Partition
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        check_partition(self.shape)
        if tuple(len(r) for r in self.rows) != self.shape:
            raise CombinatoricsError(f"rows {self.rows} do not fill {self.shape}")
        entries = sorted(x for row in self.rows for x in row)
        if entries != list(range(1, self.n + 1)):
            raise CombinatoricsError(f"{self.rows} is not numbered 1..{self.n}")
        for r, row in enumerate(self.rows):
            for c, x in enumerate(row):
                if c > 0 and row[c - 1] >= x:
                    raise CombinatoricsError(
                        f"row {r + 1} of {self.rows} is not increasing"
                    )
                if r > 0 and self.rows[r - 1][c] >= x:
                    raise CombinatoricsError(
                        f"column {c + 1} of {self.rows} is not increasing"
                    )

    @property
    def n(self) -> int:
        return sum(self.shape)

    def cell(self, k: int) -> Tuple[int, int]:
        for r, row in enumerate(self.rows):
            if k in row:
                return r + 1, row.index(k) + 1
        raise CombinatoricsError(f"{k} is not in the tableau")

    def content(self, k: int) -> int:
        r, c = self.cell(k)
        return c - r

    @property
    def contents(self) -> Tuple[int, ...]:
        return tuple(self.content(k) for k in range(1, self.n + 1))

    def subshape(self, k: int) -> Tuple[int, ...]:
        """Shape occupied by the entries 1..k"""
        lengths = [sum(1 for x in row if x <= k) for row in self.rows]
        return tuple(length for length in lengths if length)

    def format(self) -> str:
        body = "/".join(",".join(str(x) for x in row) for row in self.rows)
        return f"{format_shape(self.shape)}|{body}"

    def __str__(self) -> str:
        return self.format()


def _next_placements(filling: List[List[int]]) -> List[Tuple[int, int]]:
    cells = []
    for r, row in enumerate(filling):
        for c, value in enumerate(row):
            if value > 0:
                continue
            if r == 0 or filling[r - 1][c] > 0:
                cells.append((r, c))
            break
    return cells


def _fill(filling: List[List[int]], value: int, n: int) -> List[List[List[int]]]:
    if value > n:
        return [filling]
    result = []
    for r, c in _next_placements(filling):
        extended = deepcopy(filling)
        extended[r][c] = value
        result.extend(_fill(extended, value + 1, n))
    return result


def standard_tableaux(shape: Partition) -> List[StdTableau]:
    """All standard tableaux of ``shape``, lexicographic in the content sequence"""
    shape = check_partition(shape)
    empty = [[0] * length for length in shape]
    tableaux = [
        StdTableau(shape, tuple(tuple(row) for row in filling))
        for filling in _fill(empty, 1, sum(shape))
    ]
    return sorted(tableaux, key=lambda t: t.contents)


def jm_classical(k: int, n: int, N: int, f: ScalarField) -> TensorMat:
    """j_k = sum_{i<k} P_ik at width n"""
    if not 1 <= k <= n:
        raise CombinatoricsError(f"Jucys-Murphy index {k} out of range 1..{n}")
    result = TensorMat.zero(f, N, n)
    for i in range(1, k):
        result = result + perm_matrix(i, k, n, N, f)
    return result


def jm_hecke(k: int, n: int, r: RMatrix) -> TensorMat:
    """J_1 = 1, J_k = R_{k-1} J_{k-1} R_{k-1}"""
    if not 1 <= k <= n:
        raise CombinatoricsError(f"Jucys-Murphy index {k} out of range 1..{n}")
    result = TensorMat.identity(r.field, r.N, n)
    for i in range(1, k):
        r_i = embed_block(r.op, i, n)
        result = r_i @ result @ r_i
    return result


class Carrier(ABC):
    """Representation of S_n or H_n(q) on (C^N)^{⊗n} through its Jucys-Murphy family"""

    kind: str = ""

    def __init__(self, field: ScalarField, N: int, n: int):
        if n < 1:
            raise CombinatoricsError(f"carrier width must be positive, got {n}")
        self.field = field
        self.N = N
        self.n = n
        self._jm: Dict[int, TensorMat] = {}

    def jm(self, k: int) -> TensorMat:
        if k not in self._jm:
            self._jm[k] = self._build_jm(k)
        return self._jm[k]

    def identity(self) -> TensorMat:
        return TensorMat.identity(self.field, self.N, self.n)

    @abstractmethod
    def _build_jm(self, k: int) -> TensorMat:
        ...

    @abstractmethod
    def eigenvalue(self, content: int) -> Scalar:
        ...

    def describe(self) -> str:
        return f"{self.kind}(N={self.N}, n={self.n})"


class ClassicalCarrier(Carrier):
    kind = "classical"

    def _build_jm(self, k: int) -> TensorMat:
        return jm_classical(k, self.n, self.N, self.field)

    def eigenvalue(self, content: int) -> Scalar:
        return self.field.convert(content)


class HeckeCarrier(Carrier):
    kind = "hecke"

    def __init__(self, r: RMatrix, n: int):
        super().__init__(r.field, r.N, n)
        self.rmatrix = r

    def _build_jm(self, k: int) -> TensorMat:
        return jm_hecke(k, self.n, self.rmatrix)

    def eigenvalue(self, content: int) -> Scalar:
        return self.field.jm_eigenvalue(content)


def idempotent(tableau: StdTableau, carrier: Carrier) -> TensorMat:
    """Primitive idempotent E_T by the fusion recursion.

    E^(k) = E^(k-1) prod_{b in A_k, b != c(k)} (J_k - eps(b)) / (eps(c(k)) - eps(b)),
    A_k the addable contents of the shape holding 1..k-1. The result is
    checked for E^2 = E and J_k E = eps(c(k)) E.
    """
    if tableau.n != carrier.n:
        raise CombinatoricsError(
            f"tableau of size {tableau.n} on a carrier of width {carrier.n}"
        )
    f = carrier.field
    result = carrier.identity()
    for k in range(2, tableau.n + 1):
        c = tableau.content(k)
        target = carrier.eigenvalue(c)
        jm = carrier.jm(k)
        for b in addable_contents(tableau.subshape(k - 1)):
            if b == c:
                continue
            gap = target - carrier.eigenvalue(b)
            if not gap:
                raise IdempotentError(
                    f"vanishing denominator for contents {c} and {b} in {tableau}"
                )
            result = result @ jm.shift(-carrier.eigenvalue(b)).scale(f.one / gap)

    if result @ result != result:
        raise IdempotentError(f"E{tableau} is not idempotent on {carrier.describe()}")
    for k in range(1, tableau.n + 1):
        value = carrier.eigenvalue(tableau.content(k))
        if carrier.jm(k) @ result != result.scale(value):
            raise IdempotentError(f"J_{k} does not act by its content on E{tableau}")
    return result


def all_idempotents(carrier: Carrier) -> List[Tuple[StdTableau, TensorMat]]:
    return [
        (tableau, idempotent(tableau, carrier))
        for shape in partitions(carrier.n)
        for tableau in standard_tableaux(shape)
    ]
