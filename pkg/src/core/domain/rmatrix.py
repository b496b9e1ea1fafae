"""Hecke R-matrices: construction, validation, skew inverse and R-trace weights."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional, Union

from src.core.domain.errors import (
    RMatrixParseError,
    RMatrixValidationError,
    SingularOperatorError,
    SkewInvertibilityError,
    TensorShapeError,
)
from src.core.domain.scalars import Scalar, ScalarField
from src.core.domain.tensorspace import (
    Key,
    TensorMat,
    embed_block,
    format_index,
    inverse,
    perm_matrix,
    scalar_value,
    trace_slots,
)

BRAID = "braid"
HECKE = "hecke"
SKEW = "skew"

UPPER = "upper"
LOWER = "lower"


@dataclass(frozen=True)
class SkewInverse:
    psi: TensorMat
    weights: TensorMat
    left_weights: TensorMat

    def quantum_dimension(self) -> Scalar:
        """Tr(C)"""
        return scalar_value(trace_slots(self.weights, [1]).as_element())


@dataclass
class RMatrix:
    """A width-2 scalar operator with its validation flags"""

    field: ScalarField
    N: int
    op: TensorMat
    inverse_op: Optional[TensorMat] = None
    braid_ok: bool = False
    hecke_ok: bool = False
    skew_ok: bool = False
    skew: Optional[SkewInverse] = None
    witnesses: Dict[str, str] = field(default_factory=dict)
    source: str = "custom"

    @property
    def flags(self) -> Dict[str, bool]:
        return {BRAID: self.braid_ok, HECKE: self.hecke_ok, SKEW: self.skew_ok}

    @property
    def is_valid(self) -> bool:
        return self.braid_ok and self.hecke_ok and self.skew_ok

    @property
    def weights(self) -> TensorMat:
        if self.skew is None:
            raise RMatrixValidationError(SKEW, self.witnesses.get(SKEW))
        return self.skew.weights

    def require_valid(self) -> "RMatrix":
        for flag, ok in self.flags.items():
            if not ok:
                raise RMatrixValidationError(flag, self.witnesses.get(flag))
        return self

    def describe(self) -> str:
        state = ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in self.flags.items())
        return f"R[{self.source}, N={self.N}, {self.field.describe()}]: {state}"


def _first_residual(residual: TensorMat) -> Optional[str]:
    if residual.is_zero():
        return None
    (r, c), value = residual.sorted_items()[0]
    return f"entry ({format_index(r)},{format_index(c)}) residual {value.format()}"


def check_braid(op: TensorMat) -> Optional[str]:
    """None when R1 R2 R1 = R2 R1 R2 at width 3, else a witness entry"""
    r1 = embed_block(op, 1, 3)
    r2 = embed_block(op, 2, 3)
    return _first_residual(r1 @ r2 @ r1 - r2 @ r1 @ r2)


def check_hecke(op: TensorMat) -> Optional[str]:
    """None when R^2 = 1 + (q - q^{-1}) R, else a witness entry"""
    f = op.field
    residual = op @ op - op.scale(f.omega) - TensorMat.identity(f, op.N, 2)
    return _first_residual(residual)


def skew_inverse(op: TensorMat) -> SkewInverse:
    """Solve Tr_(2)(R_12 Psi_23) = P_13 and check Tr_(2)(Psi_12 R_23) = P_13.

    The system splits into N^2 copies of one N^2 x N^2 system with matrix
    Rt[(i,j),(s,a)] = R[(i,a),(j,s)]; then Psi[(s,t),(a,u)] = Rt^{-1}[(s,a),(u,t)].
    """
    f, N = op.field, op.N
    if op.k != 2:
        raise TensorShapeError(f"R must have width 2, got {op.k}")
    rt = TensorMat(
        f, N, 2, {((i, j), (s, a)): v for ((i, a), (j, s)), v in op.entries.items()}
    )
    try:
        rt_inv = inverse(rt)
    except SingularOperatorError as e:
        raise SkewInvertibilityError("the skew-invertibility system is singular") from e
    psi = TensorMat(
        f, N, 2, {((s, t), (a, u)): v for ((s, a), (u, t)), v in rt_inv.entries.items()}
    )

    p13 = perm_matrix(1, 2, 2, N, f)
    right = trace_slots(embed_block(op, 1, 3) @ embed_block(psi, 2, 3), [2])
    if right != p13:
        raise SkewInvertibilityError(
            f"Tr_(2)(R_12 Psi_23) != P_13: {_first_residual(right - p13)}"
        )
    left = trace_slots(embed_block(psi, 1, 3) @ embed_block(op, 2, 3), [2])
    if left != p13:
        raise SkewInvertibilityError(
            f"Tr_(2)(Psi_12 R_23) != P_13: {_first_residual(left - p13)}"
        )
    return SkewInverse(
        psi=psi, weights=trace_slots(psi, [2]), left_weights=trace_slots(psi, [1])
    )


def validate(op: TensorMat, source: str = "custom") -> RMatrix:
    """Run every validator; never raises for a failing flag"""
    f = op.field
    r = RMatrix(field=f, N=op.N, op=op, source=source)
    witness = check_braid(op)
    r.braid_ok = witness is None
    if witness:
        r.witnesses[BRAID] = witness
    witness = check_hecke(op)
    r.hecke_ok = witness is None
    if witness:
        r.witnesses[HECKE] = witness

    if r.hecke_ok:
        r.inverse_op = op.shift(-f.omega)
        if op @ r.inverse_op != TensorMat.identity(f, op.N, 2):
            raise RMatrixValidationError(HECKE, "R (R - (q - q^{-1})) != 1")
    else:
        try:
            r.inverse_op = inverse(op)
        except SingularOperatorError:
            r.inverse_op = None

    try:
        r.skew = skew_inverse(op)
        r.skew_ok = True
    except SkewInvertibilityError as e:
        r.witnesses[SKEW] = str(e)
    return r


def dj_candidate(f: ScalarField, N: int, orientation: str = UPPER) -> TensorMat:
    """q sum e_ii⊗e_ii + sum_{i!=j} e_ij⊗e_ji + (q - q^{-1}) sum e_ii⊗e_jj.

    The last sum runs over one triangle, i < j for UPPER and i > j for LOWER.
    """
    values: Dict[Key, Scalar] = {}
    for i in range(1, N + 1):
        values[((i, i), (i, i))] = f.q
        for j in range(1, N + 1):
            if i == j:
                continue
            values[((i, j), (j, i))] = f.one
            if (i < j) == (orientation == UPPER):
                values[((i, j), (i, j))] = f.omega
    return TensorMat.from_scalars(f, N, 2, values)


def dj_rmatrix(f: ScalarField, N: int) -> RMatrix:
    """Drinfeld-Jimbo R-matrix; the omega-block orientation is fixed by validation"""
    failures = []
    for orientation in (UPPER, LOWER):
        r = validate(dj_candidate(f, N, orientation), source=f"dj-{orientation}")
        if r.braid_ok and r.hecke_ok:
            return r
        failures.append(r.describe())
    raise RMatrixValidationError(BRAID, "; ".join(failures))


def permutation_rmatrix(f: ScalarField, N: int) -> RMatrix:
    """The flip P; fails the Hecke condition at generic q"""
    return validate(perm_matrix(1, 2, 2, N, f), source="permutation")


def evaluate_entries(op: TensorMat, q0: Union[int, str]) -> Dict[Key, Scalar]:
    """Entrywise evaluation of a symbolic scalar operator at q = q0 (q0 = 1 allowed)"""
    f = op.field
    result = {}
    for key, value in op.entries.items():
        s = f.eval_at(scalar_value(value), q0)
        if s:
            result[key] = s
    return result


def dump_rmatrix(r: Union[RMatrix, TensorMat]) -> str:
    op = r.op if isinstance(r, RMatrix) else r
    f = op.field
    lines = [f"N {op.N} q {f.format(f.q)}"]
    for ((i, j), (k, l)), value in op.sorted_items():
        lines.append(f"{i} {j} {k} {l} {f.format(scalar_value(value))}")
    return "\n".join(lines) + "\n"


def parse_rmatrix(text: str, f: ScalarField) -> TensorMat:
    """Read the 'N <N> q <q>' header and 'i j k l <scalar>' lines"""
    N: Optional[int] = None
    values: Dict[Key, Scalar] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if N is None:
            if len(parts) != 4 or parts[0] != "N" or parts[2] != "q":
                raise RMatrixParseError("expected header 'N <N> q <scalar>'", lineno)
            try:
                N = int(parts[1])
            except ValueError as e:
                raise RMatrixParseError(f"bad dimension {parts[1]!r}", lineno) from e
            if N < 1:
                raise RMatrixParseError(f"dimension must be positive, got {N}", lineno)
            if f.parse(parts[3]) != f.q:
                raise RMatrixParseError(
                    f"file is written for q = {parts[3]}, session is {f.describe()}",
                    lineno,
                )
            continue
        if len(parts) < 5:
            raise RMatrixParseError("expected 'i j k l <scalar>'", lineno)
        try:
            i, j, k, l = (int(p) for p in parts[:4])
        except ValueError as e:
            raise RMatrixParseError("indices must be integers", lineno) from e
        if not all(1 <= x <= N for x in (i, j, k, l)):
            raise RMatrixParseError(f"index out of range 1..{N}", lineno)
        key = ((i, j), (k, l))
        if key in values:
            raise RMatrixParseError(f"duplicate entry {i} {j} {k} {l}", lineno)
        values[key] = f.parse("".join(parts[4:]))
    if N is None:
        raise RMatrixParseError("empty R-matrix file")
    return TensorMat.from_scalars(f, N, 2, values)


def load_rmatrix(path: Union[str, Path], f: ScalarField) -> RMatrix:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise RMatrixParseError(f"cannot read {path}: {e}") from e
    return validate(parse_rmatrix(text, f), source=str(path))
