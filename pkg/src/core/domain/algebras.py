"""Defining relations of the algebras the identities live in.

Every preset is a finite list of NCPoly relations in one generator alphabet
(or two, for the Weyl algebras) together with the generator matrices used to
write the identities.
"""

import hashlib
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from src.core.domain.errors import RewriteError
from src.core.domain.ncpoly import (
    DEGLEX,
    GenId,
    GenKind,
    MonomialOrder,
    NCPoly,
    commutator,
)
from src.core.domain.rewriting import DEFAULT_MAX_RULES, RewriteSystem, complete
from src.core.domain.rmatrix import RMatrix
from src.core.domain.scalars import ScalarField
from src.core.domain.tensorspace import TensorMat, bar_conjugate, embed_at

WEYL_CLASSICAL = "weyl_classical"
REA = "rea"
REA_INV = "rea_inv"
QUANTUM_WEYL = "quantum_weyl"
MREA = "mrea"

PRESET_NAMES = (WEYL_CLASSICAL, REA, REA_INV, QUANTUM_WEYL, MREA)


@dataclass(frozen=True)
class AlgebraPreset:
    name: str
    field: ScalarField
    N: int
    relations: Tuple[NCPoly, ...]
    alphabet: Tuple[GenKind, ...]
    source: str = ""

    @property
    def label(self) -> str:
        suffix = f", R={self.source}" if self.source else ""
        return f"{self.name}(N={self.N}{suffix}, {self.field.describe()})"

    def generators(self) -> List[GenId]:
        return [
            GenId(kind, i, j)
            for kind in self.alphabet
            for i in range(1, self.N + 1)
            for j in range(1, self.N + 1)
        ]


def gen_matrix(kind: GenKind, N: int, f: ScalarField) -> TensorMat:
    """N x N matrix whose (i, j) entry is the generator (kind, i, j)"""
    entries = {
        ((i,), (j,)): NCPoly.letter(f, GenId(kind, i, j))
        for i in range(1, N + 1)
        for j in range(1, N + 1)
    }
    return TensorMat(f, N, 1, entries)


def dedupe(polys: Sequence[NCPoly], order: MonomialOrder = DEGLEX) -> List[NCPoly]:
    """Drop zero and proportional relations; survivors are made monic"""
    seen = set()
    result = []
    for p in polys:
        if not p:
            continue
        _, lead = p.leading(order)
        monic = p.scale(p.field.one / lead)
        key = frozenset(monic.terms.items())
        if key not in seen:
            seen.add(key)
            result.append(monic)
    return result


def componentwise(residual: TensorMat) -> List[NCPoly]:
    return dedupe([value for _, value in residual.sorted_items()])


def weyl_relations(N: int, f: ScalarField) -> List[NCPoly]:
    """x-x and d-d commutators, and d_i^j x_k^l - x_k^l d_i^j - δ_il δ_kj"""
    xs = [GenId(GenKind.X, i, j) for i in range(1, N + 1) for j in range(1, N + 1)]
    ds = [GenId(GenKind.D_CL, i, j) for i in range(1, N + 1) for j in range(1, N + 1)]
    relations = []
    for letters in (xs, ds):
        for a in range(len(letters)):
            for b in range(a + 1, len(letters)):
                later = NCPoly.letter(f, letters[b])
                relations.append(commutator(later, NCPoly.letter(f, letters[a])))
    for d in ds:
        for x in xs:
            rel = commutator(NCPoly.letter(f, d), NCPoly.letter(f, x))
            if d.row == x.col and x.row == d.col:
                rel = rel - 1
            relations.append(rel)
    return relations


def rea_relations(r: RMatrix, kind: GenKind = GenKind.M) -> List[NCPoly]:
    """Entries of B M_1 B M_1 - M_1 B M_1 B.

    B is R for the m-alphabet and R^{-1} for the d-alphabet.
    """
    f = r.field
    braid = r.inverse_op if kind is GenKind.D_Q else r.op
    if braid is None:
        raise RewriteError(f"{r.describe()} has no inverse")
    m1 = embed_at(gen_matrix(kind, r.N, f), 1, 2)
    return componentwise(braid @ m1 @ braid @ m1 - m1 @ braid @ m1 @ braid)


def cross_relations(r: RMatrix) -> List[NCPoly]:
    """Entries of D_1 M_bar2 - R^{-1} - M_bar2 D_1 R^{-2}"""
    f = r.field
    m = gen_matrix(GenKind.M, r.N, f)
    d1 = embed_at(gen_matrix(GenKind.D_Q, r.N, f), 1, 2)
    m_bar2 = bar_conjugate(m, 2, 2, r)
    r_inv = r.inverse_op
    return componentwise(d1 @ m_bar2 - r_inv - m_bar2 @ d1 @ r_inv @ r_inv)


def mrea_residual(r: RMatrix, lhat: TensorMat) -> TensorMat:
    """L_1 R L_1 R - R L_1 R L_1 - L_1 R + R L_1 for any k=1 matrix L"""
    l1 = embed_at(lhat, 1, 2)
    rop = r.op
    return l1 @ rop @ l1 @ rop - rop @ l1 @ rop @ l1 - l1 @ rop + rop @ l1


def mrea_relations(r: RMatrix) -> List[NCPoly]:
    return componentwise(mrea_residual(r, gen_matrix(GenKind.LHAT, r.N, r.field)))


def weyl_classical(N: int, f: ScalarField) -> AlgebraPreset:
    relations = tuple(weyl_relations(N, f))
    return AlgebraPreset(WEYL_CLASSICAL, f, N, relations, (GenKind.X, GenKind.D_CL))


def rea(r: RMatrix) -> AlgebraPreset:
    relations = tuple(rea_relations(r, GenKind.M))
    return AlgebraPreset(REA, r.field, r.N, relations, (GenKind.M,), r.source)


def rea_inv(r: RMatrix) -> AlgebraPreset:
    relations = tuple(rea_relations(r, GenKind.D_Q))
    return AlgebraPreset(REA_INV, r.field, r.N, relations, (GenKind.D_Q,), r.source)


def quantum_weyl(r: RMatrix) -> AlgebraPreset:
    relations = (
        rea_relations(r, GenKind.M)
        + rea_relations(r, GenKind.D_Q)
        + cross_relations(r)
    )
    return AlgebraPreset(
        QUANTUM_WEYL,
        r.field,
        r.N,
        tuple(dedupe(relations)),
        (GenKind.M, GenKind.D_Q),
        r.source,
    )


def mrea(r: RMatrix) -> AlgebraPreset:
    relations = tuple(mrea_relations(r))
    return AlgebraPreset(MREA, r.field, r.N, relations, (GenKind.LHAT,), r.source)


def preset(
    name: str, N: int, f: ScalarField, r: Optional[RMatrix] = None
) -> AlgebraPreset:
    """Look a preset up by its CLI name"""
    if name == WEYL_CLASSICAL:
        return weyl_classical(N, f)
    builders: Dict[str, Callable[[RMatrix], AlgebraPreset]] = {
        REA: rea,
        REA_INV: rea_inv,
        QUANTUM_WEYL: quantum_weyl,
        MREA: mrea,
    }
    if name not in builders:
        raise KeyError(
            f"unknown preset {name!r}; expected one of {', '.join(PRESET_NAMES)}"
        )
    if r is None:
        raise RewriteError(f"preset {name} needs an R-matrix")
    return builders[name](r)


def fingerprint(
    p: AlgebraPreset, degree_bound: int, order: MonomialOrder = DEGLEX
) -> str:
    """Content hash of (relations, order, bound, field)"""
    lines = sorted(
        " ".join(
            f"{'.'.join(map(str, w))}:{p.field.format(c)}"
            for w, c in rel.sorted_terms(order)
        )
        for rel in p.relations
    )
    header = [p.name, order.describe(), str(degree_bound), p.field.describe()]
    payload = "\n".join([*header, *lines])
    return hashlib.sha256(payload.encode()).hexdigest()


def build_system(
    p: AlgebraPreset,
    degree_bound: int,
    max_rules: int = DEFAULT_MAX_RULES,
    order: MonomialOrder = DEGLEX,
) -> RewriteSystem:
    """Complete the preset's relations up to ``degree_bound``"""
    if degree_bound < 2:
        raise RewriteError(f"degree bound must be at least 2, got {degree_bound}")
    return complete(
        p.relations,
        order=order,
        degree_bound=degree_bound,
        max_rules=max_rules,
        label=p.label,
        field=p.field,
    )


SystemProvider = Callable[[AlgebraPreset, int], RewriteSystem]
