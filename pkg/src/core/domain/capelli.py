"""Both sides of the Capelli identities and their certification by normal forms.

Classical identities live in the Weyl algebra through L = XD; the quantum
ones live in W(R) through L̂ = MD, and quantum immanants in the abstract mREA.
Every verifier reduces all entries of LHS - RHS against one completed system.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation

from src.core.domain.algebras import (
    AlgebraPreset,
    SystemProvider,
    build_system,
    gen_matrix,
    mrea,
    mrea_residual,
    quantum_weyl,
    weyl_classical,
)
from src.core.domain.combinatorics import (
    ClassicalCarrier,
    HeckeCarrier,
    Partition,
    StdTableau,
    format_shape,
    idempotent,
    jm_classical,
    jm_hecke,
    standard_tableaux,
)
from src.core.domain.errors import CombinatoricsError, TensorShapeError
from src.core.domain.model import (
    EQ1_CDET,
    EQ2_CLASSICAL,
    EQ3_IMMANANT,
    EQ6_QUANTUM,
    EQ7_CORCAP,
    IMMANANT_PROPS,
    MREA_EMBEDDING,
    CheckStatus,
    IdentityReport,
    ParamValue,
)
from src.core.domain.ncpoly import GenKind, NCPoly, commutator, nc_sum, specialize
from src.core.domain.rewriting import RewriteSystem, normal_form
from src.core.domain.rmatrix import RMatrix
from src.core.domain.scalars import Scalar, ScalarField
from src.core.domain.tensorspace import (
    TensorMat,
    bar_conjugate,
    braid_factors,
    embed_at,
    format_index,
    inverse,
    r_trace,
    trace_slots,
)

Labelled = Tuple[str, NCPoly]


def default_provider(preset: AlgebraPreset, degree_bound: int) -> RewriteSystem:
    return build_system(preset, degree_bound)


def _elapsed_ms(start: float) -> float:
    return round((time.perf_counter() - start) * 1000.0, 3)


def _entry_label(key) -> str:
    row, col = key
    return f"({format_index(row)},{format_index(col)})"


def certify_polys(
    identity: str,
    params: Dict[str, ParamValue],
    items: Sequence[Labelled],
    system: RewriteSystem,
    jobs: int = 1,
    entries_checked: Optional[int] = None,
    started: Optional[float] = None,
) -> IdentityReport:
    """Reduce every labelled residual; verified iff all normal forms vanish.

    Results are collected in input order, so the first failure reported does
    not depend on ``jobs``.
    """
    start = started if started is not None else time.perf_counter()

    def reduce(item: Labelled) -> Tuple[str, NCPoly]:
        label, p = item
        return label, normal_form(p, system)

    if jobs > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(reduce, items))
    else:
        results = [reduce(item) for item in items]

    failing = next(((label, nf) for label, nf in results if nf), None)
    return IdentityReport(
        id=identity,
        params=params,
        status=CheckStatus.FAILED if failing else CheckStatus.VERIFIED,
        entries_checked=len(items) if entries_checked is None else entries_checked,
        failing_entry=failing[0] if failing else None,
        residual=failing[1].format() if failing else None,
        ms=_elapsed_ms(start),
        stats=system.stats(),
    )


def certify(
    identity: str,
    params: Dict[str, ParamValue],
    difference: TensorMat,
    system: RewriteSystem,
    jobs: int = 1,
    started: Optional[float] = None,
) -> IdentityReport:
    """Entrywise certification of a matrix difference; absent entries are zero"""
    items = [(_entry_label(key), value) for key, value in difference.sorted_items()]
    return certify_polys(
        identity,
        params,
        items,
        system,
        jobs=jobs,
        entries_checked=difference.N ** (2 * difference.k),
        started=started,
    )


def _failed(report: IdentityReport, label: str, residual: NCPoly) -> IdentityReport:
    if not report.verified:
        return report
    return report.model_copy(
        update={
            "status": CheckStatus.FAILED,
            "failing_entry": label,
            "residual": residual.format(),
        }
    )


def coherent(p: NCPoly, symbolic: RewriteSystem, specialized: RewriteSystem) -> bool:
    """NF then evaluate at q0 agrees with evaluate at q0 then NF"""
    return specialize(normal_form(p, symbolic), specialized.field) == normal_form(
        specialize(p, specialized.field), specialized
    )


# classical


def numerical_k(N: int, f: ScalarField) -> TensorMat:
    """K = diag(N-1, N-2, ..., 1, 0)"""
    return TensorMat.from_scalars(f, N, 1, {((i,), (i,)): N - i for i in range(1, N)})


def cdet(a: TensorMat) -> NCPoly:
    """Column determinant: sum sgn(s) A(s1,1) A(s2,2) ... A(sN,N)"""
    if a.k != 1:
        raise TensorShapeError(f"cdet needs a width-1 matrix, got width {a.k}")
    f = a.field
    terms = []
    for sigma in permutations(range(a.N)):
        term = NCPoly.constant(f, Permutation(list(sigma)).signature())
        for col, row in enumerate(sigma):
            term = term * a.entry((row + 1,), (col + 1,))
            if not term:
                break
        terms.append(term)
    return nc_sum(f, terms)


def classical_matrices(
    N: int, f: ScalarField
) -> Tuple[TensorMat, TensorMat, TensorMat]:
    """X, D and L = XD in the Weyl alphabet"""
    x = gen_matrix(GenKind.X, N, f)
    d = gen_matrix(GenKind.D_CL, N, f)
    return x, d, x @ d


def verify_cdet_capelli(
    N: int,
    f: ScalarField,
    provider: SystemProvider = default_provider,
    shift: bool = True,
    bound: Optional[int] = None,
) -> IdentityReport:
    """cdet(XD + K) = det X det D; with shift=False the K term is dropped"""
    start = time.perf_counter()
    system = provider(weyl_classical(N, f), bound or max(2, 2 * N))
    x, d, l = classical_matrices(N, f)
    shifted = l + numerical_k(N, f) if shift else l
    difference = cdet(shifted) - cdet(x) * cdet(d)
    return certify(
        EQ1_CDET,
        {"N": N, "q": f.describe(), "shift": shift},
        TensorMat.element(difference, N),
        system,
        started=start,
    )


def classical_rhs(x: TensorMat, d: TensorMat, n: int) -> TensorMat:
    """X_1 ... X_n D_1 ... D_n"""
    result = embed_at(x, 1, n)
    for k in range(2, n + 1):
        result = result @ embed_at(x, k, n)
    for k in range(1, n + 1):
        result = result @ embed_at(d, k, n)
    return result


def capelli_classical_sides(
    N: int, n: int, f: ScalarField
) -> Tuple[TensorMat, TensorMat]:
    """L_1 (L_2 - j_2) ... (L_n - j_n) and X_1 ... X_n D_1 ... D_n"""
    if n < 1:
        raise TensorShapeError(f"width must be positive, got {n}")
    x, d, l = classical_matrices(N, f)
    lhs = embed_at(l, 1, n)
    for k in range(2, n + 1):
        lhs = lhs @ (embed_at(l, k, n) - jm_classical(k, n, N, f))
    return lhs, classical_rhs(x, d, n)


def verify_capelli_classical(
    N: int,
    n: int,
    f: ScalarField,
    provider: SystemProvider = default_provider,
    bound: Optional[int] = None,
    jobs: int = 1,
) -> IdentityReport:
    start = time.perf_counter()
    system = provider(weyl_classical(N, f), bound or max(2, 2 * n))
    lhs, rhs = capelli_classical_sides(N, n, f)
    params = {"N": N, "n": n, "q": f.describe()}
    return certify(EQ2_CLASSICAL, params, lhs - rhs, system, jobs, start)


def pick_tableau(shape: Partition, tableau_index: int) -> StdTableau:
    tableaux = standard_tableaux(shape)
    if not 0 <= tableau_index < len(tableaux):
        raise CombinatoricsError(
            f"shape {format_shape(shape)} has {len(tableaux)} tableaux, "
            f"index {tableau_index} is out of range"
        )
    return tableaux[tableau_index]


def imm_classical_sides(
    tableau: StdTableau, N: int, f: ScalarField
) -> Tuple[TensorMat, TensorMat]:
    """L_1 (L_2 - c(2)) ... (L_n - c(n)) E and X_1 ... X_n D_1 ... D_n E"""
    n = tableau.n
    x, d, l = classical_matrices(N, f)
    e = idempotent(tableau, ClassicalCarrier(f, N, n))
    lhs = embed_at(l, 1, n)
    for k in range(2, n + 1):
        lhs = lhs @ embed_at(l, k, n).shift(-tableau.content(k))
    return lhs @ e, classical_rhs(x, d, n) @ e


def verify_imm(
    shape: Partition,
    tableau_index: int,
    N: int,
    with_trace: bool,
    f: ScalarField,
    provider: SystemProvider = default_provider,
    bound: Optional[int] = None,
    jobs: int = 1,
) -> IdentityReport:
    """Immanant identity for one tableau; traced runs also compare across tableaux"""
    start = time.perf_counter()
    tableau = pick_tableau(shape, tableau_index)
    n = tableau.n
    system = provider(weyl_classical(N, f), bound or max(2, 2 * n))
    lhs, rhs = imm_classical_sides(tableau, N, f)
    slots = range(1, n + 1)
    if with_trace:
        lhs, rhs = trace_slots(lhs, slots), trace_slots(rhs, slots)
    params = {
        "N": N,
        "n": n,
        "shape": format_shape(tableau.shape),
        "tableau": tableau.format(),
        "with_trace": with_trace,
        "q": f.describe(),
    }
    report = certify(EQ3_IMMANANT, params, lhs - rhs, system, jobs, start)
    if not with_trace:
        return report

    reference = lhs.as_element()
    independent = True
    for other in standard_tableaux(shape):
        if other == tableau:
            continue
        other_lhs, _ = imm_classical_sides(other, N, f)
        other_trace = trace_slots(other_lhs, slots).as_element()
        residual = normal_form(reference - other_trace, system)
        if residual:
            independent = False
            report = _failed(report, f"tableau {other.format()}", residual)
    report.info["i_independent"] = independent
    report.ms = _elapsed_ms(start)
    return report


# quantum


class QuantumFrame:
    """Bar copies and inverse Jucys-Murphy operators of one R at one width"""

    def __init__(self, r: RMatrix, n: int):
        self.r = r
        self.n = n
        self.field = r.field
        self.factors = braid_factors(r, n)
        self._jm_inverse: Dict[int, TensorMat] = {}

    def bar(self, a: TensorMat, k: int) -> TensorMat:
        return bar_conjugate(a, k, self.n, self.r, self.factors)

    def bars(self, a: TensorMat) -> List[TensorMat]:
        return [self.bar(a, k) for k in range(1, self.n + 1)]

    def jm_inverse(self, k: int) -> TensorMat:
        if k not in self._jm_inverse:
            if k == 1:
                self._jm_inverse[k] = TensorMat.identity(self.field, self.r.N, self.n)
            else:
                self._jm_inverse[k] = inverse(jm_hecke(k, self.n, self.r))
        return self._jm_inverse[k]

    def ordered_product(self, m: TensorMat, d: TensorMat) -> TensorMat:
        """M_bar1 ... M_barn D_barn ... D_bar1"""
        mbars = self.bars(m)
        dbars = self.bars(d)
        result = mbars[0]
        for factor in mbars[1:] + list(reversed(dbars)):
            result = result @ factor
        return result


def quantum_matrices(r: RMatrix) -> Tuple[TensorMat, TensorMat, TensorMat]:
    """M, D and L̂ = MD in the W(R) alphabet"""
    m = gen_matrix(GenKind.M, r.N, r.field)
    d = gen_matrix(GenKind.D_Q, r.N, r.field)
    return m, d, m @ d


def capelli_quantum_sides(r: RMatrix, n: int) -> Tuple[TensorMat, TensorMat]:
    """Both sides of the universal quantum identity.

    L̂_bar1 prod_k (L̂_bark + (J_k^{-1} - 1)/(q - q^{-1})) on the left and
    M_bar1 ... M_barn D_barn ... D_bar1 J_1^{-1} ... J_n^{-1} on the right.
    """
    if n < 1:
        raise TensorShapeError(f"width must be positive, got {n}")
    f = r.field
    frame = QuantumFrame(r, n)
    m, d, lhat = quantum_matrices(r)
    lbars = frame.bars(lhat)
    lhs = lbars[0]
    for k in range(2, n + 1):
        correction = frame.jm_inverse(k).shift(-1).scale(f.one / f.omega)
        lhs = lhs @ (lbars[k - 1] + correction)
    rhs = frame.ordered_product(m, d)
    for k in range(2, n + 1):
        rhs = rhs @ frame.jm_inverse(k)
    return lhs, rhs


def verify_capelli_quantum(
    r: RMatrix,
    n: int,
    provider: SystemProvider = default_provider,
    bound: Optional[int] = None,
    jobs: int = 1,
) -> IdentityReport:
    start = time.perf_counter()
    r.require_valid()
    system = provider(quantum_weyl(r), bound or max(2, 2 * n))
    lhs, rhs = capelli_quantum_sides(r, n)
    params = {"N": r.N, "n": n, "q": r.field.describe(), "rmatrix": r.source}
    return certify(EQ6_QUANTUM, params, lhs - rhs, system, jobs, start)


def content_shift(f: ScalarField, c: int) -> Scalar:
    """q^{-c} [c]_q"""
    return f.power(-c) * f.qnum(c)


def shifted_product(lbars: List[TensorMat], tableau: StdTableau) -> TensorMat:
    """L_bar1 (L_bar2 - q^{-c(2)}[c(2)]_q) ... (L_barn - q^{-c(n)}[c(n)]_q)"""
    f = lbars[0].field
    result = lbars[0]
    for k in range(2, tableau.n + 1):
        result = result @ lbars[k - 1].shift(-content_shift(f, tableau.content(k)))
    return result


def corcap_sides(
    r: RMatrix, tableau: StdTableau
) -> Tuple[TensorMat, TensorMat, TensorMat]:
    """(LHS E, RHS E, E) of the idempotent-projected quantum identity"""
    f = r.field
    n = tableau.n
    frame = QuantumFrame(r, n)
    m, d, lhat = quantum_matrices(r)
    e = idempotent(tableau, HeckeCarrier(r, n))
    lhs = shifted_product(frame.bars(lhat), tableau)
    prefactor = f.power(-2 * sum(tableau.contents))
    rhs = frame.ordered_product(m, d).scale(prefactor)
    return lhs @ e, rhs @ e, e


def verify_corcap(
    r: RMatrix,
    shape: Partition,
    tableau_index: int,
    provider: SystemProvider = default_provider,
    with_trace: bool = False,
    consistency: bool = True,
    check_independence: bool = False,
    bound: Optional[int] = None,
    jobs: int = 1,
) -> IdentityReport:
    """Quantum identity multiplied on the right by E_T.

    ``consistency`` also checks, in the free algebra, that the general
    identity times E equals this one times E. ``check_independence`` records
    whether the left side agrees across tableaux of the shape; the outcome is
    informational only.
    """
    start = time.perf_counter()
    r.require_valid()
    tableau = pick_tableau(shape, tableau_index)
    n = tableau.n
    system = provider(quantum_weyl(r), bound or max(2, 2 * n))
    lhs_e, rhs_e, e = corcap_sides(r, tableau)
    lhs, rhs = lhs_e, rhs_e
    slots = range(1, n + 1)
    if with_trace:
        lhs, rhs = r_trace(lhs, slots, r.weights), r_trace(rhs, slots, r.weights)
    params = {
        "N": r.N,
        "n": n,
        "shape": format_shape(tableau.shape),
        "tableau": tableau.format(),
        "with_trace": with_trace,
        "q": r.field.describe(),
        "rmatrix": r.source,
    }
    report = certify(EQ7_CORCAP, params, lhs - rhs, system, jobs, start)

    if consistency:
        lhs6, rhs6 = capelli_quantum_sides(r, n)
        consistent = lhs6 @ e == lhs_e and rhs6 @ e == rhs_e
        report.info["eq6_consistent"] = consistent
        if not consistent:
            report = report.model_copy(
                update={
                    "status": CheckStatus.FAILED,
                    "failing_entry": "eq6-consistency",
                }
            )

    if check_independence:
        independent = True
        for other in standard_tableaux(shape):
            if other == tableau:
                continue
            other_lhs, _, _ = corcap_sides(r, other)
            if with_trace:
                other_lhs = r_trace(other_lhs, slots, r.weights)
            if any(normal_form(v, system) for _, v in (lhs - other_lhs).sorted_items()):
                independent = False
                break
        report.info["i_independent"] = independent
    report.ms = _elapsed_ms(start)
    return report


def quantum_immanant(
    r: RMatrix,
    shape: Partition,
    tableau_index: int,
    system: Optional[RewriteSystem] = None,
    provider: SystemProvider = default_provider,
) -> NCPoly:
    """Tr_R(1..n) of L̂_bar1 (L̂_bar2 - q^{-c(2)}[c(2)]_q) ... E_T in the mREA"""
    r.require_valid()
    tableau = pick_tableau(shape, tableau_index)
    n = tableau.n
    if system is None:
        system = provider(mrea(r), max(2, n))
    frame = QuantumFrame(r, n)
    lhat = gen_matrix(GenKind.LHAT, r.N, r.field)
    e = idempotent(tableau, HeckeCarrier(r, n))
    product = shifted_product(frame.bars(lhat), tableau) @ e
    traced = r_trace(product, range(1, n + 1), r.weights)
    return normal_form(traced.as_element(), system)


def verify_immanant_properties(
    r: RMatrix,
    shape: Partition,
    provider: SystemProvider = default_provider,
    centrality: bool = True,
    bound: Optional[int] = None,
    jobs: int = 1,
) -> IdentityReport:
    """Tableau independence and centrality of the quantum immanants of one shape"""
    start = time.perf_counter()
    r.require_valid()
    n = sum(shape)
    system = provider(mrea(r), bound or (n + 1 if centrality else max(2, n)))
    tableaux = standard_tableaux(shape)
    immanants = [
        quantum_immanant(r, shape, i, system=system) for i in range(len(tableaux))
    ]
    reference = immanants[0]

    items: List[Labelled] = [
        (f"tableau {t.format()}", other - reference)
        for t, other in zip(tableaux[1:], immanants[1:])
    ]
    if centrality:
        for gen in mrea(r).generators():
            bracket = commutator(reference, NCPoly.letter(r.field, gen))
            items.append((f"[s, {gen}]", bracket))
    params = {
        "N": r.N,
        "n": n,
        "shape": format_shape(tuple(shape)),
        "centrality": centrality,
        "q": r.field.describe(),
        "rmatrix": r.source,
    }
    report = certify_polys(IMMANANT_PROPS, params, items, system, jobs, started=start)
    report.info["immanant_terms"] = len(reference)
    report.info["tableaux"] = len(tableaux)
    return report


def verify_mrea_embedding(
    r: RMatrix,
    provider: SystemProvider = default_provider,
    bound: Optional[int] = None,
    jobs: int = 1,
) -> IdentityReport:
    """L̂ = MD satisfies the modified reflection equation inside W(R)"""
    start = time.perf_counter()
    r.require_valid()
    system = provider(quantum_weyl(r), bound or 4)
    _, _, lhat = quantum_matrices(r)
    params = {"N": r.N, "q": r.field.describe(), "rmatrix": r.source}
    return certify(MREA_EMBEDDING, params, mrea_residual(r, lhat), system, jobs, start)
