import time
from typing import List, Optional, Tuple

from src.core.domain.capelli import content_shift
from src.core.domain.combinatorics import (
    Carrier,
    ClassicalCarrier,
    HeckeCarrier,
    StdTableau,
    all_idempotents,
)
from src.core.domain.errors import IdempotentError, PoleError
from src.core.domain.model import IDEMPOTENTS_CHECK, CheckStatus, IdentityReport
from src.core.domain.rmatrix import evaluate_entries
from src.core.domain.tensorspace import TensorMat, format_index, inverse
from src.core.platform.appcontext.appcontext import Context

Failure = Tuple[str, str]


def _first_entry(residual: TensorMat) -> str:
    (row, col), value = residual.sorted_items()[0]
    return f"({format_index(row)},{format_index(col)}) {value.format()}"


def degenerates_to_classical(carrier: HeckeCarrier) -> bool:
    """Hecke idempotents at q = 1 agree with the symmetric group ones"""
    classical_carrier = ClassicalCarrier(carrier.field, carrier.N, carrier.n)
    classical = dict(all_idempotents(classical_carrier))
    try:
        return all(
            evaluate_entries(e, 1) == evaluate_entries(classical[tableau], 1)
            for tableau, e in all_idempotents(carrier)
        )
    except PoleError:
        return False


class VerifyIdempotentsUseCase:
    """Use case for checking the primitive idempotents of one carrier.

    Each E_T is checked for E^2 = E and J_k E = eps(c(k)) E while it is built;
    on top of that the family must be pairwise orthogonal and sum to the
    identity. On a Hecke carrier the central shift (J_k^{-1} - 1)/(q - q^{-1})
    must act on E_T by -q^{-c(k)}[c(k)]_q.
    """

    def __init__(self, context: Context):
        self.context = context

    def execute(self, carrier: Carrier) -> IdentityReport:
        start = time.perf_counter()
        f = carrier.field
        params = {
            "carrier": carrier.kind,
            "N": carrier.N,
            "n": carrier.n,
            "q": f.describe(),
        }
        self.context.logger.info(f"Checking idempotents of {carrier.describe()}")
        try:
            family = all_idempotents(carrier)
        except IdempotentError as e:
            return IdentityReport(
                id=IDEMPOTENTS_CHECK,
                params=params,
                status=CheckStatus.FAILED,
                failing_entry="construction",
                residual=str(e),
                ms=round((time.perf_counter() - start) * 1000.0, 3),
            )

        failures: List[Failure] = []
        checked = 2 * len(family)
        for a, (ta, ea) in enumerate(family):
            for b, (tb, eb) in enumerate(family):
                if a == b:
                    continue
                checked += 1
                product = ea @ eb
                if not product.is_zero():
                    failures.append((f"E{ta} E{tb}", _first_entry(product)))

        total = TensorMat.zero(f, carrier.N, carrier.n)
        for _, e in family:
            total = total + e
        checked += 1
        if total != carrier.identity():
            failures.append(("sum", _first_entry(total - carrier.identity())))

        info = {
            "idempotents": len(family),
            "nonzero": sum(1 for _, e in family if not e.is_zero()),
        }
        if isinstance(carrier, HeckeCarrier):
            for tableau, e in family:
                for k in range(2, carrier.n + 1):
                    checked += 1
                    failure = self._central_shift(carrier, tableau, e, k)
                    if failure:
                        failures.append(failure)
            if f.is_symbolic and carrier.n == 2:
                info["degenerates_to_classical"] = degenerates_to_classical(carrier)

        first = failures[0] if failures else None
        if first:
            self.context.logger.warning(
                f"{carrier.describe()} failed at {first[0]}: {first[1]}"
            )
        return IdentityReport(
            id=IDEMPOTENTS_CHECK,
            params=params,
            status=CheckStatus.FAILED if first else CheckStatus.VERIFIED,
            entries_checked=checked,
            failing_entry=first[0] if first else None,
            residual=first[1] if first else None,
            ms=round((time.perf_counter() - start) * 1000.0, 3),
            info=info,
        )

    @staticmethod
    def _central_shift(
        carrier: HeckeCarrier, tableau: StdTableau, e: TensorMat, k: int
    ) -> Optional[Failure]:
        f = carrier.field
        shift = inverse(carrier.jm(k)).shift(-1).scale(f.one / f.omega)
        residual = shift @ e + e.scale(content_shift(f, tableau.content(k)))
        if residual.is_zero():
            return None
        return (f"J_{k} on E{tableau}", _first_entry(residual))
