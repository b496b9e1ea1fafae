from dataclasses import dataclass

from src.core.platform.appcontext.appcontext import Context, Factory, Option
from src.core.use_cases.classical_use_cases import (
    VerifyCdetUseCase,
    VerifyClassicalCapelliUseCase,
    VerifyImmanantIdentityUseCase,
)
from src.core.use_cases.idempotent_use_cases import VerifyIdempotentsUseCase
from src.core.use_cases.quantum_use_cases import (
    VerifyCorcapUseCase,
    VerifyImmanantPropertiesUseCase,
    VerifyMreaEmbeddingUseCase,
    VerifyQuantumCapelliUseCase,
)
from src.core.use_cases.rewrite_system_use_cases import (
    AuditPresetUseCase,
    BuildSystemUseCase,
    ConfluenceAuditUseCase,
)
from src.core.use_cases.rmatrix_use_cases import (
    LoadRMatrixUseCase,
    ValidateRMatrixUseCase,
)


@dataclass
class RMatrixUsecases:
    """Container for R-matrix use cases"""

    load_usecase: LoadRMatrixUseCase
    validate_usecase: ValidateRMatrixUseCase


@dataclass
class RewriteUsecases:
    """Container for rewrite system use cases"""

    build_system_usecase: BuildSystemUseCase
    audit_usecase: ConfluenceAuditUseCase
    preset_audit_usecase: AuditPresetUseCase


@dataclass
class ClassicalUsecases:
    """Container for classical identity use cases"""

    cdet_usecase: VerifyCdetUseCase
    capelli_usecase: VerifyClassicalCapelliUseCase
    immanant_usecase: VerifyImmanantIdentityUseCase


@dataclass
class IdempotentUsecases:
    verify_usecase: VerifyIdempotentsUseCase


@dataclass
class QuantumUsecases:
    """Container for quantum identity use cases"""

    capelli_usecase: VerifyQuantumCapelliUseCase
    corcap_usecase: VerifyCorcapUseCase
    immanant_properties_usecase: VerifyImmanantPropertiesUseCase
    mrea_embedding_usecase: VerifyMreaEmbeddingUseCase


@dataclass
class Usecases:
    """Container for all use cases"""

    context: Context
    rmatrix: RMatrixUsecases
    rewrite: RewriteUsecases
    classical: ClassicalUsecases
    idempotents: IdempotentUsecases
    quantum: QuantumUsecases


def create_usecases(context_factory: Factory, *opts: Option) -> Usecases:
    """Create all use cases with the given context factory"""
    # one context, hence one system cache, per run
    context = context_factory(*opts)
    systems = BuildSystemUseCase(context)
    audit = ConfluenceAuditUseCase(context)
    return Usecases(
        context=context,
        rmatrix=RMatrixUsecases(
            load_usecase=LoadRMatrixUseCase(context),
            validate_usecase=ValidateRMatrixUseCase(context),
        ),
        rewrite=RewriteUsecases(
            build_system_usecase=systems,
            audit_usecase=audit,
            preset_audit_usecase=AuditPresetUseCase(context, systems, audit),
        ),
        classical=ClassicalUsecases(
            cdet_usecase=VerifyCdetUseCase(context, systems),
            capelli_usecase=VerifyClassicalCapelliUseCase(context, systems),
            immanant_usecase=VerifyImmanantIdentityUseCase(context, systems),
        ),
        idempotents=IdempotentUsecases(
            verify_usecase=VerifyIdempotentsUseCase(context)
        ),
        quantum=QuantumUsecases(
            capelli_usecase=VerifyQuantumCapelliUseCase(context, systems),
            corcap_usecase=VerifyCorcapUseCase(context, systems),
            immanant_properties_usecase=VerifyImmanantPropertiesUseCase(
                context, systems
            ),
            mrea_embedding_usecase=VerifyMreaEmbeddingUseCase(context, systems),
        ),
    )
