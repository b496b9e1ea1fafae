from typing import Callable, Optional

from src.adapters.datasources.datasources import Datasources
from src.adapters.datasources.repositories.repositories import Repositories
from src.core.domain.rewriting import DEFAULT_MAX_RULES
from src.core.domain.scalars import ScalarField
from src.core.platform.logging import Logger, get_logger


class Context:
    """Application context: session field, repositories and run knobs"""

    def __init__(
        self,
        field: Optional[ScalarField] = None,
        repositories: Optional[Repositories] = None,
        logger: Optional[Logger] = None,
        jobs: int = 1,
        bound_override: Optional[int] = None,
        max_rules: int = DEFAULT_MAX_RULES,
    ):
        self.field = field or ScalarField.symbolic()
        self.repositories = repositories
        self.logger = logger or get_logger("capelli.appcontext")
        self.jobs = jobs
        self.bound_override = bound_override
        self.max_rules = max_rules


Option = Callable[[Context], None]
Factory = Callable[..., Context]


def with_field(field: ScalarField) -> Option:
    def option(context: Context) -> None:
        context.field = field

    return option


def with_jobs(jobs: int) -> Option:
    def option(context: Context) -> None:
        context.jobs = max(1, jobs)

    return option


def with_bound_override(bound: Optional[int]) -> Option:
    def option(context: Context) -> None:
        context.bound_override = bound

    return option


def with_max_rules(max_rules: int) -> Option:
    def option(context: Context) -> None:
        context.max_rules = max_rules

    return option


def new_factory(
    datasources: Datasources,
) -> Factory:
    """Create a new context factory"""

    def factory(*opts: Option) -> Context:
        context = Context(
            repositories=Repositories.create_repositories(datasources),
            logger=get_logger("capelli.appcontext"),
        )
        for opt in opts:
            opt(context)
        return context

    return factory
