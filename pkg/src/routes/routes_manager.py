from src.adapters.cli.controllers.suite.suite_controller import SuiteController
from src.adapters.datasources.datasources import Datasources
from src.adapters.services.suite.suite_service import SuiteService
from src.core.platform.appcontext.appcontext import (
    new_factory,
    with_bound_override,
    with_field,
    with_jobs,
    with_max_rules,
)
from src.core.use_cases.use_cases import create_usecases
from src.schemas.schemas import RunConfig


class RoutesManager:
    """Wires datasources, context, use cases and service for one run"""

    def create_service(self, config: RunConfig) -> SuiteService:
        datasources = Datasources.create_datasources(config.cache_dir)
        context_factory = new_factory(datasources)
        usecases = create_usecases(
            context_factory,
            with_field(config.scalar_field()),
            with_jobs(config.jobs),
            with_bound_override(config.bound),
            with_max_rules(config.max_rules),
        )
        return SuiteService(usecases)

    def create_controller(self) -> SuiteController:
        return SuiteController(self.create_service)
