from src.adapters.datasources.datasources import Datasources
from src.adapters.datasources.repositories.rewrite_system.repository import (
    FileRewriteSystemRepository,
    InMemoryRewriteSystemRepository,
)
from src.adapters.datasources.repositories.rewrite_system.repository_interface import (
    RewriteSystemRepositoryInterface,
)
from src.adapters.datasources.repositories.rmatrix.repository import RMatrixRepository
from src.adapters.datasources.repositories.rmatrix.repository_interface import (
    RMatrixRepositoryInterface,
)


class Repositories:
    """Container for all repositories"""

    def __init__(
        self,
        rewrite_system: RewriteSystemRepositoryInterface,
        rmatrix: RMatrixRepositoryInterface,
    ):
        self.rewrite_system = rewrite_system
        self.rmatrix = rmatrix

    @staticmethod
    def create_repositories(datasources: Datasources):
        """Factory method to create repositories"""
        if datasources.cache_dir is not None:
            rewrite_system = FileRewriteSystemRepository(datasources.cache_dir)
        else:
            rewrite_system = InMemoryRewriteSystemRepository()
        return Repositories(
            rewrite_system=rewrite_system,
            rmatrix=RMatrixRepository(),
        )
