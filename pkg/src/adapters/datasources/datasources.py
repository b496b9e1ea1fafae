import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

CACHE_DIR_ENV = "CAPELLI_CACHE_DIR"


@dataclass
class Datasources:
    """Container for all data sources"""

    cache_dir: Optional[Path] = None

    @staticmethod
    def create_datasources(cache_dir: Optional[str] = None):
        """Factory method to create datasources; falls back to $CAPELLI_CACHE_DIR"""
        location = cache_dir or os.environ.get(CACHE_DIR_ENV)
        return Datasources(cache_dir=Path(location) if location else None)
