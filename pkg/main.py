import sys
from typing import Optional, Sequence

from src.core.platform.logging import get_logger
from src.routes.routes_manager import RoutesManager

logger = get_logger("capelli.main")


def main(argv: Optional[Sequence[str]] = None) -> int:
    logger.debug("Initializing controller...")
    controller = RoutesManager().create_controller()
    return controller.run(argv)


if __name__ == "__main__":
    sys.exit(main())
