import argparse
import sys
from pathlib import Path
from typing import Callable, List, Optional, Sequence

from pydantic import ValidationError

from src.adapters.services.suite.suite_service import SuiteService
from src.core.domain.errors import CapelliError, ConfigurationError
from src.core.platform.logging import get_logger
from src.schemas.schemas import ReportFormat, RunConfig, Suite, SuiteReport

EXIT_VERIFIED = 0
EXIT_FAILED = 1
EXIT_CONFIGURATION = 2

ServiceFactory = Callable[[RunConfig], SuiteService]

logger = get_logger("capelli.suite_controller")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="capelli",
        description="Certify Capelli identities by reduction to normal form.",
    )
    parser.add_argument(
        "--suite", choices=[s.value for s in Suite], default=Suite.ALL.value
    )
    parser.add_argument(
        "--N", dest="N", type=int, help="dimension of the vector space (<= 4)"
    )
    parser.add_argument(
        "--n", dest="n", type=int, help="number of tensor copies (<= 4)"
    )
    parser.add_argument("--q", help="'symbolic' or a rational q0 such as 2")
    parser.add_argument(
        "--rmatrix", help="'dj', 'permutation' or a path to an R-matrix file"
    )
    parser.add_argument(
        "--bound", type=int, help="override the degree bound of every completion"
    )
    parser.add_argument(
        "--cache-dir",
        dest="cache_dir",
        help="rewrite system cache (default $CAPELLI_CACHE_DIR)",
    )
    parser.add_argument(
        "--report",
        choices=[f.value for f in ReportFormat],
        default=ReportFormat.JSON.value,
    )
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument("--jobs", type=int, help="worker threads for entry reduction")
    parser.add_argument(
        "--force", action="store_true", help="lift the size and width guards"
    )
    parser.add_argument(
        "--max-rules",
        dest="max_rules",
        type=int,
        help="abort completion above this many rules",
    )
    return parser


def parse_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    """Parse flags into a RunConfig; unset flags keep the schema defaults"""
    args = build_parser().parse_args(argv)
    return RunConfig(**{k: v for k, v in vars(args).items() if v is not None})


def render(report: SuiteReport, fmt: ReportFormat) -> str:
    if fmt is ReportFormat.TEXT:
        return report.to_text()
    return report.model_dump_json(indent=2) + "\n"


def _guard_messages(error: ValidationError) -> List[str]:
    messages = []
    for e in error.errors():
        location = ".".join(str(p) for p in e["loc"]) or "config"
        messages.append(f"{location}: {e['msg']}")
    return messages


class SuiteController:
    """Command-line entry: flags in, report out, exit code back"""

    def __init__(self, service_factory: ServiceFactory):
        self.service_factory = service_factory

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        try:
            config = parse_config(argv)
        except ValidationError as e:
            for message in _guard_messages(e):
                logger.error(f"Invalid configuration - {message}")
                print(f"configuration error: {message}", file=sys.stderr)
            return EXIT_CONFIGURATION

        try:
            logger.info(f"capelli --suite {config.suite.value} - starting")
            report = self.service_factory(config).run(config)
        except ConfigurationError as e:
            logger.log_exception("capelli - configuration error", e)
            print(f"configuration error: {e}", file=sys.stderr)
            return EXIT_CONFIGURATION
        except CapelliError as e:
            logger.log_exception("capelli - run aborted", e)
            print(f"error: {e}", file=sys.stderr)
            return EXIT_FAILED

        output = render(report, config.report)
        if config.out:
            path = Path(config.out)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(output)
            logger.info(f"Report written to {path}")
        else:
            sys.stdout.write(output)
        return EXIT_VERIFIED if report.all_verified else EXIT_FAILED
