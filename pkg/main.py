import argparse
import logging
import sys
from typing import List, Optional

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

from commands import COMMAND_GROUPS  # noqa: E402
from services.errors import FrigValidationError, PreconditionError  # noqa: E402
from services.settings import settings  # noqa: E402

logger = logging.getLogger("fuzzyselect")

EXIT_FAILURE = 1
EXIT_INVALID_DATA = 3
EXIT_PRECONDITION = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzyselect",
        description="Requirement selection with fuzzy value dependencies",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True
    for group in COMMAND_GROUPS:
        group.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one subcommand and return its exit code"""
    settings.configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 0 for --help and 2 for usage errors
        return int(e.code or 0)

    try:
        return args.handler(args)
    except FrigValidationError as e:
        logger.error(f"Invalid data: {e}")
        return EXIT_INVALID_DATA
    except PreconditionError as e:
        logger.error(f"Precondition failed: {e}")
        return EXIT_PRECONDITION
    except Exception as e:
        logger.exception(f"Unexpected error in {args.command}: {str(e)}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
