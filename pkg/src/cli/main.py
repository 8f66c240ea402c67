"""
Verlinde number calculator - command-line entry point.
Parses arguments into a validated CliConfig and dispatches to a subcommand.
"""

import argparse
import sys
from typing import List, Optional

import structlog
from pydantic import ValidationError

from src.cli.commands import COMMANDS
from src.cli.models import CliConfig
from src.errors import EngineMismatch, PrecisionExceeded, VerlindeError
from src.observability.logging_config import configure_logging

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="verlinde",
        description="Exact Verlinde numbers for parabolic U(r) bundles",
    )
    parser.add_argument("--verbose", action="store_true", help="Log at INFO level")
    parser.add_argument("--log-format", choices=["text", "json"], default=None)
    parser.add_argument("--cache-dir", default=None, help="Directory of fusion memo files")
    parser.add_argument("--tolerance", type=float, default=None, help="Allowed distance from an integer")
    parser.add_argument("--identity-tolerance", type=float, default=None)
    parser.add_argument("--dps", type=int, default=None, help="Decimal digits of the high-precision pass")
    parser.add_argument("--workers", type=int, default=1)

    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in COMMANDS.values():
        module.register(subparsers)
    return parser


def _config_from(namespace: argparse.Namespace) -> CliConfig:
    values = {
        key: value
        for key, value in vars(namespace).items()
        if value is not None and key not in ("verbose", "log_format")
    }
    return CliConfig(**values)


def _report_validation(error: ValidationError) -> None:
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "arguments"
        print(f"error: {location}: {item['msg']}", file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one command

    Args:
        argv: Arguments without the program name, defaults to sys.argv[1:]

    Returns:
        Process exit code
    """
    parser = build_parser()
    try:
        namespace = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE

    configure_logging(level="INFO" if namespace.verbose else None, fmt=namespace.log_format, force=True)

    try:
        config = _config_from(namespace)
        return COMMANDS[config.command].run(config)
    except ValidationError as e:
        _report_validation(e)
        return EXIT_USAGE
    except EngineMismatch as e:
        print(f"error: {e}", file=sys.stderr)
        logger.error("Engine mismatch", **e.details())
        return e.exit_code
    except PrecisionExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        logger.error("Precision exceeded", residual=e.residual, digits=e.digits)
        return e.exit_code
    except VerlindeError as e:
        print(f"error: {e}", file=sys.stderr)
        logger.error("Verlinde error", error=str(e), exit_code=e.exit_code)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
