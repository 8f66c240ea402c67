"""
selfcheck: run every verification suite and report pass/fail.
"""

from src.cli.models import CliConfig
from src.engines.selfcheck import run_selfcheck


def register(subparsers) -> None:
    parser = subparsers.add_parser("selfcheck", help="Run the verification suites")
    parser.add_argument("--max-rank", type=int, default=3)
    parser.add_argument("--max-level", type=int, default=3)
    parser.add_argument("--max-genus", type=int, default=2)
    parser.add_argument("--trials", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--format", choices=["plain", "json"], default="plain")


def run(config: CliConfig) -> int:
    report = run_selfcheck(config.selfcheck_bounds(), config.engine_config())
    if config.format == "json":
        print(report.model_dump_json())
    else:
        print(report.render())
    return 0 if report.passed else 1
