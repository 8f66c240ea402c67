# Subcommand modules; each exposes register(subparsers) and run(config)
from src.cli.commands import cache, compute, fusion, selfcheck, table

COMMANDS = {
    "compute": compute,
    "fusion": fusion,
    "table": table,
    "selfcheck": selfcheck,
    "cache": cache,
}
