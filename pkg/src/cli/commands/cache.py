"""
cache: export, import and clear fusion memo files.
"""

import structlog

from src.cli.models import CliConfig
from src.db.cache import CacheManager
from src.engines.fusion import get_fusion_engine
from src.errors import InvalidInstanceError

logger = structlog.get_logger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("cache", help="Manage fusion memo files")
    actions = parser.add_subparsers(dest="action", required=True)

    export = actions.add_parser("export", help="Tabulate all fusion coefficients and write them")
    export.add_argument("--rank", type=int, required=True)
    export.add_argument("--level", type=int, required=True)
    export.add_argument("--out", default=None, help="Target file (default: the cache directory)")

    load = actions.add_parser("import", help="Validate a memo file and copy it into the cache directory")
    load.add_argument("--file", required=True)

    clear = actions.add_parser("clear", help="Remove memo files")
    clear.add_argument("--rank", dest="clear_rank", type=int, default=None)
    clear.add_argument("--level", dest="clear_level", type=int, default=None)


def run(config: CliConfig) -> int:
    manager = CacheManager(config.resolved_cache_dir())
    if config.action == "export":
        engine = get_fusion_engine(config.rank, config.level, config.engine_config())
        manager.load(engine)
        engine.fusion_table()
        count = manager.store(engine, config.out)
    elif config.action == "import":
        if config.file is None:
            raise InvalidInstanceError("cache import needs --file")
        count = len(manager.import_file(config.file).entries)
    else:
        count = manager.clear(config.clear_rank, config.clear_level)
    logger.info("Cache action finished", action=config.action, count=count)
    print(count)
    return 0
