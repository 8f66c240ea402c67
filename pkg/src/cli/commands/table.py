"""
table: CSV of Verlinde numbers over genus, level and degree ranges.
"""

import pandas as pd
import structlog

from src.cli.models import CliConfig
from src.db.cache import CacheManager
from src.engines.evaluator import EngineChoice, Evaluator
from src.engines.fusion import get_fusion_engine
from src.weights.instance import ProblemInstance
from src.weights.parabolic import parse_points

logger = structlog.get_logger(__name__)

COLUMNS = ["genus", "rank", "degree", "level", "weights", "value"]


def register(subparsers) -> None:
    parser = subparsers.add_parser("table", help="Tabulate Verlinde numbers as CSV")
    parser.add_argument("--rank", type=int, required=True)
    parser.add_argument("--genus", dest="genus_range", default="0", help="Range a..b")
    parser.add_argument("--level", dest="level_range", default="1", help="Range a..b")
    parser.add_argument("--degree", dest="degree_range", default="0", help="Range a..b")
    parser.add_argument("--weights", default="")
    parser.add_argument("--engine", choices=[e.value for e in EngineChoice], default=EngineChoice.ANALYTIC.value)
    parser.add_argument("--use-cache", action="store_true", help="Load and store the fusion memo per level")


def _inclusive(bounds) -> range:
    low, high = bounds
    return range(low, high + 1)


def run(config: CliConfig) -> int:
    engine_config = config.engine_config()
    evaluator = Evaluator(engine_config)
    manager = CacheManager(config.resolved_cache_dir()) if config.use_cache else None
    rows = []
    for level in _inclusive(config.level_range):
        fusion = get_fusion_engine(config.rank, level, engine_config)
        if manager is not None:
            manager.load(fusion)
        points = parse_points(config.weights, config.rank, level)
        for genus in _inclusive(config.genus_range):
            for degree in _inclusive(config.degree_range):
                instance = ProblemInstance(genus, config.rank, degree, level, tuple(points))
                value = evaluator.verlinde_checked(instance, config.engine)
                rows.append({**instance.describe(), "value": str(value)})
        if manager is not None:
            manager.store(fusion)
    logger.info("Table computed", rows=len(rows), rank=config.rank)
    frame = pd.DataFrame(rows, columns=COLUMNS)
    frame = frame.sort_values(["genus", "level", "degree"], kind="stable")
    print(frame.to_csv(index=False), end="")
    return 0
