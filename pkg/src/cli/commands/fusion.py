"""
fusion: one fusion coefficient D_0(r, 0, {a, b, c}).
"""

import pandas as pd

from src.cli.models import CliConfig, FusionReport
from src.db.cache import CacheManager
from src.engines.fusion import get_fusion_engine
from src.errors import InvalidInstanceError
from src.weights.parabolic import parse_points


def register(subparsers) -> None:
    parser = subparsers.add_parser("fusion", help="Compute a fusion coefficient")
    parser.add_argument("--rank", type=int, required=True)
    parser.add_argument("--level", type=int, required=True)
    parser.add_argument("--a", required=True)
    parser.add_argument("--b", required=True)
    parser.add_argument("--c", required=True)
    parser.add_argument("--format", choices=["plain", "json", "csv"], default="plain")
    parser.add_argument("--use-cache", action="store_true", help="Load and store the fusion memo")


def run(config: CliConfig) -> int:
    texts = [config.a, config.b, config.c]
    if any(text is None for text in texts):
        raise InvalidInstanceError("fusion needs --a, --b and --c")
    weights = []
    for text in texts:
        points = parse_points(text, config.rank, config.level)
        if len(points) != 1:
            raise InvalidInstanceError(f"Expected exactly one weight, got {text!r}")
        weights.append(points[0])

    engine = get_fusion_engine(config.rank, config.level, config.engine_config())
    manager = CacheManager(config.resolved_cache_dir()) if config.use_cache else None
    if manager is not None:
        manager.load(engine)
    value = engine.fusion_coeff(*weights)
    if manager is not None:
        manager.store(engine)

    report = FusionReport(
        rank=config.rank,
        level=config.level,
        a=str(weights[0]),
        b=str(weights[1]),
        c=str(weights[2]),
        value=str(value),
    )
    if config.format == "json":
        print(report.model_dump_json())
    elif config.format == "csv":
        print(pd.DataFrame([report.model_dump()]).to_csv(index=False), end="")
    else:
        print(value)
    return 0
