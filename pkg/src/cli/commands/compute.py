"""
compute: one Verlinde number from the requested engine(s).
"""

import json
import sys
import time

import pandas as pd
import structlog

from src.cli.models import CliConfig, ComputeReport
from src.db.cache import CacheManager
from src.engines.evaluator import EngineChoice, Evaluator
from src.engines.fusion import get_fusion_engine
from src.errors import VerlindeError
from src.weights.instance import ProblemInstance
from src.weights.parabolic import parse_points

logger = structlog.get_logger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("compute", help="Compute D_g(r, d, omega)")
    parser.add_argument("--genus", type=int, default=0)
    parser.add_argument("--rank", type=int, required=True)
    parser.add_argument("--level", type=int, required=True)
    parser.add_argument("--degree", type=int, default=0)
    parser.add_argument("--weights", default="", help='Points, e.g. "1,0;1,0" or "n=1,1;a=0,2"')
    parser.add_argument("--engine", choices=[e.value for e in EngineChoice], default=EngineChoice.ANALYTIC.value)
    parser.add_argument("--format", choices=["plain", "json", "csv"], default="plain")
    parser.add_argument("--trace", action="store_true", help="Record, summarize and replay the reduction")
    parser.add_argument("--use-cache", action="store_true", help="Load and store the fusion memo")


def run(config: CliConfig) -> int:
    engine_config = config.engine_config()
    points = parse_points(config.weights, config.rank, config.level)
    instance = ProblemInstance(config.genus, config.rank, config.degree, config.level, tuple(points))

    manager = CacheManager(config.resolved_cache_dir()) if config.use_cache else None
    fusion = get_fusion_engine(config.rank, config.level, engine_config)
    if manager is not None:
        manager.load(fusion)

    started = time.perf_counter()
    evaluator = Evaluator(engine_config)
    value = evaluator.verlinde_checked(instance, config.engine, trace=config.trace)
    millis = (time.perf_counter() - started) * 1000.0
    logger.info("Computed", instance=str(instance), engine=config.engine.value, millis=round(millis, 3))

    if manager is not None:
        manager.store(fusion)

    if config.trace and evaluator.last_trace is not None:
        trace = evaluator.last_trace
        summary = {"steps": len(trace.steps), "breakdown": trace.breakdown(), "replayed": trace.replay()}
        print(json.dumps(summary, sort_keys=True), file=sys.stderr)
        if not summary["replayed"]:
            raise VerlindeError(f"{instance}: reduction trace does not replay to {value}")

    report = ComputeReport(
        **instance.describe(),
        value=str(value),
        engine=config.engine.value,
        residual=evaluator.last_residual,
        millis=millis,
    )
    if config.format == "json":
        print(report.model_dump_json())
    elif config.format == "csv":
        frame = pd.DataFrame([report.model_dump(exclude={"millis", "residual", "engine"})])
        print(frame.to_csv(index=False), end="")
    else:
        print(value)
    return 0
