"""
Recursive Verlinde numbers and engine cross-checks.

The recursive engine reduces any instance to fusion coefficients:
  1. degree: Hecke-shift one point so that d = 0
  2. genus:  D_g = sum_{mu in P_k} D_{g-1}(..., mu, mu*)
  3. split:  D_0(I1 + I2) = sum_{lam in W_res} D_0(I1 + lam) D_0(I2 + lam*)
  4. base:   0, 1, 2 points by rule, 3 points by the fusion engine
"""

from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import structlog

from src.config import DEFAULT_ENGINE_CONFIG, EngineConfig
from src.engines.analytic import AnalyticEngine
from src.engines.fusion import FusionEngine, get_fusion_engine
from src.errors import EngineMismatch, PreconditionError, RecursionBudgetExceeded
from src.observability.tracker import ReductionTrace, ReductionTracker
from src.weights.hecke import hecke
from src.weights.instance import ProblemInstance, divisible, level_ell
from src.weights.parabolic import nodal_point_data, omega_to_partition
from src.weights.partitions import Partition, WeightSet, dual, enumerate_weights, equivalent, normalize

logger = structlog.get_logger(__name__)


class EngineChoice(str, Enum):
    ANALYTIC = "analytic"
    RECURSIVE = "recursive"
    BOTH = "both"


def reduce_degree(instance: ProblemInstance) -> ProblemInstance:
    """
    Same value with degree 0

    For 0 < d mod r, the lexicographically largest point lambda_z is
    replaced by H^{r - d}(lambda_z); an empty point list first gains the
    trivial point.
    """
    r, k = instance.rank, instance.level
    residue = instance.degree % r
    if residue == 0:
        if instance.degree == 0:
            return instance
        return instance.with_points(instance.points, degree=0)

    points = list(instance.points) or [Partition.zero(r)]
    z = max(range(len(points)), key=lambda i: points[i])
    points[z] = hecke(points[z], r - residue, k)
    return instance.with_points(sorted(points), degree=0)


def reduce_genus_once(instance: ProblemInstance) -> List[ProblemInstance]:
    """One instance of genus g - 1 per mu in P_k, carrying mu and dual(mu) as new points."""
    if instance.genus < 1:
        raise PreconditionError(f"Genus reduction needs g >= 1, got {instance}")
    k = instance.level
    subproblems = []
    for mu in enumerate_weights(instance.rank, k, WeightSet.P):
        points = list(instance.points) + [normalize(mu), normalize(dual(mu, k))]
        subproblems.append(instance.with_points(points, genus=instance.genus - 1))
    return subproblems


def split_points_once(instance: ProblemInstance, pair: Tuple[int, int] = (0, 1)) -> List[Tuple[ProblemInstance, ProblemInstance]]:
    """
    Split two points off a genus-zero instance

    Returns:
        For each lam in W_res(-(|I1|) mod r): the pair
        (D_0(r, 0, I1 + lam), D_0(r, d, I2 + dual(lam)))
    """
    if instance.genus != 0:
        raise PreconditionError(f"Point splitting needs genus 0, got {instance}")
    if len(instance.points) < 4:
        raise PreconditionError(f"Point splitting needs at least 4 points, got {len(instance.points)}")
    i, j = pair
    if i == j or not (0 <= i < len(instance.points) and 0 <= j < len(instance.points)):
        raise PreconditionError(f"Invalid split pair {pair}")
    r, k = instance.rank, instance.level
    split_off = [instance.points[i], instance.points[j]]
    remaining = [p for n, p in enumerate(instance.points) if n not in (i, j)]
    residue = (-sum(p.size for p in split_off)) % r
    pairs = []
    for lam in enumerate_weights(r, k, WeightSet.W_RES, residue):
        left = instance.with_points(split_off + [lam], degree=0)
        right = instance.with_points(remaining + [normalize(dual(lam, k))])
        pairs.append((left, right))
    return pairs


class RecursiveEngine:
    """
    Reduces instances to fusion coefficients, memoized on the canonical instance
    """

    def __init__(self, config: Optional[EngineConfig] = None):
        self.config = config or DEFAULT_ENGINE_CONFIG
        self._memo: Dict[tuple, int] = {}

    def fusion_engine(self, rank: int, level: int) -> FusionEngine:
        return get_fusion_engine(rank, level, self.config)

    def _base(self, instance: ProblemInstance) -> int:
        points = instance.points
        if len(points) == 0:
            return 1
        if len(points) == 1:
            return int(points[0].size == 0)
        if len(points) == 2:
            return int(equivalent(points[0], dual(points[1], instance.level)))
        return self.fusion_engine(instance.rank, instance.level).fusion_coeff(*points)

    def _solve(self, instance: ProblemInstance, tracker: Optional[ReductionTracker], parent: Optional[int], term: int, depth: int) -> int:
        if depth > self.config.recursion_limit:
            logger.error("Recursion budget exceeded", instance=str(instance), depth=depth)
            raise RecursionBudgetExceeded(f"Reduction exceeded depth {self.config.recursion_limit} at {instance}")

        instance = instance.canonical()
        step = tracker.open("base", instance.describe(), parent, term) if tracker else None
        key = instance.key()
        if key in self._memo:
            value = self._memo[key]
            if tracker:
                tracker.close(step, value, source="memo")
            return value

        if instance.degree != 0:
            reduced = reduce_degree(instance)
            value = self._solve(reduced, tracker, step, 0, depth + 1)
            rule, count = "degree", 1
        elif not divisible(instance):
            value, rule, count = 0, "base", 0
        elif instance.genus > 0:
            value = 0
            subproblems = reduce_genus_once(instance)
            for n, sub in enumerate(subproblems):
                value += self._solve(sub, tracker, step, n, depth + 1)
            rule, count = "genus", len(subproblems)
        elif len(instance.points) >= 4:
            value = 0
            pairs = split_points_once(instance)
            for n, (left, right) in enumerate(pairs):
                left_value = self._solve(left, tracker, step, n, depth + 1)
                # both factors are recorded so that the trace replays
                right_value = self._solve(right, tracker, step, n, depth + 1)
                value += left_value * right_value
            rule, count = "split", len(pairs)
        else:
            value, rule, count = self._base(instance), "base", 0

        self._memo[key] = value
        if tracker:
            tracker.close(step, value, subproblems=count, rule=rule)
        return value

    def verlinde_recursive(self, instance: ProblemInstance, trace: bool = False) -> Tuple[int, Optional[ReductionTrace]]:
        """
        D_g(r, d, omega) by reduction to fusion coefficients

        Args:
            instance: validated problem instance
            trace: record the reduction tree

        Returns:
            (value, trace or None)
        """
        tracker = ReductionTracker() if trace else None
        value = self._solve(instance, tracker, None, 0, 0)
        logger.info("Recursive evaluation finished", instance=str(instance), value=str(value), memo=len(self._memo))
        return value, tracker.trace if tracker else None

    def value(self, instance: ProblemInstance) -> int:
        return self.verlinde_recursive(instance)[0]


class Evaluator:
    """
    Runs one or both engines and checks factorization identities
    """

    def __init__(self, config: Optional[EngineConfig] = None):
        self.config = config or DEFAULT_ENGINE_CONFIG
        self.analytic = AnalyticEngine(self.config)
        self.recursive = RecursiveEngine(self.config)
        self.last_residual = 0.0
        self.last_trace: Optional[ReductionTrace] = None

    def verlinde_checked(self, instance: ProblemInstance, engine: EngineChoice = EngineChoice.BOTH, trace: bool = False) -> int:
        """
        Value from the requested engine(s)

        Raises:
            EngineMismatch: in "both" mode when the engines disagree
        """
        engine = EngineChoice(engine)
        self.last_residual, self.last_trace = 0.0, None
        analytic_value = recursive_value = None

        if engine in (EngineChoice.ANALYTIC, EngineChoice.BOTH):
            result = self.analytic.verlinde_analytic(instance)
            analytic_value, self.last_residual = result.value, result.residual
        if engine in (EngineChoice.RECURSIVE, EngineChoice.BOTH):
            recursive_value, self.last_trace = self.recursive.verlinde_recursive(instance, trace=trace or engine is EngineChoice.BOTH)

        if engine is EngineChoice.BOTH and analytic_value != recursive_value:
            logger.error("Engines disagree", instance=str(instance), analytic=str(analytic_value), recursive=str(recursive_value))
            raise EngineMismatch(
                f"{instance}: analytic {analytic_value} != recursive {recursive_value}",
                analytic=analytic_value,
                recursive=recursive_value,
                trace=self.last_trace,
            )
        return analytic_value if analytic_value is not None else recursive_value

    def check_degree_varying_split(
        self,
        instance: ProblemInstance,
        genus_first: int,
        genus_second: int,
        first_points: Sequence[int],
        second_points: Sequence[int],
        c1: int,
        c2: int,
    ) -> bool:
        """
        Compare D_g(r, d, omega) with the degree-varying factorization

            sum_{mu in P_k, d_1 integral} D_{g1}(r, d_1, I1 + x_1(mu)) D_{g2}(r, d_2, I2 + x_2(mu))

        where l_j = c_j l / (c1 + c2), n_j = (r l_j + sum_{I_j} |lambda|) / k,
        d_1 = n_1 + |mu| / k + r (g1 - 1) and d_2 = n_2 + r - |mu| / k + r (g2 - 1).
        Both sides are evaluated with the analytic engine.

        Raises:
            PreconditionError: genera or point sets do not partition the instance,
                or some l_j is not an integer
        """
        r, k = instance.rank, instance.level
        if genus_first < 0 or genus_second < 0 or genus_first + genus_second != instance.genus:
            raise PreconditionError(f"Genera {genus_first} + {genus_second} do not add up to {instance.genus}")
        indices = sorted(list(first_points) + list(second_points))
        if indices != list(range(len(instance.points))):
            raise PreconditionError(f"Point sets {list(first_points)} and {list(second_points)} do not partition the points")
        if c1 <= 0 or c2 <= 0:
            raise PreconditionError(f"Weights c1={c1}, c2={c2} must be positive")

        ell = level_ell(instance)
        ells = [Fraction(c, c1 + c2) * ell for c in (c1, c2)]
        if any(e.denominator != 1 for e in ells):
            raise PreconditionError(f"l_j = {[str(e) for e in ells]} are not all integers for l = {ell}")
        firsts = [instance.points[i] for i in first_points]
        seconds = [instance.points[i] for i in second_points]
        n1 = Fraction(r * ells[0] + sum(p.size for p in firsts), k)
        n2 = Fraction(r * ells[1] + sum(p.size for p in seconds), k)

        lhs = self.analytic.value(instance)
        rhs = 0
        for mu in enumerate_weights(r, k, WeightSet.P):
            d1 = n1 + Fraction(mu.size, k) + r * (genus_first - 1)
            if d1.denominator != 1:
                continue
            d2 = n2 + r - Fraction(mu.size, k) + r * (genus_second - 1)
            x1, x2 = nodal_point_data(mu, k)
            left = ProblemInstance(genus_first, r, int(d1), k, tuple(firsts) + (normalize(omega_to_partition(x1, k)),))
            right = ProblemInstance(genus_second, r, int(d2), k, tuple(seconds) + (normalize(omega_to_partition(x2, k)),))
            left_value = self.analytic.value(left)
            if left_value:
                rhs += left_value * self.analytic.value(right)
        logger.info("Degree-varying split checked", instance=str(instance), lhs=str(lhs), rhs=str(rhs))
        return lhs == rhs


def verlinde_recursive(instance: ProblemInstance, config: Optional[EngineConfig] = None) -> int:
    return RecursiveEngine(config).value(instance)


def verlinde_checked(instance: ProblemInstance, engine: EngineChoice = EngineChoice.BOTH, config: Optional[EngineConfig] = None) -> int:
    return Evaluator(config).verlinde_checked(instance, engine)
