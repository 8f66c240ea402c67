"""
Self-check suites: character identities, engine agreement, factorization
rules, Hecke invariance and the phi bijection, over a bounded grid.

Every randomized selection draws from one numpy Generator seeded by the
caller, so a report is reproducible byte for byte.
"""

from itertools import combinations, combinations_with_replacement, permutations
from math import comb
from typing import Callable, List, Optional, Sequence

import numpy as np
import structlog
from pydantic import BaseModel, Field

from src.config import DEFAULT_ENGINE_CONFIG, MAX_GENUS, MAX_LEVEL, EngineConfig
from src.engines.analytic import rank_one_value
from src.engines.evaluator import Evaluator, reduce_genus_once, split_points_once
from src.engines.fusion import get_fusion_engine
from src.errors import PreconditionError
from src.numerics.identities import IdentityKind, identity_residual
from src.numerics.roots import eval_points
from src.numerics.schur import schur_at, schur_tableau_sum
from src.weights.hecke import hecke, phi
from src.weights.instance import ProblemInstance, divisible, level_ell
from src.weights.parabolic import (
    ParabolicPoint,
    hecke_point,
    hecke_point_partial,
    omega_to_partition,
    partition_to_omega,
    telescoping_holds,
)
from src.weights.partitions import Partition, WeightSet, dual, enumerate_weights, equivalent, normalize

logger = structlog.get_logger(__name__)

# Bialternant and tableau evaluations must agree to this absolute error
SCHUR_AGREEMENT = 1e-10


class SelfcheckBounds(BaseModel):
    """Grid limits and sampling controls"""
    max_rank: int = Field(default=3, ge=1, le=4)
    max_level: int = Field(default=3, ge=1, le=5)
    max_genus: int = Field(default=2, ge=0, le=3)
    trials: int = Field(default=200, ge=1, le=5000)
    seed: int = 0
    # Rank-one sweep grid
    rank_one_max_genus: int = Field(default=5, ge=0, le=MAX_GENUS)
    rank_one_max_level: int = Field(default=8, ge=1, le=MAX_LEVEL)
    rank_one_max_degree: int = Field(default=3, ge=0, le=64)


class SuiteResult(BaseModel):
    """Outcome of one suite"""
    name: str
    passed: bool = True
    checks: int = 0
    max_residual: Optional[float] = None
    failure: Optional[str] = None

    def record(self, ok: bool, case: str, residual: Optional[float] = None) -> None:
        self.checks += 1
        if residual is not None:
            self.max_residual = residual if self.max_residual is None else max(self.max_residual, residual)
        if not ok:
            self.passed = False
            # keep the smallest failing case seen
            if self.failure is None or (len(case), case) < (len(self.failure), self.failure):
                self.failure = case


class SelfcheckReport(BaseModel):
    """All suite outcomes of one run"""
    seed: int
    suites: List[SuiteResult] = []

    @property
    def passed(self) -> bool:
        return all(suite.passed for suite in self.suites)

    def render(self) -> str:
        lines = []
        for suite in self.suites:
            line = f"{suite.name:<24} {'PASS' if suite.passed else 'FAIL'}  checks={suite.checks}"
            if suite.max_residual is not None:
                line += f"  max_residual={suite.max_residual:.3e}"
            lines.append(line)
            if suite.failure is not None:
                lines.append(f"  failing: {suite.failure}")
        status = "PASS" if self.passed else "FAIL"
        lines.append(f"selfcheck {status}: {sum(s.passed for s in self.suites)}/{len(self.suites)} suites, seed={self.seed}")
        return "\n".join(lines)


class SelfCheck:
    """
    Runs every suite against one evaluator and one seeded generator
    """

    def __init__(self, bounds: Optional[SelfcheckBounds] = None, config: Optional[EngineConfig] = None):
        self.bounds = bounds or SelfcheckBounds()
        self.config = config or DEFAULT_ENGINE_CONFIG
        self.evaluator = Evaluator(self.config)
        self.rng = np.random.default_rng(self.bounds.seed)

    # Grid helpers

    @property
    def ranks(self) -> List[int]:
        return list(range(2, self.bounds.max_rank + 1)) or [1]

    @property
    def levels(self) -> List[int]:
        return list(range(1, self.bounds.max_level + 1))

    def _pick(self, values: Sequence):
        return values[int(self.rng.integers(len(values)))]

    def _analytic(self, instance: ProblemInstance) -> int:
        return self.evaluator.analytic.value(instance)

    def sample_instance(self, max_points: int = 3, genus: Optional[int] = None) -> ProblemInstance:
        r = self._pick(self.ranks)
        k = self._pick(self.levels)
        g = int(self.rng.integers(0, self.bounds.max_genus + 1)) if genus is None else genus
        d = int(self.rng.integers(0, r))
        weights = enumerate_weights(r, k, WeightSet.W)
        count = int(self.rng.integers(0, max_points + 1))
        points = tuple(sorted(self._pick(weights) for _ in range(count)))
        return ProblemInstance(g, r, d, k, points)

    # Suites

    def character_identities(self) -> SuiteResult:
        result = SuiteResult(name="character_identities")
        tol = self.config.identity_tolerance
        for r in self.ranks:
            for k in self.levels:
                points = eval_points(r, k)
                for p in points:
                    for kind in (IdentityKind.SUM_P, IdentityKind.SUM_W):
                        res = identity_residual(kind, r, k, p, config=self.config)
                        result.record(res < tol, f"{kind.value} r={r} k={k} v={p.v}", res)
                for p, q in combinations(points, 2):
                    res = identity_residual(IdentityKind.ORTH, r, k, p, q, config=self.config)
                    result.record(res < tol, f"orth r={r} k={k} v={p.v} v'={q.v}", res)
        return result

    def schur_oracle(self) -> SuiteResult:
        result = SuiteResult(name="schur_oracle")
        for r in [r for r in self.ranks if r <= 3]:
            for k in [k for k in self.levels if k <= 4]:
                for p in eval_points(r, k):
                    variables = [complex(np.exp(2j * np.pi * v / p.order)) for v in p.v]
                    for weight in enumerate_weights(r, k, WeightSet.W):
                        res = abs(schur_at(weight, p, max_condition=self.config.max_condition) - schur_tableau_sum(weight, variables))
                        result.record(res < SCHUR_AGREEMENT, f"lambda={weight} v={p.v} N={p.order}", res)
        return result

    def rank_one(self) -> SuiteResult:
        result = SuiteResult(name="rank_one")
        for g in range(self.bounds.rank_one_max_genus + 1):
            for k in range(1, self.bounds.rank_one_max_level + 1):
                for d in range(self.bounds.rank_one_max_degree + 1):
                    instance = ProblemInstance(g, 1, d, k)
                    expected = rank_one_value(g, k)
                    ok = self._analytic(instance) == expected == self.evaluator.recursive.value(instance)
                    result.record(ok, str(instance))
        return result

    def base_cases(self) -> SuiteResult:
        result = SuiteResult(name="base_cases")
        for r in self.ranks:
            for k in self.levels:
                weights = enumerate_weights(r, k, WeightSet.W)
                for lam in weights:
                    instance = ProblemInstance(0, r, 0, k, (lam,))
                    result.record(self._analytic(instance) == int(lam.size == 0), str(instance))
                for lam, mu in combinations_with_replacement(weights, 2):
                    instance = ProblemInstance(0, r, 0, k, (lam, mu))
                    expected = int(equivalent(lam, dual(mu, k)))
                    result.record(self._analytic(instance) == expected, str(instance))
        return result

    def pieri_base(self) -> SuiteResult:
        result = SuiteResult(name="pieri_base")
        for r in [r for r in self.ranks if r >= 2]:
            for k in self.levels:
                fusion = get_fusion_engine(r, k, self.config)
                weights = enumerate_weights(r, k, WeightSet.W)
                for s in range(1, r):
                    omega = Partition.fundamental(s, r)
                    for y in weights:
                        for z in weights:
                            instance = ProblemInstance(0, r, 0, k, (omega, y, z))
                            result.record(self._analytic(instance) == fusion.fusion_base3(s, y, z), str(instance))
        return result

    def cross_engine(self) -> SuiteResult:
        result = SuiteResult(name="cross_engine")
        for _ in range(self.bounds.trials):
            instance = self.sample_instance()
            analytic = self._analytic(instance)
            recursive = self.evaluator.recursive.value(instance)
            result.record(analytic == recursive, f"{instance} analytic={analytic} recursive={recursive}")
        return result

    def genus_identity(self) -> SuiteResult:
        result = SuiteResult(name="genus_identity")
        for _ in range(max(1, self.bounds.trials // 4)):
            if self.bounds.max_genus < 1:
                break
            instance = self.sample_instance(genus=int(self.rng.integers(1, self.bounds.max_genus + 1)))
            total = sum(self._analytic(sub) for sub in reduce_genus_once(instance))
            result.record(total == self._analytic(instance), str(instance))
        return result

    def split_identity(self) -> SuiteResult:
        result = SuiteResult(name="split_identity")
        for _ in range(max(1, self.bounds.trials // 10)):
            base = self.sample_instance(max_points=0, genus=0)
            weights = enumerate_weights(base.rank, base.level, WeightSet.W)
            count = int(self.rng.integers(4, 6))
            instance = base.with_points([self._pick(weights) for _ in range(count)])
            expected = self._analytic(instance)
            for pair in combinations(range(count), 2):
                total = sum(self._analytic(left) * self._analytic(right) for left, right in split_points_once(instance, pair))
                result.record(total == expected, f"{instance} pair={pair}")
        return result

    def degree_varying_split(self, minimum: int = 20) -> SuiteResult:
        result = SuiteResult(name="degree_varying_split")
        attempts = 0
        while result.checks < minimum and attempts < 50 * minimum:
            attempts += 1
            instance = self.sample_instance(max_points=3)
            g1 = int(self.rng.integers(0, instance.genus + 1))
            indices = list(range(len(instance.points)))
            first = [i for i in indices if self.rng.integers(2)]
            second = [i for i in indices if i not in first]
            c1, c2 = int(self.rng.integers(1, 4)), int(self.rng.integers(1, 4))
            try:
                ok = self.evaluator.check_degree_varying_split(instance, g1, instance.genus - g1, first, second, c1, c2)
            except PreconditionError:
                continue
            result.record(ok, f"{instance} g1={g1} I1={first} I2={second} c=({c1},{c2})")
        if result.checks < minimum:
            result.passed = False
            result.failure = result.failure or f"only {result.checks} admissible instances in {attempts} attempts"
        return result

    def hecke_invariance(self, minimum: int = 100) -> SuiteResult:
        result = SuiteResult(name="hecke_invariance")
        while result.checks < minimum:
            instance = self.sample_instance(genus=int(self.rng.integers(0, min(self.bounds.max_genus, 1) + 1)))
            if not instance.points:
                continue
            r, k = instance.rank, instance.level
            z = int(self.rng.integers(len(instance.points)))
            m = int(self.rng.integers(1, r + 1))
            before = self._analytic(instance)
            points = list(instance.points)
            points[z] = hecke(points[z], m, k)
            shifted = instance.with_points(points, degree=instance.degree + m)
            result.record(before == self._analytic(shifted), f"{instance} z={z} m={m}")

            point = partition_to_omega(instance.points[z], k)
            if point.length >= 1:
                moved, shift = hecke_point(point, k)
                points[z] = normalize(omega_to_partition(moved, k))
                transformed = instance.with_points(points, degree=instance.degree - shift)
                result.record(before == self._analytic(transformed), f"{instance} z={z} point={point}")
            raised = point.shifted()
            if raised.weights[-1] < k and raised.flag_type[0] > 1:
                m = int(self.rng.integers(1, raised.flag_type[0]))
                points[z] = normalize(omega_to_partition(hecke_point_partial(raised, m, k), k))
                transformed = instance.with_points(points, degree=instance.degree - m)
                result.record(before == self._analytic(transformed), f"{instance} z={z} partial m={m}")
        return result

    def phi_bijection(self) -> SuiteResult:
        result = SuiteResult(name="phi_bijection")
        for r in [r for r in self.ranks if r <= 4]:
            for k in [k for k in self.levels if k <= 5]:
                domain = enumerate_weights(r, k, WeightSet.P)
                codomain = enumerate_weights(r, k, WeightSet.W)
                for offset in range(r * k + 1):
                    sources = [mu for mu in domain if (offset + mu.size) % k == 0]
                    images = [phi(mu, offset, r, k) for mu in sources]
                    target = sorted(lam for lam in codomain if (offset + lam.size) % r == 0)
                    ok = len(set(images)) == len(images) and sorted(images) == target
                    result.record(ok, f"r={r} k={k} A={offset}")
        return result

    def genus_one_count(self) -> SuiteResult:
        result = SuiteResult(name="genus_one_count")
        for r in [r for r in self.ranks if r >= 2]:
            for k in self.levels:
                instance = ProblemInstance(1, r, 0, k)
                expected = comb(k + r - 1, r)
                ok = self._analytic(instance) == expected == self.evaluator.recursive.value(instance)
                result.record(ok, str(instance))
        return result

    def fusion_ring(self) -> SuiteResult:
        result = SuiteResult(name="fusion_ring")
        r = 2 if self.bounds.max_rank >= 2 else 1
        for k in [k for k in self.levels if k <= 3]:
            fusion = get_fusion_engine(r, k, self.config)
            weights = enumerate_weights(r, k, WeightSet.W)
            for triple in combinations_with_replacement(weights, 3):
                values = {fusion.fusion_coeff(*order) for order in permutations(triple)}
                analytic = self._analytic(ProblemInstance(0, r, 0, k, triple))
                result.record(values == {analytic}, f"r={r} k={k} triple={[str(w) for w in triple]}")
            for quad in combinations_with_replacement(weights, 4):
                a, b, c, d = quad
                splits = {fusion.four_point((a, b), (c, d)), fusion.four_point((a, c), (b, d)), fusion.four_point((a, d), (b, c))}
                result.record(len(splits) == 1, f"r={r} k={k} quad={[str(w) for w in quad]}")
            matrices = {w: fusion.fusion_matrix(w) for w in weights}
            for a, b in combinations_with_replacement(weights, 2):
                product = matrices[a].dot(matrices[b])
                expansion = sum(fusion.fusion_coeff(a, b, normalize(dual(c, k))) * matrices[c] for c in weights)
                ok = (product == matrices[b].dot(matrices[a])).all() and (product == expansion).all()
                result.record(bool(ok), f"r={r} k={k} N_{a} N_{b}")
            for lam in weights:
                for s in range(1, r):
                    omega = Partition.fundamental(s, r)
                    for y, z in combinations_with_replacement(weights, 2):
                        pieri = sum(fusion.fusion_coeff(mu, y, z) for mu in fusion.pieri_set(lam, s))
                        result.record(pieri == fusion.four_point((omega, lam), (y, z)), f"r={r} k={k} pieri lambda={lam} s={s} y={y} z={z}")
        return result

    def telescoping(self) -> SuiteResult:
        result = SuiteResult(name="telescoping")
        for _ in range(self.bounds.trials):
            r = int(self.rng.integers(1, 6))
            k = int(self.rng.integers(1, 8))
            blocks = int(self.rng.integers(1, min(r, k + 1) + 1))
            cuts = sorted(self.rng.choice(np.arange(1, r), size=blocks - 1, replace=False).tolist()) if blocks > 1 else []
            bounds = [0] + cuts + [r]
            flag_type = tuple(bounds[i + 1] - bounds[i] for i in range(blocks))
            weights = tuple(sorted(self.rng.choice(np.arange(0, k + 1), size=blocks, replace=False).tolist()))
            point = ParabolicPoint(flag_type, weights)
            result.record(telescoping_holds(point, k), f"{point} k={k}")
        for _ in range(self.bounds.trials):
            instance = self.sample_instance()
            result.record((level_ell(instance).denominator == 1) == divisible(instance), str(instance))
        return result

    def suites(self) -> List[Callable[[], SuiteResult]]:
        return [
            self.character_identities,
            self.schur_oracle,
            self.telescoping,
            self.phi_bijection,
            self.rank_one,
            self.base_cases,
            self.pieri_base,
            self.genus_one_count,
            self.fusion_ring,
            self.cross_engine,
            self.genus_identity,
            self.split_identity,
            self.degree_varying_split,
            self.hecke_invariance,
        ]

    def run(self) -> SelfcheckReport:
        report = SelfcheckReport(seed=self.bounds.seed)
        for suite in self.suites():
            outcome = suite()
            logger.info("Suite finished", suite=outcome.name, passed=outcome.passed, checks=outcome.checks)
            report.suites.append(outcome)
        return report


def run_selfcheck(bounds: Optional[SelfcheckBounds] = None, config: Optional[EngineConfig] = None) -> SelfcheckReport:
    return SelfCheck(bounds, config).run()
