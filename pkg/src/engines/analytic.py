"""
Closed-form Verlinde numbers.

    D = (-1)^(d(r-1)) (k/r)^g (r N^(r-1))^(g-1)
        * sum_v e((dN - |omega|) |v|) * prod_x S_{lambda_x}(zeta^v) * (prod_{i<j} 2 sin pi (v_i - v_j)/N)^(2(1-g))

with N = r + k, e(x) = exp(2 pi i x / (rN)) and v running over the evaluation
points 0 = v_r < ... < v_1 < N. The sum is evaluated in double precision,
escalated once to mpmath when the result cannot be certified, and rounded
only when the residual and the precision floor are both below tolerance.
"""

import math
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any, Optional, Sequence, Tuple

import structlog
from pydantic import BaseModel, field_serializer

from src.config import DEFAULT_ENGINE_CONFIG, PRECISION_SAFETY, EngineConfig
from src.errors import EngineMismatch, PrecisionExceeded
from src.numerics.identities import sine_product
from src.numerics.roots import DOUBLE, Backend, EvalPoint, MultiPrecisionBackend, check_finite, eval_points, log10_magnitude
from src.numerics.schur import schur_values
from src.weights.instance import ProblemInstance, divisible

logger = structlog.get_logger(__name__)


class AnalyticResult(BaseModel):
    """Certified integer value of an analytic evaluation."""

    value: int
    residual: float = 0.0
    terms: int = 0
    backend: str = "none"
    digits: int = 0
    millis: float = 0.0

    @field_serializer("value")
    def _serialize_value(self, value: int) -> str:
        return str(value)


def rank_one_value(genus: int, level: int) -> int:
    """Rank one closed form k^g."""
    return level ** genus


def prefactor(instance: ProblemInstance) -> Fraction:
    """(-1)^(d(r-1)) (k/r)^g (r N^(r-1))^(g-1) as an exact rational."""
    r, k, g, d = instance.rank, instance.level, instance.genus, instance.degree
    order = r + k
    sign = -1 if (d * (r - 1)) % 2 else 1
    return sign * Fraction(k, r) ** g * Fraction(r * order ** (r - 1)) ** (g - 1)


class AnalyticEngine:
    """
    Evaluates the closed Verlinde formula and certifies the rounded integer
    """

    def __init__(self, config: Optional[EngineConfig] = None):
        self.config = config or DEFAULT_ENGINE_CONFIG

    def _partial_sum(self, instance: ProblemInstance, points: Sequence[EvalPoint], backend: Backend) -> Tuple[Any, float]:
        """Sum of terms over a chunk of evaluation points, plus the sum of their moduli."""
        r, k, d = instance.rank, instance.level, instance.degree
        order = r + k
        phase_step = d * order - instance.total_size
        power = 1 - instance.genus
        total = backend.zero
        scale = 0.0
        with backend.precision():
            for point in points:
                values = schur_values(instance.points, point, backend, self.config.max_condition)
                term = backend.root(r * order, phase_step * point.total)
                for weight in instance.points:
                    term = term * values[weight]
                sines = sine_product(point, backend)
                term = term * sines ** power if power >= 0 else term / sines ** (-power)
                total += term
                scale += abs(complex(term))
        return total, scale

    def _raw_sum(self, instance: ProblemInstance, backend: Backend) -> Tuple[Any, float, int]:
        points = eval_points(instance.rank, instance.level)
        workers = self.config.workers
        if workers > 1 and backend is DOUBLE and len(points) > workers:
            size = math.ceil(len(points) / workers)
            chunks = [points[i:i + size] for i in range(0, len(points), size)]
            with ThreadPoolExecutor(max_workers=workers) as pool:
                partials = list(pool.map(lambda chunk: self._partial_sum(instance, chunk, backend), chunks))
            total, scale = backend.zero, 0.0
            for part, part_scale in partials:
                total += part
                scale += part_scale
        else:
            total, scale = self._partial_sum(instance, points, backend)
        return total, scale, len(points)

    def _evaluate(self, instance: ProblemInstance, backend: Backend) -> Tuple[int, float, float, int]:
        """
        Evaluate with one backend

        Returns:
            (rounded value, residual, precision floor, term count)
        """
        factor = prefactor(instance)
        total, scale, terms = self._raw_sum(instance, backend)
        with backend.precision():
            value = backend.from_fraction(factor.numerator, factor.denominator) * total
            check_finite(value, "analytic sum")
            rounded = backend.nearest_integer(value)
            residual = float(max(abs(value.imag), abs(value.real - rounded)))
        magnitude = max(abs(factor) * scale, 1.0)
        floor = float(magnitude) * 10.0 ** (-backend.digits) * PRECISION_SAFETY
        return rounded, residual, floor, terms

    def evaluate_raw(self, instance: ProblemInstance) -> AnalyticResult:
        """Evaluate the sum regardless of divisibility."""
        started = time.perf_counter()
        tolerance = self.config.rounding_tolerance
        value, residual, floor, terms = self._evaluate(instance, DOUBLE)
        backend_name, digits = DOUBLE.name, DOUBLE.digits
        if residual >= tolerance or floor >= tolerance:
            digits = max(self.config.high_precision_dps, math.ceil(log10_magnitude(value)) + self.config.precision_headroom)
            logger.warning(
                "Escalating analytic sum to high precision",
                instance=str(instance),
                residual=residual,
                floor=floor,
                dps=digits,
            )
            backend = MultiPrecisionBackend(digits)
            value, residual, floor, terms = self._evaluate(instance, backend)
            backend_name = backend.name
            if floor >= tolerance or residual >= tolerance:
                logger.error("Analytic sum cannot be certified", instance=str(instance), residual=residual, floor=floor, dps=digits)
                raise PrecisionExceeded(
                    f"{instance}: residual {residual:.3e} with precision floor {floor:.3e} "
                    f"does not meet tolerance {tolerance:.3e} at {digits} digits",
                    residual=residual,
                    digits=digits,
                )
        millis = (time.perf_counter() - started) * 1000.0
        return AnalyticResult(value=value, residual=residual, terms=terms, backend=backend_name, digits=digits, millis=millis)

    def verlinde_analytic(self, instance: ProblemInstance) -> AnalyticResult:
        """
        D_g(r, d, omega) from the closed formula

        Args:
            instance: validated problem instance

        Returns:
            AnalyticResult with the certified integer; 0 on non-divisible data
        """
        if not divisible(instance):
            if self.config.verify_vanishing:
                raw = self.evaluate_raw(instance)
                if raw.value != 0:
                    logger.error("Raw sum does not vanish on non-divisible data", instance=str(instance), value=raw.value)
                    raise EngineMismatch(
                        f"{instance}: raw analytic sum is {raw.value} on non-divisible data",
                        analytic=raw.value,
                        recursive=0,
                    )
                return AnalyticResult(value=0, residual=raw.residual, terms=raw.terms, backend=raw.backend, digits=raw.digits)
            return AnalyticResult(value=0)

        result = self.evaluate_raw(instance)
        logger.info(
            "Analytic sum evaluated",
            instance=str(instance),
            value=str(result.value),
            terms=result.terms,
            backend=result.backend,
        )
        return result

    def value(self, instance: ProblemInstance) -> int:
        return self.verlinde_analytic(instance).value


def verlinde_analytic(instance: ProblemInstance, config: Optional[EngineConfig] = None) -> AnalyticResult:
    """Module-level convenience wrapper around AnalyticEngine."""
    return AnalyticEngine(config).verlinde_analytic(instance)

