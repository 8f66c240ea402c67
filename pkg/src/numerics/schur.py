"""
Schur polynomials at roots of unity.

Two independent evaluations:
  - bialternant: det[z_j^(lambda_i + r - i)] / det[z_j^(r - i)]
  - tableau sum: monomials over semistandard tableaux via the branching rule
"""

from functools import lru_cache
from itertools import product
from typing import Any, Dict, List, Sequence, Tuple

import structlog

from src.config import DEFAULT_ENGINE_CONFIG
from src.errors import InvalidWeightError, PrecisionExceeded
from src.numerics.roots import DOUBLE, Backend, EvalPoint, condition_number
from src.weights.partitions import Partition

logger = structlog.get_logger(__name__)


def _power_rows(exponents: Sequence[int], point: EvalPoint, backend: Backend) -> List[List[Any]]:
    return [[backend.root(point.order, e * v) for v in point.v] for e in exponents]


def vandermonde(point: EvalPoint, backend: Backend = DOUBLE) -> Any:
    """det[zeta^(v_j (r - i))] = prod_{i<j} (zeta^v_i - zeta^v_j)."""
    r = point.rank
    return backend.det(_power_rows(range(r - 1, -1, -1), point, backend))


def schur_values(
    weights: Sequence[Partition],
    point: EvalPoint,
    backend: Backend = DOUBLE,
    max_condition: float = DEFAULT_ENGINE_CONFIG.max_condition,
) -> Dict[Partition, Any]:
    """
    Evaluate several Schur polynomials at one point, sharing the denominator

    Raises:
        PrecisionExceeded: if the Vandermonde matrix is too ill-conditioned
    """
    r = point.rank
    denominator_rows = _power_rows(range(r - 1, -1, -1), point, backend)
    cond = condition_number(denominator_rows)
    if cond > max_condition:
        raise PrecisionExceeded(f"Vandermonde condition {cond:.3e} exceeds budget {max_condition:.3e} at v={point.v}")
    denominator = backend.det(denominator_rows)

    values: Dict[Partition, Any] = {}
    for weight in weights:
        if weight in values:
            continue
        if weight.rank != r:
            raise InvalidWeightError(f"Partition {weight} has rank {weight.rank}, point has rank {r}")
        if weight.size == 0:
            values[weight] = backend.one
            continue
        exponents = [weight[i] + r - 1 - i for i in range(r)]
        values[weight] = backend.det(_power_rows(exponents, point, backend)) / denominator
    return values


def schur_at(
    weight: Partition,
    point: EvalPoint,
    backend: Backend = DOUBLE,
    max_condition: float = DEFAULT_ENGINE_CONFIG.max_condition,
) -> Any:
    """S_lambda(zeta^v_1, ..., zeta^v_r) with zeta = exp(2 pi i / N)."""
    return schur_values([weight], point, backend, max_condition)[weight]


@lru_cache(maxsize=4096)
def _interlacing(shape: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
    """Partitions mu of length n-1 with lambda_1 >= mu_1 >= lambda_2 >= ... >= mu_{n-1} >= lambda_n."""
    ranges = [range(shape[i + 1], shape[i] + 1) for i in range(len(shape) - 1)]
    return tuple(product(*ranges))


def schur_tableau_sum(weight: Partition, variables: Sequence[complex]) -> complex:
    """
    S_lambda(z_1, ..., z_n) as a monomial sum over semistandard tableaux

    The branching rule strips the boxes filled with n, which form a
    horizontal strip: S_lambda(z_1..z_n) = sum_mu z_n^(|lambda|-|mu|) S_mu(z_1..z_{n-1}).
    """
    if weight.rank != len(variables):
        raise InvalidWeightError(f"Partition {weight} needs {weight.rank} variables, got {len(variables)}")
    z = [complex(x) for x in variables]
    memo: Dict[Tuple[int, ...], complex] = {}

    def branch(shape: Tuple[int, ...]) -> complex:
        n = len(shape)
        if n == 1:
            return z[0] ** shape[0]
        if shape in memo:
            return memo[shape]
        total = 0j
        size = sum(shape)
        for mu in _interlacing(shape):
            total += z[n - 1] ** (size - sum(mu)) * branch(mu)
        memo[shape] = total
        return total

    return branch(weight.entries)
