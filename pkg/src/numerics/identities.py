"""
Character-sum identities over P_k and W_k at a fixed evaluation point.

    sumP:  sum_{mu in P_k} S_mu S_mu* = zeta^(k|v|) k N^(r-1) / |Delta|^2
    sumW:  sum_{lam in W_k} S_lam S_lam* = zeta^(k|v|) r N^(r-1) / |Delta|^2
    orth:  sum_{lam in W_k} e(-|lam||v| - |lam*||v'|) S_lam(v) S_lam*(v') = 0 for v != v'

where S_mu* is the Schur polynomial of the (unnormalized) dual weight and
e(x) = exp(2 pi i x / (rN)).
"""

from enum import Enum
from typing import Any, Optional, Tuple

import structlog

from src.config import DEFAULT_ENGINE_CONFIG, EngineConfig
from src.errors import PreconditionError
from src.numerics.roots import DOUBLE, Backend, EvalPoint
from src.numerics.schur import schur_values, vandermonde
from src.weights.partitions import WeightSet, dual, enumerate_weights

logger = structlog.get_logger(__name__)


class IdentityKind(str, Enum):
    SUM_P = "sumP"
    SUM_W = "sumW"
    ORTH = "orth"


def sine_product(point: EvalPoint, backend: Backend = DOUBLE) -> Any:
    """prod_{i<j} (2 sin(pi (v_i - v_j) / N))^2."""
    result = backend.from_fraction(1, 1)
    v = point.v
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            s = 2 * backend.sin_pi(v[i] - v[j], point.order)
            result = result * s * s
    return result


def delta_norm(point: EvalPoint, backend: Backend = DOUBLE) -> Tuple[Any, Any]:
    """
    Delta(v) = prod_{i<j} (zeta^v_i - zeta^v_j) and its squared modulus as a sine product

    Returns:
        (Delta, prod (2 sin pi (v_i - v_j) / N)^2)
    """
    with backend.precision():
        return vandermonde(point, backend), sine_product(point, backend)


def identity_residual(
    kind: IdentityKind,
    rank: int,
    level: int,
    point: EvalPoint,
    other: Optional[EvalPoint] = None,
    backend: Backend = DOUBLE,
    config: EngineConfig = DEFAULT_ENGINE_CONFIG,
) -> float:
    """
    Absolute residual |LHS - RHS| of a character identity by direct summation

    Args:
        kind: sumP, sumW or orth
        rank: r
        level: k
        point: evaluation point v
        other: second evaluation point v' (orth only, must differ from v)

    Returns:
        The residual as a float
    """
    kind = IdentityKind(kind)
    order = rank + level
    if point.rank != rank or point.order != order:
        raise PreconditionError(f"Evaluation point {point.v} does not belong to r={rank}, k={level}")

    with backend.precision():
        if kind is IdentityKind.ORTH:
            if other is None or other.v == point.v:
                raise PreconditionError("Orthogonality needs two distinct evaluation points")
            weights = enumerate_weights(rank, level, WeightSet.W)
            duals = [dual(w, level) for w in weights]
            left = schur_values(weights, point, backend, config.max_condition)
            right = schur_values(duals, other, backend, config.max_condition)
            total = backend.zero
            for w, w_dual in zip(weights, duals):
                exponent = -w.size * point.total - w_dual.size * other.total
                total += backend.root(rank * order, exponent) * left[w] * right[w_dual]
            residual = float(backend.abs(total))
        else:
            kind_set = WeightSet.P if kind is IdentityKind.SUM_P else WeightSet.W
            weights = enumerate_weights(rank, level, kind_set)
            duals = [dual(w, level) for w in weights]
            values = schur_values(weights + duals, point, backend, config.max_condition)
            total = backend.zero
            for w, w_dual in zip(weights, duals):
                total += values[w] * values[w_dual]
            multiplier = level if kind is IdentityKind.SUM_P else rank
            _, norm = delta_norm(point, backend)
            expected = backend.root(order, level * point.total) * multiplier * order ** (rank - 1) / norm
            residual = float(backend.abs(total - expected))

    logger.debug("Identity residual", kind=kind.value, rank=rank, level=level, v=point.v, residual=residual)
    return residual
