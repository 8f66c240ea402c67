"""
Roots of unity, evaluation points and the two arithmetic backends.

DoubleBackend works in numpy complex128; MultiPrecisionBackend works in
mpmath at a fixed number of decimal digits. Both read roots of unity from
precomputed tables so that every power of zeta is taken from the same value.
"""

from contextlib import nullcontext
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Any, ContextManager, List, Sequence, Tuple

import mpmath
import numpy as np
from mpmath import mp

from src.config import DOUBLE_DIGITS
from src.errors import InvalidInstanceError, PrecisionExceeded


@dataclass(frozen=True, order=True)
class EvalPoint:
    """Strictly decreasing v with v_r = 0 and v_1 < N = r + k."""

    v: Tuple[int, ...]
    order: int

    def __post_init__(self):
        v = tuple(int(x) for x in self.v)
        if not v or v[-1] != 0:
            raise InvalidInstanceError(f"Evaluation point {v} must end with 0")
        if any(v[i] <= v[i + 1] for i in range(len(v) - 1)):
            raise InvalidInstanceError(f"Evaluation point {v} is not strictly decreasing")
        if v[0] >= self.order:
            raise InvalidInstanceError(f"Evaluation point {v} exceeds order {self.order}")
        object.__setattr__(self, "v", v)

    @property
    def rank(self) -> int:
        return len(self.v)

    @property
    def total(self) -> int:
        return sum(self.v)


@lru_cache(maxsize=64)
def _eval_points(rank: int, level: int) -> Tuple[EvalPoint, ...]:
    order = rank + level
    points = [
        EvalPoint(tuple(reversed(combo)) + (0,), order)
        for combo in combinations(range(1, order), rank - 1)
    ]
    return tuple(sorted(points))


def eval_points(rank: int, level: int) -> List[EvalPoint]:
    """All C(r+k-1, r-1) evaluation points in lexicographic order of v."""
    if rank < 1 or level < 1:
        raise InvalidInstanceError(f"Rank and level must be positive, got r={rank}, k={level}")
    return list(_eval_points(rank, level))


@lru_cache(maxsize=256)
def _double_roots(order: int) -> np.ndarray:
    table = np.exp(2j * np.pi * np.arange(order) / order)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=256)
def _mp_roots(order: int, dps: int) -> Tuple[Any, ...]:
    with mp.workdps(dps):
        return tuple(mp.expjpi(mp.mpf(2 * j) / order) for j in range(order))


class DoubleBackend:
    """complex128 arithmetic, about 15 trusted digits."""

    name = "double"
    digits = DOUBLE_DIGITS

    def precision(self) -> ContextManager:
        return nullcontext()

    def root(self, order: int, exponent: int) -> complex:
        return complex(_double_roots(order)[exponent % order])

    def det(self, rows: Sequence[Sequence[Any]]) -> complex:
        return complex(np.linalg.det(np.array(rows, dtype=np.complex128)))

    def sin_pi(self, numerator: int, denominator: int) -> float:
        return float(np.sin(np.pi * numerator / denominator))

    def from_fraction(self, numerator: int, denominator: int) -> float:
        return numerator / denominator

    def to_complex(self, value: Any) -> complex:
        return complex(value)

    def nearest_integer(self, value: Any) -> int:
        return int(round(complex(value).real))

    def abs(self, value: Any) -> float:
        return abs(value)

    @property
    def zero(self) -> complex:
        return 0j

    @property
    def one(self) -> complex:
        return 1 + 0j


class MultiPrecisionBackend:
    """mpmath arithmetic at a fixed number of decimal digits."""

    name = "mpmath"

    def __init__(self, dps: int):
        self.dps = dps
        self.digits = dps

    def precision(self) -> ContextManager:
        return mp.workdps(self.dps)

    def root(self, order: int, exponent: int) -> Any:
        return _mp_roots(order, self.dps)[exponent % order]

    def det(self, rows: Sequence[Sequence[Any]]) -> Any:
        if len(rows) == 1:
            return mp.mpc(rows[0][0])
        return mp.det(mp.matrix([list(row) for row in rows]))

    def sin_pi(self, numerator: int, denominator: int) -> Any:
        return mp.sinpi(mp.mpf(numerator) / denominator)

    def from_fraction(self, numerator: int, denominator: int) -> Any:
        return mp.mpf(numerator) / denominator

    def to_complex(self, value: Any) -> complex:
        return complex(value)

    def nearest_integer(self, value: Any) -> int:
        return int(mp.nint(mp.re(value)))

    def abs(self, value: Any) -> Any:
        return mp.fabs(value)

    @property
    def zero(self) -> Any:
        return mp.mpc(0)

    @property
    def one(self) -> Any:
        return mp.mpc(1)


Backend = Any
DOUBLE = DoubleBackend()


def root_power(order: int, exponent: int, backend: Backend = DOUBLE) -> Any:
    """exp(2 pi i e / N), periodic in e mod N."""
    if order < 1:
        raise InvalidInstanceError(f"Root order must be positive, got {order}")
    return backend.root(order, exponent)


def condition_number(rows: Sequence[Sequence[Any]]) -> float:
    """2-norm condition estimate, always taken in double precision."""
    matrix = np.array([[complex(x) for x in row] for row in rows], dtype=np.complex128)
    return float(np.linalg.cond(matrix))


def check_finite(value: Any, what: str) -> None:
    """Raise when a NaN or infinity escapes an evaluation."""
    z = complex(value)
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise PrecisionExceeded(f"Non-finite value in {what}: {z}")


def log10_magnitude(value: Any) -> float:
    """log10 of |value|, 0 for values below 1."""
    magnitude = float(abs(mpmath.mpmathify(value)))
    return float(np.log10(magnitude)) if magnitude > 1 else 0.0
