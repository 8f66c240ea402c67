"""
Parabolic data of a marked point: flag type n and weights a.

The partition of a point repeats k - a_i exactly n_i times. Both languages
are accepted at the CLI boundary and converted here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import structlog

from src.errors import InvalidWeightError, PreconditionError
from src.weights.partitions import Partition, check_weight

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class ParabolicPoint:
    """Flag type n (positive, summing to r) and strictly increasing weights a."""

    flag_type: Tuple[int, ...]
    weights: Tuple[int, ...]

    def __post_init__(self):
        flag_type = tuple(int(n) for n in self.flag_type)
        weights = tuple(int(a) for a in self.weights)
        if not flag_type or len(flag_type) != len(weights):
            raise InvalidWeightError(f"Flag type {flag_type} and weights {weights} must have equal nonzero length")
        if any(n <= 0 for n in flag_type):
            raise InvalidWeightError(f"Flag type {flag_type} has a nonpositive block")
        if weights[0] < 0:
            raise InvalidWeightError(f"Weights {weights} start below zero")
        if any(weights[i] >= weights[i + 1] for i in range(len(weights) - 1)):
            raise InvalidWeightError(f"Weights {weights} are not strictly increasing")
        object.__setattr__(self, "flag_type", flag_type)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def parse(cls, text: str) -> "ParabolicPoint":
        """Parse "n=1,1,1;a=0,2,3"."""
        fields = {}
        for chunk in text.strip().split(";"):
            key, sep, value = chunk.strip().partition("=")
            if not sep or key.strip() not in ("n", "a"):
                raise InvalidWeightError(f"Cannot parse parabolic point {text!r}")
            try:
                fields[key.strip()] = tuple(int(v) for v in value.split(","))
            except ValueError as e:
                raise InvalidWeightError(f"Cannot parse parabolic point {text!r}: {e}") from e
        if set(fields) != {"n", "a"}:
            raise InvalidWeightError(f"Parabolic point {text!r} needs both n= and a=")
        return cls(fields["n"], fields["a"])

    @property
    def rank(self) -> int:
        return sum(self.flag_type)

    @property
    def length(self) -> int:
        """l, the number of gaps between consecutive weights."""
        return len(self.weights) - 1

    @property
    def gaps(self) -> Tuple[int, ...]:
        """d_i = a_{i+1} - a_i."""
        a = self.weights
        return tuple(a[i + 1] - a[i] for i in range(len(a) - 1))

    @property
    def partial_ranks(self) -> Tuple[int, ...]:
        """r_i = n_1 + ... + n_i for i = 1..l."""
        sums, total = [], 0
        for n in self.flag_type[:-1]:
            total += n
            sums.append(total)
        return tuple(sums)

    def shifted(self) -> "ParabolicPoint":
        """Same point with a_1 moved to 0 (the partition changes by a constant)."""
        a1 = self.weights[0]
        if a1 == 0:
            return self
        return ParabolicPoint(self.flag_type, tuple(a - a1 for a in self.weights))

    def __str__(self) -> str:
        n = ",".join(str(v) for v in self.flag_type)
        a = ",".join(str(v) for v in self.weights)
        return f"n={n};a={a}"


def _check_level(point: ParabolicPoint, level: int) -> None:
    if point.weights[-1] > level:
        raise InvalidWeightError(f"Point {point} has a weight above level {level}")


def omega_to_partition(point: ParabolicPoint, level: int) -> Partition:
    """Repeat k - a_i exactly n_i times."""
    _check_level(point, level)
    entries: List[int] = []
    for n, a in zip(point.flag_type, point.weights):
        entries.extend([level - a] * n)
    return Partition(tuple(entries))


def partition_to_omega(weight: Partition, level: int) -> ParabolicPoint:
    """Group equal entries into blocks; a_i = k - (block value)."""
    if weight.first > level:
        raise InvalidWeightError(f"Partition {weight} exceeds level {level}")
    flag_type: List[int] = []
    weights: List[int] = []
    previous = None
    for entry in weight.entries:
        if entry == previous:
            flag_type[-1] += 1
        else:
            flag_type.append(1)
            weights.append(level - entry)
            previous = entry
    return ParabolicPoint(tuple(flag_type), tuple(weights))


def nodal_point_data(mu: Partition, level: int) -> Tuple[ParabolicPoint, ParabolicPoint]:
    """
    Parabolic structures at the two preimages of a node

    Args:
        mu: weight in P_k (0 <= mu_r <= ... <= mu_1 < k)
        level: k

    Returns:
        (x_1, x_2): x_1 carries a partition equivalent to mu, x_2 carries dual(mu)
    """
    if mu.first >= level:
        raise PreconditionError(f"Nodal weight {mu} must have first entry below level {level}")
    rank = mu.rank
    cuts = [i for i in range(1, rank) if mu[i - 1] - mu[i] > 0]
    gaps = [mu[i - 1] - mu[i] for i in cuts]
    bounds = [0] + cuts + [rank]
    blocks = [bounds[j + 1] - bounds[j] for j in range(len(bounds) - 1)]

    first_weights = [mu.last]
    for d in gaps:
        first_weights.append(first_weights[-1] + d)
    second_weights = [mu.last]
    for d in reversed(gaps):
        second_weights.append(second_weights[-1] + d)

    first = ParabolicPoint(tuple(blocks), tuple(first_weights))
    second = ParabolicPoint(tuple(reversed(blocks)), tuple(second_weights))
    return first, second


def flag_sum(point: ParabolicPoint) -> int:
    """Sum of d_i(x) r_i(x) over the gaps of the point."""
    return sum(d * r for d, r in zip(point.gaps, point.partial_ranks))


def telescoping_holds(point: ParabolicPoint, level: int) -> bool:
    """Check sum d_i r_i == (a_{l+1} - k) r + |lambda_x| on one point."""
    weight = omega_to_partition(point, level)
    return flag_sum(point) == (point.weights[-1] - level) * point.rank + weight.size


def hecke_point(point: ParabolicPoint, level: int) -> Tuple[ParabolicPoint, int]:
    """
    Elementary Hecke transformation at a point

    The flag type rotates by one block and the weights are re-based at a_2.
    D_g(r, d, omega) equals D_g(r, d - n_1, omega') for the returned point.

    Returns:
        (transformed point, degree shift n_1)
    """
    _check_level(point.shifted(), level)
    if point.length < 1:
        raise PreconditionError(f"Hecke transformation needs at least two blocks, got {point}")
    p = point.shifted()
    n, a = p.flag_type, p.weights
    new_weights = [0] + [a_i - a[1] for a_i in a[2:]] + [level - a[1]]
    new_blocks = list(n[1:]) + [n[0]]
    # a_{l+1} = k collapses the last two blocks
    if len(new_weights) >= 2 and new_weights[-1] == new_weights[-2]:
        new_weights.pop()
        tail = new_blocks.pop()
        new_blocks[-1] += tail
    return ParabolicPoint(tuple(new_blocks), tuple(new_weights)), n[0]


def hecke_point_partial(point: ParabolicPoint, m: int, level: int) -> ParabolicPoint:
    """
    Partial Hecke transformation splitting m lines off the first block

    Requires a_{l+1} - a_1 < k and 1 <= m < n_1; D_g(r, d, omega) equals
    D_g(r, d - m, omega'') for the returned point.
    """
    p = point.shifted()
    if p.weights[-1] >= level:
        raise PreconditionError(f"Partial Hecke needs a_(l+1) < k, got {point} at level {level}")
    if not 1 <= m < p.flag_type[0]:
        raise PreconditionError(f"Partial Hecke needs 1 <= m < n_1, got m={m} for {point}")
    n, a = p.flag_type, p.weights
    new_blocks = (n[0] - m,) + n[1:] + (m,)
    new_weights = a + (level,)
    return ParabolicPoint(new_blocks, new_weights)


def parse_points(text: str, rank: int, level: int) -> List[Partition]:
    """
    Parse a list of points in either language

    Points are separated by ";". A point is either a partition "3,1,0" or a
    parabolic point "n=...;a=..." (whose two fields consume two chunks).
    Every point is validated against (rank, level) and normalized.
    """
    chunks = [c.strip() for c in text.split(";") if c.strip()]
    points: List[Partition] = []
    i = 0
    while i < len(chunks):
        chunk = chunks[i]
        if chunk.startswith(("n=", "a=")):
            if i + 1 >= len(chunks):
                raise InvalidWeightError(f"Incomplete parabolic point in {text!r}")
            weight = omega_to_partition(ParabolicPoint.parse(f"{chunk};{chunks[i + 1]}"), level)
            i += 2
        else:
            weight = Partition.parse(chunk)
            i += 1
        points.append(check_weight(weight, rank, level))
    logger.debug("Parsed points", count=len(points), rank=rank, level=level)
    return points
