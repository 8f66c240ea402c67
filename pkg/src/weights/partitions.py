"""
Partitions of length r: the weights carried by marked points.

A partition is stored dense with exactly r entries. Two partitions are
equivalent when they differ by a constant vector; every API boundary works
with the normalized representative (last entry 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import List, Optional, Sequence, Tuple

from src.errors import InvalidWeightError


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing vector of nonnegative integers."""

    entries: Tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        if not entries:
            raise InvalidWeightError("A partition needs at least one entry")
        if entries[-1] < 0:
            raise InvalidWeightError(f"Negative entry in partition {entries}")
        for i in range(len(entries) - 1):
            if entries[i] < entries[i + 1]:
                raise InvalidWeightError(f"Partition {entries} is not weakly decreasing")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, *entries: int) -> "Partition":
        return cls(tuple(entries))

    @classmethod
    def zero(cls, rank: int) -> "Partition":
        return cls((0,) * rank)

    @classmethod
    def fundamental(cls, s: int, rank: int) -> "Partition":
        """omega_s = (1,...,1,0,...,0) with s ones."""
        if not 0 <= s <= rank:
            raise InvalidWeightError(f"Fundamental weight index {s} out of range for rank {rank}")
        return cls((1,) * s + (0,) * (rank - s))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse the comma-separated form, e.g. "3,1,0"."""
        try:
            values = tuple(int(part) for part in text.strip().split(","))
        except ValueError as e:
            raise InvalidWeightError(f"Cannot parse partition {text!r}: {e}") from e
        return cls(values)

    @property
    def rank(self) -> int:
        return len(self.entries)

    @property
    def size(self) -> int:
        """|lambda|, the number of boxes."""
        return sum(self.entries)

    @property
    def first(self) -> int:
        return self.entries[0]

    @property
    def last(self) -> int:
        return self.entries[-1]

    def is_normalized(self) -> bool:
        return self.entries[-1] == 0

    def within_level(self, level: int) -> bool:
        return self.entries[0] - self.entries[-1] <= level

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: int) -> int:
        return self.entries[index]


def normalize(weight: Partition) -> Partition:
    """Subtract the last entry from every entry."""
    shift = weight.entries[-1]
    if shift == 0:
        return weight
    return Partition(tuple(e - shift for e in weight.entries))


def dual(weight: Partition, level: int) -> Partition:
    """
    Dual weight (k - lambda_r, ..., k - lambda_1)

    Raises:
        InvalidWeightError: if an entry exceeds the level
    """
    if weight.entries[0] > level:
        raise InvalidWeightError(f"Partition {weight} exceeds level {level}")
    return Partition(tuple(level - e for e in reversed(weight.entries)))


def equivalent(left: Partition, right: Partition) -> bool:
    """True iff the two partitions differ by a constant vector."""
    if left.rank != right.rank:
        raise InvalidWeightError(f"Rank mismatch: {left.rank} vs {right.rank}")
    shift = left.entries[0] - right.entries[0]
    return all(a - b == shift for a, b in zip(left.entries, right.entries))


def check_weight(weight: Partition, rank: int, level: int) -> Partition:
    """Validate rank and level of a weight and return its normalized form."""
    if weight.rank != rank:
        raise InvalidWeightError(f"Partition {weight} has rank {weight.rank}, expected {rank}")
    if not weight.within_level(level):
        raise InvalidWeightError(f"Partition {weight} exceeds level {level}")
    return normalize(weight)


def stats(weight: Partition) -> Tuple[int, int]:
    """
    Induction statistics of a normalized partition

    Returns:
        (s, m) where s is the last row index (1-based) followed by a strict
        descent and m the number of boxes in the first s rows; (0, 0) for
        constant partitions.
    """
    entries = weight.entries
    s = 0
    for i in range(len(entries) - 1):
        if entries[i] > entries[i + 1]:
            s = i + 1
    return s, sum(entries[:s])


def fundamental_index(weight: Partition) -> Optional[int]:
    """s if the partition is exactly omega_s with 1 <= s < r, else None."""
    s, m = stats(weight)
    if s > 0 and m == s and weight.entries[-1] == 0:
        return s
    return None


class WeightSet(str, Enum):
    """Index sets of weights at level k."""

    P = "P"          # 0 <= mu_r <= ... <= mu_1 < k
    W = "W"          # 0 = lambda_r <= ... <= lambda_1 <= k
    W_RES = "W_res"  # W restricted to |lambda| = rho (mod r)


@lru_cache(maxsize=256)
def _strict_level_weights(rank: int, level: int) -> Tuple[Partition, ...]:
    weights = [
        Partition(tuple(sorted(values, reverse=True)))
        for values in combinations_with_replacement(range(level), rank)
    ]
    return tuple(sorted(weights))


@lru_cache(maxsize=256)
def _normalized_weights(rank: int, level: int) -> Tuple[Partition, ...]:
    weights = [
        Partition(tuple(sorted(values, reverse=True)) + (0,))
        for values in combinations_with_replacement(range(level + 1), rank - 1)
    ]
    return tuple(sorted(weights))


def enumerate_weights(rank: int, level: int, kind: WeightSet = WeightSet.W, residue: Optional[int] = None) -> List[Partition]:
    """
    Enumerate a weight index set in lexicographic order

    Args:
        rank: r >= 1
        level: k >= 1
        kind: P, W or W_res
        residue: rho in 0..r-1, required for W_res

    Returns:
        Materialized list of partitions
    """
    if rank < 1 or level < 1:
        raise InvalidWeightError(f"Rank and level must be positive, got r={rank}, k={level}")
    kind = WeightSet(kind)
    if kind is WeightSet.P:
        return list(_strict_level_weights(rank, level))
    if kind is WeightSet.W:
        return list(_normalized_weights(rank, level))
    if residue is None or not 0 <= residue < rank:
        raise InvalidWeightError(f"Residue {residue} out of range for rank {rank}")
    return [w for w in _normalized_weights(rank, level) if w.size % rank == residue]


def weight_count(rank: int, level: int, kind: WeightSet) -> int:
    """Closed-form sizes: |P_k| = C(k+r-1, r), |W_k| = C(k+r-1, r-1)."""
    if WeightSet(kind) is WeightSet.P:
        return comb(level + rank - 1, rank)
    if WeightSet(kind) is WeightSet.W:
        return comb(level + rank - 1, rank - 1)
    raise InvalidWeightError("Residue classes have no closed-form size")


def parse_weights(text: str) -> List[Partition]:
    """Parse "a,b,c;d,e,f" into a list of partitions (empty text gives [])."""
    text = text.strip()
    if not text:
        return []
    return [Partition.parse(chunk) for chunk in text.split(";") if chunk.strip()]


def format_weights(weights: Sequence[Partition]) -> str:
    return ";".join(str(w) for w in weights)
