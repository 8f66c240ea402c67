"""
Problem instances (g, r, d, k, points) and the integrality of the theta level.
"""

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, Dict, Iterable, Sequence, Tuple, Union

from src.errors import InvalidInstanceError
from src.weights.parabolic import ParabolicPoint, flag_sum, omega_to_partition, partition_to_omega
from src.weights.partitions import Partition, check_weight, format_weights


PointLike = Union[Partition, ParabolicPoint]


@dataclass(frozen=True)
class ProblemInstance:
    """Full input of D_g(r, d, omega); points are normalized partitions."""

    genus: int
    rank: int
    degree: int
    level: int
    points: Tuple[Partition, ...] = ()

    def __post_init__(self):
        if self.genus < 0:
            raise InvalidInstanceError(f"Genus must be nonnegative, got {self.genus}")
        if self.rank < 1:
            raise InvalidInstanceError(f"Rank must be positive, got {self.rank}")
        if self.level < 1:
            raise InvalidInstanceError(f"Level must be positive, got {self.level}")
        points = tuple(self.points)
        for point in points:
            if not isinstance(point, Partition):
                raise InvalidInstanceError(f"Point {point!r} is not a partition; use ProblemInstance.build")
            if check_weight(point, self.rank, self.level) != point:
                raise InvalidInstanceError(f"Point {point} is not normalized")
        object.__setattr__(self, "points", points)

    @classmethod
    def build(cls, genus: int, rank: int, degree: int, level: int, points: Iterable[PointLike] = ()) -> "ProblemInstance":
        """Validate and normalize raw points (partitions or parabolic points)."""
        normalized = []
        for point in points:
            if isinstance(point, ParabolicPoint):
                point = omega_to_partition(point, level)
            normalized.append(check_weight(point, rank, level))
        return cls(genus, rank, degree, level, tuple(normalized))

    @property
    def euler(self) -> int:
        """chi = d + r(1 - g)."""
        return self.degree + self.rank * (1 - self.genus)

    @property
    def total_size(self) -> int:
        return sum(p.size for p in self.points)

    def canonical(self) -> "ProblemInstance":
        """Same instance with points sorted; D_g does not depend on their order."""
        return replace(self, points=tuple(sorted(self.points)))

    def key(self) -> Tuple[int, int, int, int, Tuple[Tuple[int, ...], ...]]:
        return (self.genus, self.rank, self.degree, self.level, tuple(p.entries for p in sorted(self.points)))

    def with_points(self, points: Sequence[Partition], **changes: Any) -> "ProblemInstance":
        return replace(self, points=tuple(points), **changes)

    @property
    def weights_text(self) -> str:
        return format_weights(self.points)

    def describe(self) -> Dict[str, Any]:
        return {
            "genus": self.genus,
            "rank": self.rank,
            "degree": self.degree,
            "level": self.level,
            "weights": self.weights_text,
        }

    def __str__(self) -> str:
        return f"D_{self.genus}(r={self.rank}, d={self.degree}, k={self.level}, [{self.weights_text}])"


def level_ell_raw(genus: int, rank: int, degree: int, level: int, points: Sequence[ParabolicPoint]) -> Fraction:
    """ell = (k chi - sum_x sum_i d_i(x) r_i(x)) / r, evaluated literally."""
    chi = degree + rank * (1 - genus)
    return Fraction(level * chi - sum(flag_sum(p) for p in points), rank)


def level_ell(instance: ProblemInstance) -> Fraction:
    """ell of an instance, with each point written in parabolic form (a_{l+1} = k)."""
    points = [partition_to_omega(p, instance.level) for p in instance.points]
    return level_ell_raw(instance.genus, instance.rank, instance.degree, instance.level, points)


def divisible(instance: ProblemInstance) -> bool:
    """k d == sum |lambda_x| (mod r), equivalent to ell being an integer for normalized points."""
    return (instance.level * instance.degree - instance.total_size) % instance.rank == 0
