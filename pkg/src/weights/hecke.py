"""
Hecke transformations of partitions and the map phi used in the split recurrence.

H^m moves the last m rows of a diagram to the top with k added, then
normalizes; it shifts the degree by m without changing D_g:

    D_g(r, d, {..., lambda_z}) = D_g(r, d + m, {..., H^m(lambda_z)})
"""

from src.errors import InvalidWeightError, PreconditionError
from src.weights.partitions import Partition, normalize


def _check_hecke_args(weight: Partition, m: int, level: int) -> None:
    if not 1 <= m <= weight.rank:
        raise PreconditionError(f"Hecke index m={m} out of range 1..{weight.rank}")
    if not weight.within_level(level):
        raise InvalidWeightError(f"Partition {weight} exceeds level {level}")


def hecke(mu: Partition, m: int, level: int) -> Partition:
    """
    H^m(mu) in closed form

    Args:
        mu: partition with mu_1 - mu_r <= k
        m: 1 <= m <= r
        level: k

    Returns:
        Normalized partition; H^r(mu) is normalize(mu)
    """
    _check_hecke_args(mu, m, level)
    r = mu.rank
    if m == r:
        return normalize(mu)
    e = mu.entries
    pivot = e[r - m - 1]
    head = tuple(level - pivot + e[r - m + j - 1] for j in range(1, m + 1))
    tail = tuple(e[j - m - 1] - pivot for j in range(m + 1, r + 1))
    return Partition(head + tail)


def hecke_inverse(weight: Partition, m: int, level: int) -> Partition:
    """Inverse of H^m up to equivalence: the first m rows drop by k and move to the bottom."""
    _check_hecke_args(weight, m, level)
    r = weight.rank
    if m == r:
        return normalize(weight)
    e = weight.entries
    base = e[m - 1]
    tail = tuple(e[j] - base + level for j in range(m, r))
    head = tuple(e[j] - base for j in range(m))
    return Partition(tail + head)


def hecke_size(mu: Partition, m: int, level: int) -> int:
    """|H^m(mu)| = k m - r mu_{r-m} + |mu| for m < r."""
    return level * m - mu.rank * mu[mu.rank - m - 1] + mu.size


def phi(mu: Partition, offset: int, rank: int, level: int) -> Partition:
    """
    Bijection from Q_k = {mu in P_k : k | A + |mu|} onto {lambda in W_k : r | A + |lambda|}

    Args:
        mu: weight in P_k
        offset: the integer A (k times the first block degree)
        rank: r
        level: k

    Returns:
        H^{r - i}(mu) with i = ((A + |mu|) / k - r) mod r
    """
    if mu.rank != rank:
        raise InvalidWeightError(f"Partition {mu} has rank {mu.rank}, expected {rank}")
    if mu.first >= level:
        raise PreconditionError(f"Weight {mu} is not in P_k for k={level}")
    if (offset + mu.size) % level != 0:
        raise PreconditionError(f"k={level} does not divide A + |mu| = {offset + mu.size}")
    first_degree = (offset + mu.size) // level - rank
    i = first_degree % rank
    return hecke(mu, rank - i, level)
