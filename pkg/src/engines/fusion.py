"""
Integer-only fusion coefficients of sl(r) at level k.

fusion_coeff(a, b, c) is the genus-zero three-point number D_0(r, 0, {a, b, c}).
It is computed from the vacuum and two-point rules, the Pieri membership
rule for a fundamental weight, and an induction on m(lambda) - s(lambda)
that peels omega_s off the pivot weight and balances two factorizations of
a four-point number.
"""

import threading
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from src.config import DEFAULT_ENGINE_CONFIG, EngineConfig
from src.errors import InvalidWeightError, PreconditionError, RecursionBudgetExceeded
from src.weights.partitions import (
    Partition,
    WeightSet,
    check_weight,
    dual,
    enumerate_weights,
    equivalent,
    fundamental_index,
    normalize,
    stats,
)

logger = structlog.get_logger(__name__)

Triple = Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]


@dataclass(frozen=True)
class FusionKey:
    """Canonical key: (r, k) and three normalized partitions in sorted order."""

    rank: int
    level: int
    triple: Tuple[Partition, Partition, Partition]

    @classmethod
    def of(cls, rank: int, level: int, weights: Sequence[Partition]) -> "FusionKey":
        if len(weights) != 3:
            raise PreconditionError(f"A fusion key needs three weights, got {len(weights)}")
        normalized = sorted(check_weight(w, rank, level) for w in weights)
        return cls(rank, level, tuple(normalized))

    @classmethod
    def parse(cls, text: str, rank: int, level: int) -> "FusionKey":
        """Parse the file form "a=2,0|b=1,0|c=1,0"."""
        parts = text.split("|")
        labels = [p.partition("=")[0] for p in parts]
        if labels != ["a", "b", "c"]:
            raise InvalidWeightError(f"Malformed fusion key {text!r}")
        weights = [Partition.parse(p.partition("=")[2]) for p in parts]
        key = cls.of(rank, level, weights)
        if key.to_string() != text:
            raise InvalidWeightError(f"Fusion key {text!r} is not in canonical form")
        return key

    @property
    def entries(self) -> Triple:
        return tuple(w.entries for w in self.triple)

    @property
    def total_size(self) -> int:
        return sum(w.size for w in self.triple)

    def to_string(self) -> str:
        a, b, c = self.triple
        return f"a={a}|b={b}|c={c}"


class FusionEngine:
    """
    Fusion coefficients at fixed (r, k) with a thread-safe memo table
    """

    def __init__(self, rank: int, level: int, config: Optional[EngineConfig] = None):
        if rank < 1 or level < 1:
            raise PreconditionError(f"Rank and level must be positive, got r={rank}, k={level}")
        self.rank = rank
        self.level = level
        self.config = config or DEFAULT_ENGINE_CONFIG
        self._memo: Dict[Triple, int] = {}
        self._lock = threading.Lock()
        self.hits = 0

    def __len__(self) -> int:
        return len(self._memo)

    # Pieri sets

    def _check_pieri(self, weight: Partition, s: int) -> None:
        if not 1 <= s <= self.rank - 1:
            raise PreconditionError(f"Pieri index s={s} out of range 1..{self.rank - 1}")
        if weight.rank != self.rank or not weight.is_normalized() or weight.first > self.level:
            raise InvalidWeightError(f"Partition {weight} is not a normalized level-{self.level} weight of rank {self.rank}")

    def pieri_raw(self, weight: Partition, s: int) -> List[Partition]:
        """Y(lambda, omega_s): add s boxes to lambda, no two in the same row."""
        self._check_pieri(weight, s)
        results = []
        for rows in combinations(range(self.rank), s):
            entries = list(weight.entries)
            for i in rows:
                entries[i] += 1
            if all(entries[i] >= entries[i + 1] for i in range(self.rank - 1)):
                results.append(Partition(tuple(entries)))
        return results

    def pieri_set(self, weight: Partition, s: int) -> List[Partition]:
        """Normalized Pieri set with results beyond the level discarded."""
        kept = {normalize(mu) for mu in self.pieri_raw(weight, s)}
        return sorted(mu for mu in kept if mu.first <= self.level)

    # Base cases

    def fusion_base3(self, s: int, weight_y: Partition, weight_z: Partition) -> int:
        """1 iff dual(lambda_z) is equivalent to an element of Y(lambda_y, omega_s)."""
        target = dual(weight_z, self.level)
        return int(any(equivalent(target, mu) for mu in self.pieri_raw(weight_y, s)))

    def _two_point(self, first: Partition, second: Partition) -> int:
        return int(equivalent(first, dual(second, self.level)))

    # Induction

    def fusion_coeff(self, first: Partition, second: Partition, third: Partition) -> int:
        """
        D_0(r, 0, {first, second, third})

        Args:
            first, second, third: normalized weights with entries <= k

        Returns:
            The fusion coefficient, a nonnegative integer
        """
        key = FusionKey.of(self.rank, self.level, (first, second, third))
        return self._coeff(key.triple, 0)

    def _coeff(self, triple: Sequence[Partition], depth: int) -> int:
        if depth > self.config.recursion_limit:
            logger.error("Fusion recursion budget exceeded", rank=self.rank, level=self.level, depth=depth)
            raise RecursionBudgetExceeded(f"Fusion induction exceeded depth {self.config.recursion_limit} at {triple}")

        triple = sorted(triple)
        memo_key: Triple = tuple(w.entries for w in triple)
        cached = self._memo.get(memo_key)
        if cached is not None:
            self.hits += 1
            return cached

        value = self._compute(triple, depth)
        with self._lock:
            self._memo[memo_key] = value
        logger.debug("Fusion coefficient computed", triple=[str(w) for w in triple], value=value, depth=depth)
        return value

    def _compute(self, triple: List[Partition], depth: int) -> int:
        r, k = self.rank, self.level
        if sum(w.size for w in triple) % r != 0:
            return 0

        for i, weight in enumerate(triple):
            if weight.size == 0:
                others = triple[:i] + triple[i + 1:]
                return self._two_point(others[0], others[1])

        for i, weight in enumerate(triple):
            s = fundamental_index(weight)
            if s is not None:
                others = triple[:i] + triple[i + 1:]
                return self.fusion_base3(s, others[0], others[1])

        pivot_index = min(range(3), key=lambda i: (stats(triple[i])[1] - stats(triple[i])[0], triple[i]))
        pivot = triple[pivot_index]
        weight_y, weight_z = triple[:pivot_index] + triple[pivot_index + 1:]
        s, _ = stats(pivot)
        reduced = Partition(tuple(e - 1 if i < s else e for i, e in enumerate(pivot.entries)))

        # {omega_s, lambda_y} | {lambda', lambda_z}
        residue = (-(s + weight_y.size)) % r
        four_point = 0
        for nu in enumerate_weights(r, k, WeightSet.W_RES, residue):
            if self.fusion_base3(s, weight_y, nu):
                four_point += self._coeff((reduced, weight_z, normalize(dual(nu, k))), depth + 1)

        # {omega_s, lambda'} expanded through the Pieri rule
        others = 0
        for mu in self.pieri_set(reduced, s):
            if mu != pivot:
                others += self._coeff((mu, weight_y, weight_z), depth + 1)
        return four_point - others

    # Tabulation

    def four_point(self, pair: Sequence[Partition], rest: Sequence[Partition]) -> int:
        """D_0(r, 0, pair + rest) factored through the split pair | rest."""
        if len(pair) != 2 or len(rest) != 2:
            raise PreconditionError("A four-point split needs two weights on each side")
        residue = (-sum(w.size for w in pair)) % self.rank
        total = 0
        for nu in enumerate_weights(self.rank, self.level, WeightSet.W_RES, residue):
            left = self.fusion_coeff(pair[0], pair[1], nu)
            if left:
                total += left * self.fusion_coeff(rest[0], rest[1], normalize(dual(nu, self.level)))
        return total

    def fusion_table(self) -> int:
        """Fill the memo for every sorted triple of W_k; returns the table size."""
        weights = enumerate_weights(self.rank, self.level, WeightSet.W)
        for triple in combinations_with_replacement(weights, 3):
            self.fusion_coeff(*triple)
        logger.info("Fusion table filled", rank=self.rank, level=self.level, entries=len(self._memo))
        return len(self._memo)

    def fusion_matrix(self, weight: Partition) -> np.ndarray:
        """N_lambda with entry (mu, nu) = fusion_coeff(lambda, mu, dual(nu)), indexed by W_k."""
        weights = enumerate_weights(self.rank, self.level, WeightSet.W)
        rows = [
            [self.fusion_coeff(weight, mu, normalize(dual(nu, self.level))) for nu in weights]
            for mu in weights
        ]
        return np.array(rows, dtype=object)

    # Memo import and export

    def export_entries(self) -> Dict[str, int]:
        with self._lock:
            items = list(self._memo.items())
        entries = {}
        for triple, value in items:
            key = FusionKey(self.rank, self.level, tuple(Partition(t) for t in triple))
            entries[key.to_string()] = value
        return dict(sorted(entries.items()))

    def import_entries(self, entries: Iterable[Tuple[FusionKey, int]]) -> int:
        count = 0
        with self._lock:
            for key, value in entries:
                if (key.rank, key.level) != (self.rank, self.level):
                    raise PreconditionError(f"Key for r={key.rank}, k={key.level} imported into r={self.rank}, k={self.level}")
                self._memo[key.entries] = value
                count += 1
        return count

    def clear(self) -> None:
        with self._lock:
            self._memo.clear()
            self.hits = 0


_engines: Dict[Tuple[int, int, EngineConfig], FusionEngine] = {}
_engines_lock = threading.Lock()


def get_fusion_engine(rank: int, level: int, config: Optional[EngineConfig] = None) -> FusionEngine:
    """Shared engine per (r, k, config)"""
    config = config or DEFAULT_ENGINE_CONFIG
    with _engines_lock:
        engine = _engines.get((rank, level, config))
        if engine is None:
            engine = FusionEngine(rank, level, config)
            _engines[(rank, level, config)] = engine
        return engine


def fusion_coeff(first: Partition, second: Partition, third: Partition, rank: int, level: int) -> int:
    return get_fusion_engine(rank, level).fusion_coeff(first, second, third)
