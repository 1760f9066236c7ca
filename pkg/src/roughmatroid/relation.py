"""Binary relations on a finite universe, stored as one bitmask row per element."""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from typing import Iterable

from .errors import HypothesisError
from .sets import Subset, Universe, check_capacity, iter_bits


@dataclass(frozen=True)
class BinaryRelation:
    """Relation R on ``universe``; bit y of ``rows[x]`` is set iff xRy."""

    universe: Universe
    rows: tuple[int, ...]

    def __post_init__(self):
        n = self.universe.size
        rows = tuple(int(r) for r in self.rows)
        if len(rows) != n:
            raise ValueError(f"relation needs {n} rows, got {len(rows)}")
        for r in rows:
            if r < 0 or r >> n:
                raise ValueError("relation row references an element outside the universe")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_pairs(cls, universe: Universe, pairs: Iterable[tuple[int, int]]) -> "BinaryRelation":
        """Build from 0-based index pairs."""
        rows = [0] * universe.size
        for x, y in pairs:
            if not (0 <= x < universe.size and 0 <= y < universe.size):
                raise IndexError(f"pair ({x}, {y}) out of range")
            rows[x] |= 1 << y
        return cls(universe, tuple(rows))

    @classmethod
    def from_matrix(cls, universe: Universe, matrix) -> "BinaryRelation":
        pairs = [(x, y) for x, row in enumerate(matrix) for y, v in enumerate(row) if v]
        if len(matrix) != universe.size or any(len(row) != universe.size for row in matrix):
            raise ValueError("matrix dimensions must equal the universe size")
        return cls.from_pairs(universe, pairs)

    @classmethod
    def identity(cls, universe: Universe) -> "BinaryRelation":
        return cls(universe, tuple(1 << x for x in range(universe.size)))

    @classmethod
    def full(cls, universe: Universe) -> "BinaryRelation":
        return cls(universe, (universe.full_bits,) * universe.size)

    @classmethod
    def empty(cls, universe: Universe) -> "BinaryRelation":
        return cls(universe, (0,) * universe.size)

    @property
    def size(self) -> int:
        return self.universe.size

    def holds(self, x: int, y: int) -> bool:
        return bool(self.rows[x] >> y & 1)

    def pairs(self) -> list[tuple[int, int]]:
        return [(x, y) for x, row in enumerate(self.rows) for y in iter_bits(row)]

    def matrix(self) -> list[list[bool]]:
        n = self.size
        return [[bool(row >> y & 1) for y in range(n)] for row in self.rows]

    def successor_neighborhood(self, x: int) -> Subset:
        if not 0 <= x < self.size:
            raise IndexError(f"element index {x} out of range for universe of size {self.size}")
        return Subset(self.universe, self.rows[x])

    def is_serial(self) -> bool:
        return all(self.rows)

    def is_transitive(self) -> bool:
        # xRy and yRz => xRz, i.e. R(y) ⊆ R(x) whenever y ∈ R(x)
        rows = self.rows
        return all(rows[y] & ~row == 0 for row in rows for y in iter_bits(row))

    def is_reflexive(self) -> bool:
        return all(row >> x & 1 for x, row in enumerate(self.rows))

    def is_symmetric(self) -> bool:
        return all(self.holds(y, x) for x, y in self.pairs())

    def transitive_closure(self) -> "BinaryRelation":
        # Warshall over bitmask rows
        rows = list(self.rows)
        for k in range(self.size):
            bit = 1 << k
            rk = rows[k]
            for i in range(self.size):
                if rows[i] & bit:
                    rows[i] |= rk
        return BinaryRelation(self.universe, tuple(rows))

    def require_serial_transitive(self) -> None:
        problems = []
        if not self.is_serial():
            problems.append("serial")
        if not self.is_transitive():
            problems.append("transitive")
        if problems:
            raise HypothesisError("relation is not " + " and not ".join(problems))

    def fingerprint(self) -> str:
        """Short stable digest of the universe labels and the pair list."""
        h = hashlib.sha256()
        h.update(" ".join(self.universe.labels).encode())
        h.update(b"|")
        h.update(",".join(f"{x}:{row:x}" for x, row in enumerate(self.rows)).encode())
        return h.hexdigest()[:16]


def random_serial_transitive(n: int, density: float, seed: int, cap: int | None = None) -> BinaryRelation:
    """Random serial and transitive relation on ``n`` elements.

    Each ordered pair is kept with probability ``density``; the sample is
    transitively closed and every element left without successors gets a
    self-loop. Deterministic in ``(n, density, seed)``.
    """
    check_capacity(n, cap)
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must lie in [0, 1], got {density}")
    rng = random.Random(seed)
    u = Universe(n)
    rows = []
    for _ in range(n):
        row = 0
        for y in range(n):
            if rng.random() < density:
                row |= 1 << y
        rows.append(row)
    rel = BinaryRelation(u, tuple(rows)).transitive_closure()
    # a self-loop on a successor-free element cannot break transitivity
    rows = tuple(row if row else 1 << x for x, row in enumerate(rel.rows))
    return BinaryRelation(u, rows)
