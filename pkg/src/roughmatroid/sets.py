"""Finite universes and subsets encoded as integer bitmasks.

Elements are 0-indexed internally. Labels (default ``"1".."n"``) are only
used for display and I/O.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, UniverseMismatchError

#: Largest universe for which a full powerset scan is permitted.
EXHAUSTIVE_CAP = 20


def popcount(bits: int) -> int:
    return bin(bits).count("1")


def iter_bits(bits: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``bits`` in increasing order."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def submasks(bits: int) -> Iterator[int]:
    """Yield every submask of ``bits`` (including 0 and ``bits`` itself)."""
    sub = bits
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & bits


def canonical_key(bits: int) -> tuple[int, int]:
    return popcount(bits), bits


def check_capacity(n: int, cap: int | None = None) -> None:
    limit = EXHAUSTIVE_CAP if cap is None else cap
    if n > limit:
        raise CapacityError(
            f"universe of size {n} exceeds exhaustive-enumeration cap {limit}"
        )


@dataclass(frozen=True)
class Universe:
    size: int
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 1:
            raise ValueError(f"universe size must be a positive integer, got {self.size!r}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i + 1) for i in range(self.size)))
        else:
            object.__setattr__(self, "labels", tuple(str(lbl) for lbl in self.labels))
        if len(self.labels) != self.size:
            raise ValueError(f"expected {self.size} labels, got {len(self.labels)}")
        if len(set(self.labels)) != self.size:
            raise ValueError("universe labels must be pairwise distinct")

    @classmethod
    def of_labels(cls, labels: Sequence[str]) -> "Universe":
        return cls(len(labels), tuple(labels))

    @property
    def full_bits(self) -> int:
        return (1 << self.size) - 1

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown element label {label!r}") from None

    def subset(self, elements: Iterable[int] = ()) -> "Subset":
        """Subset from 0-based element indices."""
        bits = 0
        for e in elements:
            if not 0 <= e < self.size:
                raise IndexError(f"element index {e} out of range for universe of size {self.size}")
            bits |= 1 << e
        return Subset(self, bits)

    def subset_of_labels(self, labels: Iterable[str]) -> "Subset":
        return self.subset(self.index(lbl) for lbl in labels)

    def empty(self) -> "Subset":
        return Subset(self, 0)

    def full(self) -> "Subset":
        return Subset(self, self.full_bits)

    def singleton(self, e: int) -> "Subset":
        return self.subset((e,))


@dataclass(frozen=True)
class Subset:
    universe: Universe
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.universe.size:
            raise ValueError(f"bits {self.bits:#x} outside universe of size {self.universe.size}")

    def _same(self, other: "Subset") -> None:
        if self.universe != other.universe:
            raise UniverseMismatchError("subsets belong to different universes")

    def __len__(self) -> int:
        return popcount(self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __contains__(self, e: int) -> bool:
        return 0 <= e < self.universe.size and bool(self.bits >> e & 1)

    def __or__(self, other: "Subset") -> "Subset":
        self._same(other)
        return Subset(self.universe, self.bits | other.bits)

    def __and__(self, other: "Subset") -> "Subset":
        self._same(other)
        return Subset(self.universe, self.bits & other.bits)

    def __sub__(self, other: "Subset") -> "Subset":
        self._same(other)
        return Subset(self.universe, self.bits & ~other.bits)

    def __xor__(self, other: "Subset") -> "Subset":
        self._same(other)
        return Subset(self.universe, self.bits ^ other.bits)

    def complement(self) -> "Subset":
        return Subset(self.universe, self.universe.full_bits & ~self.bits)

    def issubset(self, other: "Subset") -> bool:
        self._same(other)
        return self.bits & other.bits == self.bits

    def issuperset(self, other: "Subset") -> bool:
        return other.issubset(self)

    def __le__(self, other: "Subset") -> bool:
        return self.issubset(other)

    def __lt__(self, other: "Subset") -> bool:
        return self.issubset(other) and self.bits != other.bits

    def __ge__(self, other: "Subset") -> bool:
        return other.issubset(self)

    def __gt__(self, other: "Subset") -> bool:
        return other < self

    def sort_key(self) -> tuple[int, int]:
        return canonical_key(self.bits)

    def labels(self) -> list[str]:
        return [self.universe.labels[e] for e in self]

    def __str__(self) -> str:
        if not self.bits:
            return "∅"
        return "{" + ",".join(self.labels()) + "}"

    def __repr__(self) -> str:
        return f"Subset({self})"


class SetFamily(Sequence[Subset]):
    """Immutable, duplicate-free family of subsets in canonical order.

    Canonical order is ascending by cardinality, then by bitmask value.
    """

    __slots__ = ("universe", "_members", "_bits", "_lookup")

    def __init__(self, members: Iterable[Subset] = (), universe: Universe | None = None):
        members = list(members)
        for m in members:
            if universe is None:
                universe = m.universe
            elif m.universe != universe:
                raise UniverseMismatchError("family members belong to different universes")
        bits = sorted({m.bits for m in members}, key=canonical_key)
        self.universe = universe
        self._bits = tuple(bits)
        self._members = tuple(Subset(universe, b) for b in bits)
        self._lookup = frozenset(bits)

    @classmethod
    def from_bits(cls, universe: Universe, bits: Iterable[int]) -> "SetFamily":
        return cls((Subset(universe, b) for b in bits), universe=universe)

    @property
    def bits(self) -> tuple[int, ...]:
        return self._bits

    def __getitem__(self, i):
        return self._members[i]

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self) -> Iterator[Subset]:
        return iter(self._members)

    def __contains__(self, item) -> bool:
        if isinstance(item, Subset):
            return item.universe == self.universe and item.bits in self._lookup
        return False

    def __eq__(self, other) -> bool:
        if isinstance(other, SetFamily):
            return self._bits == other._bits and (
                not self._bits or self.universe == other.universe
            )
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._bits)

    def __or__(self, other: "SetFamily") -> "SetFamily":
        return family_from([*self, *other])

    def __and__(self, other: "SetFamily") -> "SetFamily":
        keep = set(other.bits)
        return SetFamily((m for m in self if m.bits in keep), universe=self.universe)

    def __sub__(self, other: "SetFamily") -> "SetFamily":
        drop = set(other.bits)
        return SetFamily((m for m in self if m.bits not in drop), universe=self.universe)

    def __xor__(self, other: "SetFamily") -> "SetFamily":
        return (self - other) | (other - self)

    def label_lists(self) -> list[list[str]]:
        return [m.labels() for m in self]

    def __str__(self) -> str:
        return "{" + ", ".join(str(m) for m in self) + "}"

    def __repr__(self) -> str:
        return f"SetFamily({self})"


def family_from(subsets: Iterable[Subset]) -> SetFamily:
    """Deduplicate ``subsets`` and impose canonical order."""
    return SetFamily(subsets)


def enumerate_bits(n: int, cap: int | None = None) -> list[int]:
    """All ``2**n`` bitmasks over ``n`` elements, in canonical order."""
    check_capacity(n, cap)
    return sorted(range(1 << n), key=canonical_key)


def enumerate_subsets(u: Universe, cap: int | None = None) -> list[Subset]:
    return [Subset(u, b) for b in enumerate_bits(u.size, cap)]
