"""Finite lattices of subsets ordered by inclusion.

Join and meet are supplied by the caller (for regular sets the join is not the
plain union) and tabulated once; every structural query then works on the
``m x m`` index tables.
"""
from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import LatticeError
from .sets import SetFamily, Subset, Universe, canonical_key, enumerate_bits


class FiniteLattice:
    def __init__(self, universe: Universe, bits: Sequence[int], join_table: np.ndarray, meet_table: np.ndarray):
        self.universe = universe
        self.elements = SetFamily.from_bits(universe, bits)
        self._bits = self.elements.bits
        if tuple(bits) != self._bits:
            raise LatticeError("element bitmasks must be distinct and in canonical order")
        self._index = {b: i for i, b in enumerate(self._bits)}
        self.join_table = join_table
        self.meet_table = meet_table
        m = len(self._bits)

        arr = np.array(self._bits, dtype=np.int64)
        self.leq = (arr[:, None] & arr[None, :]) == arr[:, None]
        strict = self.leq & ~np.eye(m, dtype=bool)
        s = strict.astype(np.int32)
        self.cover = strict & ~((s @ s) > 0)

        lo = [0] * m
        hi = [0] * m
        for j in range(1, m):
            below = np.flatnonzero(self.cover[:, j])
            if len(below):
                lo[j] = min(lo[i] for i in below) + 1
                hi[j] = max(hi[i] for i in below) + 1
        self._shortest = tuple(lo)
        self.heights = tuple(hi)

    # -- element access -------------------------------------------------

    def __len__(self) -> int:
        return len(self._bits)

    def __iter__(self) -> Iterator[Subset]:
        return iter(self.elements)

    def __contains__(self, a) -> bool:
        return a in self.elements

    def _idx(self, a: Subset) -> int:
        if not isinstance(a, Subset) or a.universe != self.universe or a.bits not in self._index:
            raise LatticeError(f"{a} is not an element of the lattice")
        return self._index[a.bits]

    def _sub(self, i) -> Subset:
        return self.elements[int(i)]

    def index_of_bits(self, bits: int) -> int:
        return self._index[bits]

    @property
    def least(self) -> Subset:
        return self.elements[0]

    @property
    def greatest(self) -> Subset:
        return self.elements[-1]

    def join(self, a: Subset, b: Subset) -> Subset:
        return self._sub(self.join_table[self._idx(a), self._idx(b)])

    def meet(self, a: Subset, b: Subset) -> Subset:
        return self._sub(self.meet_table[self._idx(a), self._idx(b)])

    @property
    def hasse(self) -> list[tuple[Subset, Subset]]:
        """Cover edges (a, b) with a ≺ b, ordered by (a, b) canonical position."""
        lows, highs = np.nonzero(self.cover)
        return [(self._sub(i), self._sub(j)) for i, j in zip(lows, highs)]

    def covers(self, a: Subset, b: Subset) -> bool:
        """True iff a is covered by b."""
        return bool(self.cover[self._idx(a), self._idx(b)])

    def atoms(self) -> SetFamily:
        return SetFamily((self._sub(j) for j in np.flatnonzero(self.cover[0])), universe=self.universe)

    def height(self, a: Subset) -> int:
        return self.heights[self._idx(a)]

    def chain_length_range(self, a: Subset) -> tuple[int, int]:
        """(shortest, longest) maximal-chain length from the least element to ``a``."""
        i = self._idx(a)
        return self._shortest[i], self.heights[i]

    @property
    def heights_well_defined(self) -> bool:
        """All maximal chains from 0 to each element have the same length."""
        return self._shortest == self.heights

    def maximal_chains(self, a: Subset) -> Iterator[list[Subset]]:
        """Every maximal chain of [0, a], listed bottom-up."""
        target = self._idx(a)

        def walk(path):
            i = path[-1]
            if i == target:
                yield [self._sub(k) for k in path]
                return
            for j in np.flatnonzero(self.cover[i] & self.leq[:, target]):
                yield from walk(path + [int(j)])

        yield from walk([0])

    def interval(self, a: Subset, b: Subset) -> SetFamily:
        i, j = self._idx(a), self._idx(b)
        if not self.leq[i, j]:
            raise LatticeError(f"interval endpoints {a} and {b} are not ordered")
        inside = np.flatnonzero(self.leq[i] & self.leq[:, j])
        return SetFamily((self._sub(k) for k in inside), universe=self.universe)

    def level_set(self, k: int) -> SetFamily:
        return SetFamily((e for e, h in zip(self.elements, self.heights) if h == k), universe=self.universe)

    # -- structural properties ------------------------------------------

    def distributivity_counterexample(self) -> tuple[Subset, Subset, Subset] | None:
        """A triple with a∧(b∨c) ≠ (a∧b)∨(a∧c), or None."""
        J, M = self.join_table, self.meet_table
        for a in range(len(self)):
            ma = M[a]
            lhs = ma[J]
            rhs = J[ma[:, None], ma[None, :]]
            bad = np.argwhere(lhs != rhs)
            if len(bad):
                b, c = bad[0]
                return self._sub(a), self._sub(b), self._sub(c)
        return None

    def is_distributive(self) -> bool:
        return self.distributivity_counterexample() is None

    def n5_witness(self) -> tuple[Subset, ...] | None:
        """An N5 sublattice as (bottom, a, c, b, top) with a < c, or None.

        Every N5 sublattice {0', a, c, b, 1'} with a < c satisfies
        a∨b = c∨b = 1' and a∧b = c∧b = 0', and conversely any a < c, b with
        those equalities spans one. Scanning (a, c, b) is therefore exhaustive.
        """
        J, M = self.join_table, self.meet_table
        strict = self.leq & ~np.eye(len(self), dtype=bool)
        for b in range(len(self)):
            jb, mb = J[:, b], M[:, b]
            hit = strict & (jb[:, None] == jb[None, :]) & (mb[:, None] == mb[None, :])
            found = np.argwhere(hit)
            if len(found):
                a, c = found[0]
                return tuple(self._sub(k) for k in (M[a, b], a, c, b, J[a, b]))
        return None

    def is_modular(self) -> bool:
        return self.n5_witness() is None

    def semimodularity_counterexample(self) -> tuple[Subset, Subset] | None:
        """A pair (a, b) with a∧b ≺ b but a not covered by a∨b, or None."""
        m = len(self)
        J, M, C = self.join_table, self.meet_table, self.cover
        cols = np.arange(m)
        premise = C[M, cols[None, :]]
        conclusion = C[cols[:, None], J]
        bad = np.argwhere(premise & ~conclusion)
        if len(bad):
            a, b = bad[0]
            return self._sub(a), self._sub(b)
        return None

    def is_semimodular(self) -> bool:
        return self.semimodularity_counterexample() is None

    # -- output ---------------------------------------------------------

    def to_dot(self, name: str = "lattice") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;", '  node [shape=box, fontname="Helvetica"];']
        for i, e in enumerate(self.elements):
            lines.append(f'  n{i} [label="{e}"];')
        for h in sorted(set(self.heights)):
            members = " ".join(f"n{i};" for i, hi in enumerate(self.heights) if hi == h)
            lines.append(f"  {{ rank=same; {members} }}")
        for i, j in zip(*np.nonzero(self.cover)):
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"FiniteLattice({self.elements})"


def build_lattice_bits(universe: Universe, bits, join: Callable[[int, int], int], meet: Callable[[int, int], int]) -> FiniteLattice:
    """Build a lattice from bitmasks and bitmask-level join/meet.

    Raises LatticeError if the family is empty, is not closed under the
    operations, lacks a least or greatest element, or if the supplied
    operations are not the least upper / greatest lower bounds for inclusion.
    """
    bits = sorted(set(bits), key=canonical_key)
    if not bits:
        raise LatticeError("a lattice needs at least one element")
    index = {b: i for i, b in enumerate(bits)}
    m = len(bits)
    universe_sub = lambda b: Subset(universe, b)  # noqa: E731

    least, greatest = bits[0], bits[-1]
    if any(b & least != least for b in bits):
        raise LatticeError("family has no least element under inclusion")
    if any(b & greatest != b for b in bits):
        raise LatticeError("family has no greatest element under inclusion")

    J = np.empty((m, m), dtype=np.int32)
    M = np.empty((m, m), dtype=np.int32)
    for i, a in enumerate(bits):
        for j in range(i, m):
            b = bits[j]
            for table, op, label in ((J, join, "join"), (M, meet, "meet")):
                r = op(a, b)
                k = index.get(r)
                if k is None:
                    raise LatticeError(
                        f"family not closed under {label}: {universe_sub(a)} {label} "
                        f"{universe_sub(b)} = {universe_sub(r)}"
                    )
                table[i, j] = table[j, i] = k

    lat = FiniteLattice(universe, bits, J, M)
    _check_bounds(lat)
    return lat


def _check_bounds(lat: FiniteLattice) -> None:
    leq = lat.leq
    ar = np.arange(len(lat))
    for i in range(len(lat)):
        ji, mi = lat.join_table[i], lat.meet_table[i]
        upper = leq[i] & leq          # [j, k]: k is above both i and j
        lower = leq[:, i] & leq.T     # [j, k]: k is below both i and j
        ok_join = upper[ar, ji] & (~upper | leq[ji]).all(axis=1)
        ok_meet = lower[ar, mi] & (~lower | leq[:, mi].T).all(axis=1)
        if not ok_join.all():
            j = int(np.flatnonzero(~ok_join)[0])
            raise LatticeError(f"join of {lat._sub(i)} and {lat._sub(j)} is not their least upper bound")
        if not ok_meet.all():
            j = int(np.flatnonzero(~ok_meet)[0])
            raise LatticeError(f"meet of {lat._sub(i)} and {lat._sub(j)} is not their greatest lower bound")


def build_lattice(elements: SetFamily, join: Callable[[Subset, Subset], Subset], meet: Callable[[Subset, Subset], Subset]) -> FiniteLattice:
    """Build a lattice from a subset family and Subset-level join/meet."""
    if not len(elements):
        raise LatticeError("a lattice needs at least one element")
    u = elements.universe
    return build_lattice_bits(
        u,
        elements.bits,
        join=lambda a, b: join(Subset(u, a), Subset(u, b)).bits,
        meet=lambda a, b: meet(Subset(u, a), Subset(u, b)).bits,
    )


def powerset_lattice(u: Universe) -> FiniteLattice:
    return build_lattice_bits(u, enumerate_bits(u.size), join=lambda a, b: a | b, meet=lambda a, b: a & b)


def find_n5_bruteforce(lat: FiniteLattice) -> list[tuple[Subset, ...]]:
    """All 5-element sublattices isomorphic to the pentagon, by scanning every 5-subset.

    Exponential in the lattice size; meant as an oracle for small lattices.
    """
    J, M, leq = lat.join_table, lat.meet_table, lat.leq
    found = []
    for combo in combinations(range(len(lat)), 5):
        s = set(combo)
        if any(J[x, y] not in s or M[x, y] not in s for x in combo for y in combo):
            continue
        bottom = [x for x in combo if all(leq[x, y] for y in combo)]
        top = [x for x in combo if all(leq[y, x] for y in combo)]
        if len(bottom) != 1 or len(top) != 1:
            continue
        mid = [x for x in combo if x not in (bottom[0], top[0])]
        comparable = [(x, y) for x, y in combinations(mid, 2) if leq[x, y] or leq[y, x]]
        if len(comparable) == 1:
            found.append(tuple(lat._sub(x) for x in combo))
    return found


def inclusion_lattice(elements: SetFamily) -> FiniteLattice:
    """Lattice of a family under inclusion, with join/meet found by search.

    The join of a and b is the smallest member containing a ∪ b, the meet the
    largest member contained in a ∩ b; LatticeError if either is not unique.
    """
    if not len(elements):
        raise LatticeError("a lattice needs at least one element")
    bits = elements.bits
    u = elements.universe

    def join(a, b):
        ups = [c for c in bits if (a | b) & ~c == 0]
        least = [c for c in ups if all(c & ~d == 0 for d in ups)]
        if len(least) != 1:
            raise LatticeError(f"{Subset(u, a)} and {Subset(u, b)} have no least upper bound")
        return least[0]

    def meet(a, b):
        downs = [c for c in bits if c & ~(a & b) == 0]
        most = [c for c in downs if all(d & ~c == 0 for d in downs)]
        if len(most) != 1:
            raise LatticeError(f"{Subset(u, a)} and {Subset(u, b)} have no greatest lower bound")
        return most[0]

    return build_lattice_bits(u, bits, join, meet)
