"""The matroid induced by the height function of the regular-set lattice.

A set X is independent iff |X ∩ Y| <= h(Y) for every regular set Y. Rank is
computed by the closed form ``min_Y h(Y) + |X - Y|``; ``rank_bruteforce``
keeps the textbook definition (largest independent subset) as a separate
oracle.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CapacityError, UniverseMismatchError
from .lattice import FiniteLattice, build_lattice_bits
from .sets import (
    EXHAUSTIVE_CAP,
    SetFamily,
    Subset,
    Universe,
    enumerate_bits,
    iter_bits,
    popcount,
    submasks,
)


@dataclass
class AxiomReport:
    """Outcome of an exhaustive (I1)-(I3) check.

    ``i2_failures`` holds (independent set, dependent subset) pairs and
    ``i3_failures`` holds (I1, I2, I2 - I1) triples where no element of
    I2 - I1 extends I1. Lists are truncated to ``limit`` entries.
    """

    i1: bool
    i2_failures: list[tuple[Subset, Subset]] = field(default_factory=list)
    i3_failures: list[tuple[Subset, Subset, Subset]] = field(default_factory=list)

    @property
    def i2(self) -> bool:
        return not self.i2_failures

    @property
    def i3(self) -> bool:
        return not self.i3_failures

    @property
    def passed(self) -> bool:
        return self.i1 and self.i2 and self.i3


class LatticeMatroid:
    def __init__(self, reg_lattice: FiniteLattice):
        self.reg_lattice = reg_lattice
        self.ground: Universe = reg_lattice.universe
        self._terms = tuple(zip(reg_lattice.elements.bits, reg_lattice.heights))
        self._rank_cache: dict[int, int] = {}
        self._closure_cache: dict[int, int] = {}
        self._independent: frozenset[int] | None = None

    @classmethod
    def from_space(cls, space) -> "LatticeMatroid":
        """Matroid of a serial and transitive approximation space; fails fast otherwise."""
        space.require_serial_transitive()
        return cls(space.regular_lattice())

    def _check(self, x: Subset) -> None:
        if x.universe != self.ground:
            raise UniverseMismatchError("subset is not over the matroid's ground set")

    def _subset(self, bits: int) -> Subset:
        return Subset(self.ground, bits)

    # -- independence ---------------------------------------------------

    def is_independent_bits(self, x: int) -> bool:
        return all(h >= popcount(x & y) for y, h in self._terms)

    def is_independent(self, x: Subset) -> bool:
        self._check(x)
        return self.is_independent_bits(x.bits)

    def independent_bits(self, cap: int | None = None) -> frozenset[int]:
        if self._independent is None:
            every = enumerate_bits(self.ground.size, cap)
            self._independent = frozenset(b for b in every if self.is_independent_bits(b))
        return self._independent

    def enumerate_independent_sets(self, cap: int | None = None) -> SetFamily:
        return SetFamily.from_bits(self.ground, self.independent_bits(cap))

    def bases(self) -> SetFamily:
        r = self.rank_bits(self.ground.full_bits)
        return SetFamily.from_bits(self.ground, (b for b in self.independent_bits() if popcount(b) == r))

    def circuits(self) -> SetFamily:
        indep = self.independent_bits()
        found = []
        for x in enumerate_bits(self.ground.size):
            if x not in indep and all(x & ~(1 << e) in indep for e in iter_bits(x)):
                found.append(x)
        return SetFamily.from_bits(self.ground, found)

    def verify_axioms(self, limit: int = 10) -> AxiomReport:
        indep = self.independent_bits()
        report = AxiomReport(i1=0 in indep)
        for i in sorted(indep):
            for sub in submasks(i):
                if sub not in indep:
                    if len(report.i2_failures) < limit:
                        report.i2_failures.append((self._subset(i), self._subset(sub)))
                    break
        full = self.ground.full_bits
        by_size: dict[int, list[int]] = {}
        for i in indep:
            by_size.setdefault(popcount(i), []).append(i)
        for group in by_size.values():
            group.sort()
        for i1 in sorted(indep):
            # elements that keep I1 independent when added
            extend = 0
            for e in iter_bits(full & ~i1):
                if i1 | (1 << e) in indep:
                    extend |= 1 << e
            k = popcount(i1)
            for size, group in by_size.items():
                if size <= k:
                    continue
                for i2 in group:
                    if not (i2 & ~i1 & extend):
                        if len(report.i3_failures) < limit:
                            report.i3_failures.append(
                                (self._subset(i1), self._subset(i2), self._subset(i2 & ~i1))
                            )
        return report

    # -- rank -----------------------------------------------------------

    def rank_bits(self, x: int) -> int:
        r = self._rank_cache.get(x)
        if r is None:
            r = min(h + popcount(x & ~y) for y, h in self._terms)
            self._rank_cache[x] = r
        return r

    def rank(self, x: Subset) -> int:
        self._check(x)
        return self.rank_bits(x.bits)

    def rank_bruteforce_bits(self, x: int, cap: int | None = None) -> int:
        limit = EXHAUSTIVE_CAP if cap is None else cap
        if popcount(x) > limit:
            raise CapacityError(f"|X| = {popcount(x)} exceeds per-call cap {limit}")
        best = 0
        for sub in submasks(x):
            k = popcount(sub)
            if k > best and self.is_independent_bits(sub):
                best = k
        return best

    def rank_bruteforce(self, x: Subset, cap: int | None = None) -> int:
        self._check(x)
        return self.rank_bruteforce_bits(x.bits, cap)

    # -- closure --------------------------------------------------------

    def closure_bits(self, x: int) -> int:
        c = self._closure_cache.get(x)
        if c is None:
            r = self.rank_bits(x)
            c = 0
            for u in range(self.ground.size):
                if self.rank_bits(x | (1 << u)) == r:
                    c |= 1 << u
            self._closure_cache[x] = c
        return c

    def closure(self, x: Subset) -> Subset:
        self._check(x)
        return self._subset(self.closure_bits(x.bits))

    def is_closed(self, x: Subset) -> bool:
        self._check(x)
        return self.closure_bits(x.bits) == x.bits

    def closed_bits_bruteforce(self, cap: int | None = None) -> tuple[int, ...]:
        return tuple(b for b in enumerate_bits(self.ground.size, cap) if self.closure_bits(b) == b)

    def enumerate_closed_sets_bruteforce(self, cap: int | None = None) -> SetFamily:
        return SetFamily.from_bits(self.ground, self.closed_bits_bruteforce(cap))

    def closed_set_lattice(self, cap: int | None = None) -> FiniteLattice:
        """Flats ordered by inclusion: X ∨ Y = cl(X ∪ Y), X ∧ Y = X ∩ Y."""
        return build_lattice_bits(
            self.ground,
            self.closed_bits_bruteforce(cap),
            join=lambda a, b: self.closure_bits(a | b),
            meet=lambda a, b: a & b,
        )

    def __repr__(self) -> str:
        return f"LatticeMatroid(ground={self.ground.size}, regular_sets={len(self._terms)})"
