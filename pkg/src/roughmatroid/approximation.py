"""Lower/upper approximations and regular sets of a generalized approximation space."""
from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

from .errors import HypothesisError, UniverseMismatchError
from .relation import BinaryRelation
from .sets import SetFamily, Subset, Universe, enumerate_bits, iter_bits


class ApproximationSpace:
    """A universe with a binary relation, exposing rough-set operators.

    The ``*_bits`` methods work on raw bitmasks and skip validation; they are
    what the lattice and matroid layers call in their inner loops.
    """

    def __init__(self, relation: BinaryRelation):
        self.relation = relation
        self.universe: Universe = relation.universe
        n = self.universe.size
        self._rows = relation.rows
        # predecessors[y] = {x | xRy}; upper(X) is the union of predecessors over X
        preds = [0] * n
        for x, row in enumerate(self._rows):
            for y in iter_bits(row):
                preds[y] |= 1 << x
        self._preds = tuple(preds)

    @classmethod
    def from_pairs(cls, universe: Universe, pairs: Iterable[tuple[int, int]]) -> "ApproximationSpace":
        return cls(BinaryRelation.from_pairs(universe, pairs))

    @cached_property
    def neighborhoods(self) -> tuple[Subset, ...]:
        return tuple(Subset(self.universe, row) for row in self._rows)

    @cached_property
    def is_serial_transitive(self) -> bool:
        return self.relation.is_serial() and self.relation.is_transitive()

    def _check(self, x: Subset) -> None:
        if x.universe != self.universe:
            raise UniverseMismatchError("subset is not over this space's universe")

    def lower_bits(self, bits: int) -> int:
        out = 0
        for e, row in enumerate(self._rows):
            if row & ~bits == 0:
                out |= 1 << e
        return out

    def upper_bits(self, bits: int) -> int:
        out = 0
        for y in iter_bits(bits):
            out |= self._preds[y]
        return out

    def regularize_bits(self, bits: int) -> int:
        """lower(upper(bits))."""
        return self.lower_bits(self.upper_bits(bits))

    def lower_approximation(self, x: Subset) -> Subset:
        self._check(x)
        return Subset(self.universe, self.lower_bits(x.bits))

    def upper_approximation(self, x: Subset) -> Subset:
        self._check(x)
        return Subset(self.universe, self.upper_bits(x.bits))

    def is_regular(self, x: Subset) -> bool:
        self._check(x)
        return self.regularize_bits(x.bits) == x.bits

    def regular_bits(self, cap: int | None = None) -> tuple[int, ...]:
        return tuple(b for b in enumerate_bits(self.universe.size, cap) if self.regularize_bits(b) == b)

    def enumerate_regular_sets(self, cap: int | None = None) -> SetFamily:
        return SetFamily.from_bits(self.universe, self.regular_bits(cap))

    def require_serial_transitive(self) -> None:
        self.relation.require_serial_transitive()

    def _check_regular_inputs(self, xs: Sequence[Subset]) -> None:
        self.require_serial_transitive()
        for x in xs:
            self._check(x)
            if not self.is_regular(x):
                raise HypothesisError(f"{x} is not a regular set")

    def regular_join(self, xs: Sequence[Subset]) -> Subset:
        """Least upper bound of regular sets: lower(upper(union))."""
        self._check_regular_inputs(xs)
        union = 0
        for x in xs:
            union |= x.bits
        return Subset(self.universe, self.regularize_bits(union))

    def regular_meet(self, xs: Sequence[Subset]) -> Subset:
        """Greatest lower bound of regular sets: plain intersection (U for no inputs)."""
        self._check_regular_inputs(xs)
        inter = self.universe.full_bits
        for x in xs:
            inter &= x.bits
        return Subset(self.universe, inter)

    def regular_lattice(self):
        """The lattice (Reg(U, R), ⊆) with the rough-set join and intersection meet."""
        from .lattice import build_lattice_bits

        self.require_serial_transitive()
        return build_lattice_bits(
            self.universe,
            self.regular_bits(),
            join=lambda a, b: self.regularize_bits(a | b),
            meet=lambda a, b: a & b,
        )

    def __repr__(self) -> str:
        return f"ApproximationSpace(n={self.universe.size}, pairs={len(self.relation.pairs())})"
