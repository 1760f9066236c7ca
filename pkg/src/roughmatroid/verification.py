"""Exhaustive per-instance checks of the lattice/matroid propositions,
the three-step derivation of closed sets, and randomized campaigns."""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .approximation import ApproximationSpace
from .errors import HypothesisError
from .lattice import FiniteLattice
from .matroid import LatticeMatroid
from .relation import BinaryRelation, random_serial_transitive
from .sets import SetFamily, Subset, iter_bits, popcount, submasks

PROPOSITION_IDS = (
    "P2.3", "P2.4", "P3.1", "P3.3", "P3.6",
    "P4.1", "P4.2", "P4.3", "P4.4", "P4.5", "P4.6", "C4.7",
)

DEFAULT_DENSITIES = (0.05, 0.1, 0.2, 0.4)

DESCRIPTIONS = {
    "P2.3": "Reg is closed under intersection and the rough-set join",
    "P2.4": "Reg is a distributive lattice",
    "P3.1": "Reg is a semimodular lattice",
    "P3.3": "height-bounded family satisfies (I1), (I2), (I3)",
    "P3.6": "rank(X) = min over Y in Reg of h(Y) + |X - Y|",
    "P4.1": "rank(X) = h(X) for X in Reg",
    "P4.2": "cl({e}) = {e} for e outside every atom",
    "P4.3": "rank(X + e) = h(X) + 1 for X in Reg, e not in X",
    "P4.4": "cl(X) = X for X in Reg",
    "P4.5": "rank(Z) = h(X) for Y covered by X and Y < Z < X",
    "P4.6": "cl(Z) = X for Y covered by X and Y < Z < X",
    "C4.7": "height in Reg equals height in the closed-set lattice",
}


@dataclass
class PropositionReport:
    id: str
    counterexamples: list[tuple] = field(default_factory=list)
    relation: BinaryRelation | None = None

    @property
    def verdict(self) -> str:
        return "fail" if self.counterexamples else "pass"

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    @property
    def instance(self) -> str | None:
        return self.relation.fingerprint() if self.relation is not None else None


@dataclass
class DerivationResult:
    step1: SetFamily
    step2: SetFamily
    excluded: SetFamily
    candidate: SetFamily
    oracle: SetFamily

    @property
    def discrepancy(self) -> SetFamily:
        return self.candidate ^ self.oracle

    @property
    def missing(self) -> SetFamily:
        """Closed sets the three steps do not produce."""
        return self.oracle - self.candidate

    @property
    def spurious(self) -> SetFamily:
        """Candidates that are not closed (should never happen)."""
        return self.candidate - self.oracle


class Instance:
    """Derived structures of one serial and transitive space, built once."""

    def __init__(self, space: ApproximationSpace):
        space.require_serial_transitive()
        self.space = space
        self.universe = space.universe

    @cached_property
    def regular_bits(self) -> tuple[int, ...]:
        return self.space.regular_bits()

    @cached_property
    def lattice(self) -> FiniteLattice:
        return self.space.regular_lattice()

    @cached_property
    def matroid(self) -> LatticeMatroid:
        return LatticeMatroid(self.lattice)

    @cached_property
    def closed_lattice(self) -> FiniteLattice:
        return self.matroid.closed_set_lattice()

    def sub(self, bits: int) -> Subset:
        return Subset(self.universe, bits)

    def cover_pairs(self) -> list[tuple[int, int, int, int]]:
        """(Y, X, h(Y), h(X)) bitmasks for every cover Y ≺ X with h(X) = h(Y) + 1."""
        lat = self.lattice
        out = []
        for y, x in lat.hasse:
            hy, hx = lat.height(y), lat.height(x)
            if hx == hy + 1:
                out.append((y.bits, x.bits, hy, hx))
        return out

    def sandwiched(self, y: int, x: int):
        """Every Z with Y ⊂ Z ⊂ X (strict on both sides)."""
        free = x & ~y
        for s in submasks(free):
            if s and s != free:
                yield y | s


def _atom_union(lat: FiniteLattice) -> int:
    out = 0
    for a in lat.atoms():
        out |= a.bits
    return out


def _check_p23(inst):
    regs = set(inst.regular_bits)
    out = []
    bits = inst.regular_bits
    for i, a in enumerate(bits):
        for b in bits[i:]:
            if a & b not in regs:
                out.append(("meet", inst.sub(a), inst.sub(b), inst.sub(a & b)))
            j = inst.space.regularize_bits(a | b)
            if j not in regs:
                out.append(("join", inst.sub(a), inst.sub(b), inst.sub(j)))
    return out


def _check_p24(inst):
    ce = inst.lattice.distributivity_counterexample()
    return [ce] if ce else []


def _check_p31(inst):
    ce = inst.lattice.semimodularity_counterexample()
    return [ce] if ce else []


def _check_p33(inst):
    rep = inst.matroid.verify_axioms()
    out = []
    if not rep.i1:
        out.append(("I1", inst.sub(0)))
    out += [("I2", *pair) for pair in rep.i2_failures]
    out += [("I3", i1, i2) for i1, i2, _ in rep.i3_failures]
    return out


def _check_p36(inst):
    m = inst.matroid
    out = []
    for x in range(1 << inst.universe.size):
        formula, oracle = m.rank_bits(x), m.rank_bruteforce_bits(x)
        if formula != oracle:
            out.append((inst.sub(x), formula, oracle))
    return out


def _check_p41(inst):
    m, lat = inst.matroid, inst.lattice
    return [(x, m.rank(x), lat.height(x)) for x in lat if m.rank(x) != lat.height(x)]


def _check_p42(inst):
    m = inst.matroid
    outside = inst.universe.full_bits & ~_atom_union(inst.lattice)
    out = []
    for e in iter_bits(outside):
        c = m.closure_bits(1 << e)
        if c != 1 << e:
            out.append((inst.universe.labels[e], inst.sub(c)))
    return out


def _check_p43(inst):
    m, lat = inst.matroid, inst.lattice
    out = []
    for x in lat:
        h = lat.height(x)
        for e in iter_bits(inst.universe.full_bits & ~x.bits):
            r = m.rank_bits(x.bits | 1 << e)
            if r != h + 1:
                out.append((x, inst.universe.labels[e], r, h + 1))
    return out


def _check_p44(inst):
    m = inst.matroid
    return [(x, m.closure(x)) for x in inst.lattice if not m.is_closed(x)]


def _check_p45(inst):
    m = inst.matroid
    out = []
    for y, x, _, hx in inst.cover_pairs():
        for z in inst.sandwiched(y, x):
            r = m.rank_bits(z)
            if r != hx:
                out.append((inst.sub(y), inst.sub(x), inst.sub(z), r))
    return out


def _check_p46(inst):
    m = inst.matroid
    out = []
    for y, x, _, _ in inst.cover_pairs():
        for z in inst.sandwiched(y, x):
            c = m.closure_bits(z)
            if c != x:
                out.append((inst.sub(y), inst.sub(x), inst.sub(z), inst.sub(c)))
    return out


def _check_c47(inst):
    lat, closed = inst.lattice, inst.closed_lattice
    out = []
    for x in lat:
        h = lat.height(x)
        h1 = closed.height(x) if x in closed else None
        if h1 != h:
            out.append((x, h, h1))
    return out


_CHECKS = {
    "P2.3": _check_p23, "P2.4": _check_p24, "P3.1": _check_p31, "P3.3": _check_p33,
    "P3.6": _check_p36, "P4.1": _check_p41, "P4.2": _check_p42, "P4.3": _check_p43,
    "P4.4": _check_p44, "P4.5": _check_p45, "P4.6": _check_p46, "C4.7": _check_c47,
}


def _instance(space) -> Instance:
    return space if isinstance(space, Instance) else Instance(space)


def verify_proposition(space, pid: str) -> PropositionReport:
    """Exhaustively check one proposition on ``space`` (an ApproximationSpace or Instance).

    Raises HypothesisError if the relation is not serial and transitive.
    """
    if pid not in _CHECKS:
        raise KeyError(f"unknown proposition id {pid!r}; expected one of {', '.join(PROPOSITION_IDS)}")
    inst = _instance(space)
    return PropositionReport(pid, _CHECKS[pid](inst), inst.space.relation)


def verify_all(space, ids: Iterable[str] = PROPOSITION_IDS) -> list[PropositionReport]:
    inst = _instance(space)
    return [verify_proposition(inst, pid) for pid in ids]


def derive_closed_sets(reg_lattice: FiniteLattice, matroid: LatticeMatroid) -> DerivationResult:
    """Closed sets read off the regular-set lattice in three steps.

    1. singletons {e} with e outside every atom;
    2. every lattice element;
    3. every Z strictly between a cover pair Y ≺ X is excluded (its closure is X).

    The brute-force closed-set family is attached for comparison.
    """
    if reg_lattice.elements != matroid.reg_lattice.elements:
        raise ValueError("lattice and matroid were built from different regular-set families")
    u = reg_lattice.universe
    outside = u.full_bits & ~_atom_union(reg_lattice)
    step1 = SetFamily.from_bits(u, (1 << e for e in iter_bits(outside)))
    step2 = reg_lattice.elements
    excluded = set()
    for y, x in reg_lattice.hasse:
        free = x.bits & ~y.bits
        for s in submasks(free):
            if s and s != free:
                excluded.add(y.bits | s)
    return DerivationResult(
        step1=step1,
        step2=step2,
        excluded=SetFamily.from_bits(u, excluded),
        candidate=step1 | step2,
        oracle=matroid.enumerate_closed_sets_bruteforce(),
    )


@dataclass
class SampleResult:
    index: int
    size: int
    density: float
    seed: int
    relation: BinaryRelation
    reports: list[PropositionReport]
    derivation: DerivationResult

    @property
    def passed(self) -> bool:
        """All propositions hold and every derived candidate is closed."""
        return all(r.passed for r in self.reports) and not len(self.derivation.spurious)


def campaign_plan(count: int, sizes: tuple[int, int], densities: Sequence[float], seed: int):
    """Deterministic per-sample (index, size, density, seed) tuples."""
    lo, hi = sizes
    if lo < 1 or hi < lo:
        raise ValueError(f"invalid size range {sizes}")
    rng = random.Random(seed)
    plan = []
    for i in range(count):
        n = rng.randint(lo, hi)
        d = rng.choice(list(densities))
        plan.append((i, n, d, rng.getrandbits(64)))
    return plan


def run_sample(index: int, size: int, density: float, seed: int, ids: Sequence[str] = PROPOSITION_IDS) -> SampleResult:
    rel = random_serial_transitive(size, density, seed)
    inst = Instance(ApproximationSpace(rel))
    reports = verify_all(inst, ids)
    derivation = derive_closed_sets(inst.lattice, inst.matroid)
    return SampleResult(index, size, density, seed, rel, reports, derivation)


def _run_planned(args):
    return run_sample(*args)


def run_campaign(
    count: int,
    sizes: tuple[int, int] = (2, 8),
    densities: Sequence[float] = DEFAULT_DENSITIES,
    seed: int = 0,
    ids: Sequence[str] = PROPOSITION_IDS,
    workers: int = 1,
) -> list[SampleResult]:
    """Verify every proposition on ``count`` random serial and transitive spaces.

    Results are ordered by sample index whatever the worker count.
    """
    plan = [(*p, tuple(ids)) for p in campaign_plan(count, sizes, densities, seed)]
    if workers > 1 and len(plan) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_planned, plan, chunksize=max(1, len(plan) // (4 * workers))))
    return [_run_planned(p) for p in plan]


def summarize(results: Sequence[SampleResult]) -> dict:
    per_id: dict[str, dict[str, int]] = {}
    for res in results:
        for rep in res.reports:
            slot = per_id.setdefault(rep.id, {"pass": 0, "fail": 0})
            slot[rep.verdict] += 1
    return {
        "samples": len(results),
        "propositions": per_id,
        "failed_samples": sum(not r.passed for r in results),
        "spurious_candidates": sum(len(r.derivation.spurious) for r in results),
        "discrepancy_instances": sum(bool(len(r.derivation.discrepancy)) for r in results),
        "missing_closed_sets": sum(len(r.derivation.missing) for r in results),
    }
