"""Generalized rough sets over serial transitive relations, the lattice of
regular sets, and the matroid induced by its height function."""
from .approximation import ApproximationSpace
from .errors import (
    CapacityError,
    HypothesisError,
    LatticeError,
    RelationParseError,
    RoughMatroidError,
    UniverseMismatchError,
)
from .lattice import FiniteLattice, build_lattice, build_lattice_bits, inclusion_lattice, powerset_lattice
from .matroid import AxiomReport, LatticeMatroid
from .relation import BinaryRelation, random_serial_transitive
from .relfile import format_relation, parse_relation, parse_relation_document
from .sets import EXHAUSTIVE_CAP, SetFamily, Subset, Universe, enumerate_subsets, family_from
from .verification import (
    PROPOSITION_IDS,
    DerivationResult,
    PropositionReport,
    derive_closed_sets,
    run_campaign,
    verify_proposition,
)

__all__ = [
    "ApproximationSpace", "AxiomReport", "BinaryRelation", "CapacityError", "DerivationResult",
    "EXHAUSTIVE_CAP", "FiniteLattice", "HypothesisError", "LatticeError", "LatticeMatroid",
    "PROPOSITION_IDS", "PropositionReport", "RelationParseError", "RoughMatroidError", "SetFamily",
    "Subset", "Universe", "UniverseMismatchError", "build_lattice", "build_lattice_bits",
    "derive_closed_sets", "enumerate_subsets", "family_from", "inclusion_lattice", "format_relation", "parse_relation",
    "parse_relation_document", "powerset_lattice", "random_serial_transitive", "run_campaign",
    "verify_proposition",
]
