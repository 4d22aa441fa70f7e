"""Oriented Hamiltonian path embeddings in tournaments.

Constructive embedder following the inductive proof, an exact backtracking
oracle, generators for exhaustive and random instances, and a sweep harness
that reproduces the theorem computationally at small orders.
"""

from .canon import (
    ExceptionClass,
    automorphism_count,
    canonical_code,
    canonical_data,
    classify_small,
    cyclic_triangle,
    is_grunbaum_exception,
    isomorphism,
    paley_7,
    regular_5,
    representative,
    t4_plus,
)
from .embedder import (
    EmbedOutcome,
    Embedding,
    ExceptionReport,
    SimpleLemmaExcluded,
    VariantChoice,
    choose_variant,
    embed,
    inductive_step,
    simple_lemma_embed,
    undo_variant,
    validate,
)
from .generate import RANDOM_GENERATOR_ID, gen_all, gen_random, iso_classes
from .oracle import BaseSolver, OriginConstraint, count_embeddings, oracle_embed
from .paths import PathPattern, PatternError
from .sweep import SweepConfig, SweepSummary, VerificationRecord, report, sweep
from .tournament import (
    StrongDecomposition,
    Tournament,
    TournamentError,
    directed_path_ending_at,
    hamiltonian_circuit,
    hamiltonian_directed_path,
    strong_decomposition,
)

__all__ = [
    "BaseSolver",
    "EmbedOutcome",
    "Embedding",
    "ExceptionClass",
    "ExceptionReport",
    "OriginConstraint",
    "PathPattern",
    "PatternError",
    "RANDOM_GENERATOR_ID",
    "SimpleLemmaExcluded",
    "StrongDecomposition",
    "SweepConfig",
    "SweepSummary",
    "Tournament",
    "TournamentError",
    "VariantChoice",
    "VerificationRecord",
    "automorphism_count",
    "canonical_code",
    "canonical_data",
    "choose_variant",
    "classify_small",
    "count_embeddings",
    "cyclic_triangle",
    "directed_path_ending_at",
    "embed",
    "gen_all",
    "gen_random",
    "hamiltonian_circuit",
    "hamiltonian_directed_path",
    "inductive_step",
    "is_grunbaum_exception",
    "iso_classes",
    "isomorphism",
    "oracle_embed",
    "paley_7",
    "regular_5",
    "report",
    "representative",
    "simple_lemma_embed",
    "strong_decomposition",
    "sweep",
    "t4_plus",
    "undo_variant",
    "validate",
]

__version__ = "0.1.0"
