"""Exact perfect-matching covers of r-graphs.

Every r-graph has a cover of its all-ones edge vector by linearly
independent perfect matchings whose coefficients are integers or exactly
+1/2.  This package computes such covers (tight cut decomposition, per-leaf
solvers, class-preserving merging), verifies every clause independently,
and round-trips the result through an exact integer certificate format.
"""

from .certificate import (
    Certificate,
    CertificateError,
    FingerprintMismatch,
    LeafSummary,
    VerifyReport,
    build_certificate,
    certificate_graph,
    certificate_solution,
    deserialize,
    graph_fingerprint,
    serialize,
    verify_certificate,
    verify_cover,
)
from .cover import CoverSolution, exact_cover, from_twice, terms_independent, to_twice
from .decomposition import (
    ContractionMap,
    DecompositionTree,
    LeafClass,
    canonical_petersen,
    classify_leaf,
    contract_shore,
    decompose,
    find_nontrivial_tight_cut,
    is_tight_cut,
    petersen_embedding,
)
from .graphs import (
    Cut,
    MultiGraph,
    RGraphCheck,
    build_graph,
    cut_from_shore,
    is_r_graph,
    min_odd_cut,
    regular_degree,
)
from .leaf_solvers import (
    ClassificationError,
    brace_solve,
    brick_solve,
    greedy_basis,
    petersen_alpha,
    petersen_solve,
)
from .matchings import (
    EnumerationOverflow,
    enumerate_pms,
    has_perfect_matching,
    iter_pms,
    pm_containing_edges,
    validate_perfect_matching,
)
from .merge import (
    SignedSequences,
    balance_negatives,
    improved_merge,
    pair_sequences,
    product_merge,
    signed_split,
    solve_r_graph,
)

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "CertificateError",
    "ClassificationError",
    "ContractionMap",
    "CoverSolution",
    "Cut",
    "DecompositionTree",
    "EnumerationOverflow",
    "FingerprintMismatch",
    "LeafClass",
    "LeafSummary",
    "MultiGraph",
    "RGraphCheck",
    "SignedSequences",
    "VerifyReport",
    "balance_negatives",
    "brace_solve",
    "brick_solve",
    "build_certificate",
    "build_graph",
    "canonical_petersen",
    "certificate_graph",
    "certificate_solution",
    "classify_leaf",
    "contract_shore",
    "cut_from_shore",
    "decompose",
    "deserialize",
    "enumerate_pms",
    "exact_cover",
    "find_nontrivial_tight_cut",
    "from_twice",
    "graph_fingerprint",
    "greedy_basis",
    "has_perfect_matching",
    "improved_merge",
    "is_r_graph",
    "is_tight_cut",
    "iter_pms",
    "min_odd_cut",
    "pair_sequences",
    "petersen_alpha",
    "petersen_embedding",
    "petersen_solve",
    "pm_containing_edges",
    "product_merge",
    "regular_degree",
    "serialize",
    "signed_split",
    "solve_r_graph",
    "terms_independent",
    "to_twice",
    "validate_perfect_matching",
    "verify_certificate",
    "verify_cover",
]
