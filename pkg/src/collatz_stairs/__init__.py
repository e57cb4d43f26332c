"""Convergence stairs of the Collatz program.

Exact generation of the j-th stair of each power-of-two subtree, BVC
verification of every candidate, and independent backward/forward
oracles to cross-check the lot.
"""

from .backward import (
    StairSet,
    stairs_icltz,
    subtree_levels,
    subtree_stairs_bfs,
    tree_dot,
    tree_structure,
)
from .core import (
    DEFAULT_MAX_STEPS,
    ICLTZ,
    BudgetExceeded,
    InternalContradiction,
    StairIndex,
    collatz_step,
    inverse_step,
    is_power_of_two,
    orbit,
    power_of_two_exponent,
    stair_index_icltz,
    stair_index_iu,
)
from .coverage import (
    CoverageReport,
    EquivalenceMismatch,
    check_equivalence,
    coverage_scan,
    scan_chunk,
    verify_forward,
)
from .terms import (
    Stair,
    StairTerm,
    TermExpr,
    bvc_from_exponents,
    enumerate_exponent_sequences,
    exponents_from_bvc,
    generate_stair,
    subtree_root,
    term_value,
    y_k,
)
from .verifier import VerificationResult, verify_bvc

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "CoverageReport",
    "DEFAULT_MAX_STEPS",
    "EquivalenceMismatch",
    "ICLTZ",
    "InternalContradiction",
    "Stair",
    "StairIndex",
    "StairSet",
    "StairTerm",
    "TermExpr",
    "VerificationResult",
    "bvc_from_exponents",
    "check_equivalence",
    "collatz_step",
    "coverage_scan",
    "enumerate_exponent_sequences",
    "exponents_from_bvc",
    "generate_stair",
    "inverse_step",
    "is_power_of_two",
    "orbit",
    "power_of_two_exponent",
    "scan_chunk",
    "stair_index_icltz",
    "stair_index_iu",
    "stairs_icltz",
    "subtree_levels",
    "subtree_root",
    "subtree_stairs_bfs",
    "term_value",
    "tree_dot",
    "tree_structure",
    "verify_bvc",
    "verify_forward",
    "y_k",
]
