"""Two-sided hard-list matching: solvers, certificates, oracles, generators."""

from .bipartite import (
    BipartiteGraph,
    DeficiencyCertificate,
    Matching,
    deficiency_certificate,
    max_matching,
    uncovered_left,
)
from .generators import (
    RetryExhaustedError,
    gen_assignment,
    gen_chessboard,
    gen_rooks,
    gen_tournament,
)
from .hall import (
    HallViolator,
    SizeLimitError,
    hall_bicriteria,
    hall_condition_cmp,
    oracle_solve,
)
from .instances import (
    Assignment,
    CmpInstance,
    Infeasible,
    ListedSets,
    NotBaby,
    RawInstance,
    SmpInstance,
    TriviallyUnsolvable,
    assignment_violations,
    baby_to_cmp,
    cmp_subproblems,
    cmp_to_smp,
    is_list_compatible,
    listed_sets,
    pare_lists,
    preprocess_refusals,
    validate,
    validate_raw,
)
from .star import (
    Mismatch,
    MismatchReport,
    StarGraph,
    Unsolvable,
    build_star_graph,
    extract_assignment,
    find_mismatches,
    repair_mismatches,
    solve,
    solve_via_subproblems,
    unsolvable_violator,
)
from .weighted import (
    WeightedBipartiteGraph,
    build_weighted,
    hungarian_max_weight,
    solvable_via_weight,
    weighted_assignment,
)

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "BipartiteGraph",
    "CmpInstance",
    "DeficiencyCertificate",
    "HallViolator",
    "Infeasible",
    "ListedSets",
    "Matching",
    "Mismatch",
    "MismatchReport",
    "NotBaby",
    "RawInstance",
    "RetryExhaustedError",
    "SizeLimitError",
    "SmpInstance",
    "StarGraph",
    "TriviallyUnsolvable",
    "Unsolvable",
    "WeightedBipartiteGraph",
    "assignment_violations",
    "baby_to_cmp",
    "build_star_graph",
    "build_weighted",
    "cmp_subproblems",
    "cmp_to_smp",
    "deficiency_certificate",
    "extract_assignment",
    "find_mismatches",
    "gen_assignment",
    "gen_chessboard",
    "gen_rooks",
    "gen_tournament",
    "hall_bicriteria",
    "hall_condition_cmp",
    "hungarian_max_weight",
    "is_list_compatible",
    "listed_sets",
    "max_matching",
    "oracle_solve",
    "pare_lists",
    "preprocess_refusals",
    "repair_mismatches",
    "solvable_via_weight",
    "solve",
    "solve_via_subproblems",
    "uncovered_left",
    "unsolvable_violator",
    "validate",
    "validate_raw",
    "weighted_assignment",
]
