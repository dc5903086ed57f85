"""Exponential-time approximation for independent set, coloring and hypergraph vertex cover."""

from .branching import (
    BranchRng,
    PreconditionError,
    RunStats,
    SolveConfig,
    boosted_is,
    branch_is,
    compute_lambda,
    node_bound,
    partition_baseline_is,
)
from .coloring import (
    Coloring,
    chr_approx,
    chr_approx_wrapped,
    chromatic_bruteforce,
    optcol,
    verify_coloring,
)
from .errors import ContractViolation, ParseError, XtaError
from .fglss import (
    Csp,
    FglssGraph,
    csp_val_bruteforce,
    fglss_reduce,
    freeness,
    gen_random_csp,
)
from .generators import gen_gnp, gen_hypergraph, gen_planted_is
from .graph import Graph, Hypergraph, from_mask, to_mask
from .io import emit_dimacs_col, emit_hypergraph, parse_dimacs_col, parse_hypergraph
from .leaf import (
    LeafIsSolver,
    enumerate_is_of_size,
    exact_mis,
    exact_vc,
    get_leaf_solver,
    greedy_is,
    matching_vc,
)
from .vertex_cover import SparsifiedFamily, halperin_gap_estimate, sparsify_vc, vc_pipeline

__version__ = "0.1.0"
