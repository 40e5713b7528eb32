"""Exact fractional delegation for liquid democracy with ranked delegations."""
from .axioms import (
    AxiomReport,
    check_anonymity,
    check_confluence_factorization,
    check_copy_robustness,
    check_guru_participation,
    check_nonfractional_confluence,
    check_sink_inedge_monotonicity,
    impossibility_demo,
)
from .fulkerson import DualCertificate, run_fulkerson
from .graph_core import (
    Assignment,
    DelegationGraph,
    Edge,
    load_graph,
    preprocess_isolated,
    save_graph,
    validate,
)
from .mbb_solver import count_min_branchings, min_branching_cost, solve, solve_detailed
from .oracle import oracle_assignment
from .parametric_limit import ParametricChain, solve_parametric_limit, watershed
from .random_walk import rwr_estimate, rwr_limit_check
from .tree_count import WeightedDigraph, count_v_trees

__all__ = [
    "Assignment",
    "AxiomReport",
    "DelegationGraph",
    "DualCertificate",
    "Edge",
    "ParametricChain",
    "WeightedDigraph",
    "check_anonymity",
    "check_confluence_factorization",
    "check_copy_robustness",
    "check_guru_participation",
    "check_nonfractional_confluence",
    "check_sink_inedge_monotonicity",
    "count_min_branchings",
    "count_v_trees",
    "impossibility_demo",
    "load_graph",
    "min_branching_cost",
    "oracle_assignment",
    "preprocess_isolated",
    "rwr_estimate",
    "rwr_limit_check",
    "run_fulkerson",
    "save_graph",
    "solve",
    "solve_detailed",
    "solve_parametric_limit",
    "validate",
    "watershed",
]
