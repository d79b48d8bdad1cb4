"""Continuous encodings of NP problems, geometric reductions and graph invariants.

The heavy lifting happens in the compiled ``_core`` extension; this package
re-exports it and adds a few conveniences.
"""

from ._core import (  # noqa: F401
    Formula,
    Graph,
    InstanceTooLarge,
    Polynomial,
    boolean_minimum,
    boolean_penalty,
    census,
    clique_objective_max,
    compare_srg,
    cosine_integral,
    cosine_integral_exact,
    default_config,
    encode,
    encodings,
    factorization_objective,
    hamilton_cycle,
    hamilton_oracle,
    hamilton_trace,
    multi_start,
    plane_hypercube_points,
    plane_to_sphere,
    power_sum,
    power_sum_brute,
    reduce_plane,
    rook_graph,
    sat_monomial_count,
    sat_oracle,
    shrikhande_graph,
    solve_subset_sum,
    srg_invariants,
    srg_parameters,
    zero_sign_patterns,
)

__version__ = "0.1.0"


def load_formula(path):
    """Read a DIMACS CNF file."""
    with open(path, encoding="utf-8") as fh:
        return Formula.from_dimacs(fh.read())


def load_graph(path):
    """Read an edge-list or DIMACS graph file."""
    with open(path, encoding="utf-8") as fh:
        return Graph.parse(fh.read())
