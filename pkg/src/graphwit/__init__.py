"""Entanglement witnesses for graph states.

Construct analytic witnesses (projector, subset-based, combined, torus,
two-setting), search LP-optimal ones, compute white-noise tolerances and the
genuine-multipartite-entanglement monotone, and verify every claim against a
dense brute-force oracle at small sizes.
"""

from ._kernels import HAVE_EXT
from .diagops import (
    DiagonalOperator,
    GraphDiagonalState,
    pure_graph_state,
    wht_forward,
    wht_inverse,
    white_noise_state,
)
from .graphs import (
    Bipartition,
    BSet,
    Graph,
    catalog_graph,
    enumerate_bipartitions,
    enumerate_bsets,
    is_valid_bset,
    local_complement,
    make_named,
)
from .lp import (
    LPProblem,
    LPSolution,
    certify_decomposable,
    detection_threshold,
    is_ppt_mixture,
    monotone_n,
    optimal_witness,
    simplex_solve,
)
from .witnesses import (
    WitnessRecord,
    bset_ppt_witness,
    bset_witness,
    catalog_witness,
    combine_min,
    projector_witness,
    torus_witness,
    two_setting_improved,
    two_setting_witness,
    white_noise_tolerance,
)

__version__ = "0.1.0"

__all__ = [
    "HAVE_EXT",
    "Graph",
    "Bipartition",
    "BSet",
    "DiagonalOperator",
    "GraphDiagonalState",
    "WitnessRecord",
    "LPProblem",
    "LPSolution",
    "make_named",
    "catalog_graph",
    "catalog_witness",
    "enumerate_bipartitions",
    "enumerate_bsets",
    "is_valid_bset",
    "local_complement",
    "pure_graph_state",
    "white_noise_state",
    "wht_forward",
    "wht_inverse",
    "projector_witness",
    "bset_witness",
    "bset_ppt_witness",
    "combine_min",
    "torus_witness",
    "two_setting_witness",
    "two_setting_improved",
    "white_noise_tolerance",
    "optimal_witness",
    "detection_threshold",
    "is_ppt_mixture",
    "certify_decomposable",
    "monotone_n",
    "simplex_solve",
]
