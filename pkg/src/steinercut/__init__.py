"""Minimum Steiner cuts in undirected edge-weighted planar graphs.

The package couples an embedded-multigraph core (rotation systems, duality,
triangulation, path/cycle surgery) with a divide-and-conquer solver that
finds a minimum weight cut separating at least two of a given terminal set,
plus brute-force oracles, grid generators, and a text CLI.
"""

from __future__ import annotations

from .core import (
    CutOpen,
    EmbeddedGraph,
    FaceMarks,
    Piece,
    Triangulation,
    bridge_mask,
    build_graph,
    contract_edges,
    cut_along_path,
    dart,
    dual,
    face_sides,
    rev,
    split_by_cycle,
    triangulate,
)
from .core import carry_marks
from .separator import CycleSeparator, root_near_terminal, terminal_separator
from .oracle_gen import (
    OracleReport,
    delta_edges,
    gen_grid,
    oracle_pairflow,
    oracle_subset,
)
from .trees import (
    Orientation,
    TreePair,
    ccw_orientation,
    fundamental_cycle,
    interdigitating,
    shortest_path_tree,
    tree_from_mask,
)
from .stcut import CutResult, CycleFamily, min_st_cycle, reif_sweep
from .stats import SolveStats
from .errors import (
    BadSpec,
    BalanceFailure,
    DegenerateDual,
    EdgeInTree,
    EulerViolation,
    GraphError,
    MalformedRotation,
    NotAPath,
    NotConnected,
    NotSimple,
    NotSimpleCycle,
    NotSpanningTree,
    NotTriangulated,
    ParseError,
    SameFace,
    SelfLoop,
    TooFewTerminals,
    TooLarge,
    TooSmall,
)
from .weights import INFINITY, MAX_FINITE, ExtWeight

__all__ = [
    "EmbeddedGraph",
    "FaceMarks",
    "Triangulation",
    "CutOpen",
    "Piece",
    "ExtWeight",
    "INFINITY",
    "MAX_FINITE",
    "build_graph",
    "dual",
    "triangulate",
    "cut_along_path",
    "split_by_cycle",
    "face_sides",
    "bridge_mask",
    "contract_edges",
    "rev",
    "dart",
    "carry_marks",
    "CycleSeparator",
    "terminal_separator",
    "root_near_terminal",
    "TreePair",
    "Orientation",
    "shortest_path_tree",
    "tree_from_mask",
    "interdigitating",
    "fundamental_cycle",
    "ccw_orientation",
    "OracleReport",
    "gen_grid",
    "oracle_subset",
    "oracle_pairflow",
    "delta_edges",
    "CutResult",
    "CycleFamily",
    "min_st_cycle",
    "reif_sweep",
    "SolveStats",
    "GraphError",
    "MalformedRotation",
    "SelfLoop",
    "NotConnected",
    "EulerViolation",
    "DegenerateDual",
    "TooSmall",
    "NotAPath",
    "NotSimple",
    "NotSimpleCycle",
    "NotSpanningTree",
    "EdgeInTree",
    "NotTriangulated",
    "TooFewTerminals",
    "BalanceFailure",
    "SameFace",
    "TooLarge",
    "BadSpec",
    "ParseError",
]

__version__ = "0.1.0"
