"""Counting irreducible rational contact curves in odd-dimensional projective space."""
from .classes import ConditionMultiset, UnstableError, moduli_dim, parse_condition_spec, stratum_dim
from .localization import LocalizationEngine, NonIntegralError, WeightMismatchError, gw_integral
from .memo import MemoStore
from .strata import (
    LabeledQuery,
    StrataCalculator,
    graph_count,
    irreducible_count,
    potential_coefficient,
    single_vertex_closure_integral,
    stratum_integral,
)
from .trees import (
    EdgeSplit,
    StableTree,
    automorphism_order,
    canonical_key,
    codimension,
    decompose_at_edge,
    enumerate_stable_trees,
    glue,
    validate,
)

__all__ = [
    "ConditionMultiset",
    "EdgeSplit",
    "LabeledQuery",
    "LocalizationEngine",
    "MemoStore",
    "NonIntegralError",
    "StableTree",
    "StrataCalculator",
    "UnstableError",
    "WeightMismatchError",
    "automorphism_order",
    "canonical_key",
    "codimension",
    "decompose_at_edge",
    "enumerate_stable_trees",
    "glue",
    "graph_count",
    "gw_integral",
    "irreducible_count",
    "moduli_dim",
    "parse_condition_spec",
    "potential_coefficient",
    "single_vertex_closure_integral",
    "stratum_dim",
    "stratum_integral",
    "validate",
]
__version__ = "0.1.0"
