"""Optimal hash-tree topologies for parallel rate-1 hash modes.

Plans minimal-running-time arity multisets, builds the corresponding
same-depth trees, reworks the rightmost path to cut processors and work,
and verifies everything against brute-force oracles.
"""

from treeplan.planner import (
    ArityPlan,
    CaseSelection,
    minimal_index,
    plan_arities,
    plan_message,
    select_case,
    validate_constraints,
)
from treeplan.topology import (
    CompactForm,
    Metrics,
    Node,
    Topology,
    build_same_depth,
    from_compact,
    level_counts,
    metrics,
    rightmost_profile,
    running_time,
    to_compact,
    work,
)
from treeplan.rework import ReworkedTopology, largest_feasible_base, rebuild_subtree, rework

__all__ = [
    "ArityPlan",
    "CaseSelection",
    "CompactForm",
    "Metrics",
    "Node",
    "ReworkedTopology",
    "Topology",
    "build_same_depth",
    "from_compact",
    "largest_feasible_base",
    "level_counts",
    "metrics",
    "minimal_index",
    "plan_arities",
    "plan_message",
    "rebuild_subtree",
    "rework",
    "rightmost_profile",
    "running_time",
    "select_case",
    "to_compact",
    "validate_constraints",
    "work",
]

__version__ = "0.1.0"
