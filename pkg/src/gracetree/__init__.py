"""Graceful and strongly graceful labellings of trees.

The label permutations ``r``, ``g1``, ``g2`` and their group, the
spike-tree equivalence, an inductive strong labeller for lobsters whose end
edges form a perfect matching, and exhaustive searches around the open
cases.
"""

from .equivalence import lift_to_spike, project_to_contree
from .labelling import (
    AnchorPath,
    LabelPermutation,
    Labelling,
    anchored_quad_from,
    apply_perm,
    compose,
    edge_label,
    extract_anchor_path,
    is_generalized_strong_perm,
    is_graceful,
    is_graceful_perm,
    is_strongly_graceful,
    perm_g1,
    perm_g2,
    perm_identity,
    perm_r,
)
from .lobster import StrongQuad, check_lemma3, strip_step, theorem4_label
from .search import (
    SearchReport,
    brute_force_labellings,
    classify_theorem5_case,
    enumerate_family,
    enumerate_free_trees,
    explore_case2b,
    hunt_generalized_perms,
    verify_lemma2_part1,
)
from .tree import (
    Matching,
    Spine,
    Tree,
    canonical_form,
    contract_matching,
    diameter,
    end_edge_perfect_matching,
    end_edges,
    is_k_distant,
    longest_path,
    make_spine,
    parse_tree,
    spike,
)

__all__ = [
    "AnchorPath",
    "LabelPermutation",
    "Labelling",
    "Matching",
    "SearchReport",
    "Spine",
    "StrongQuad",
    "Tree",
    "anchored_quad_from",
    "apply_perm",
    "brute_force_labellings",
    "canonical_form",
    "check_lemma3",
    "classify_theorem5_case",
    "compose",
    "contract_matching",
    "diameter",
    "edge_label",
    "end_edge_perfect_matching",
    "end_edges",
    "enumerate_family",
    "enumerate_free_trees",
    "explore_case2b",
    "extract_anchor_path",
    "hunt_generalized_perms",
    "is_generalized_strong_perm",
    "is_graceful",
    "is_graceful_perm",
    "is_k_distant",
    "is_strongly_graceful",
    "lift_to_spike",
    "longest_path",
    "make_spine",
    "parse_tree",
    "perm_g1",
    "perm_g2",
    "perm_identity",
    "perm_r",
    "project_to_contree",
    "spike",
    "strip_step",
    "theorem4_label",
    "verify_lemma2_part1",
]

__version__ = "0.1.0"
