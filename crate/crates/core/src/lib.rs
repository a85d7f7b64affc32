//! Exact combinatorics of tree middle parts.
//!
//! The library computes the three classical middle parts of a tree — the
//! center (minimum eccentricity), the centroid (minimum branch weight) and
//! the subtree core (maximum number of containing subtrees) — with exact
//! big-integer counting. Around that sit closed forms for the path-star
//! family, the leaf and hanging-path perturbations with machine-checkable
//! counting identities, and isomorph-free exhaustive surveys of the pairwise
//! distances between the middle parts over all free trees at small orders.

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
pub struct ReadmeDoctests;

pub mod canon;
pub mod count;
pub mod error;
pub mod extremal;
pub mod generate;
pub mod pathstar;
pub mod perturb;
pub mod tree;

pub use canon::{canonical_code, CanonicalCode};
pub use count::{
    brute_force_count, count_all_vertices, count_at_vertex, count_with_set, subtree_core, Count,
    CountTable,
};
pub use error::{Error, Result};
pub use extremal::{
    betweenness_counterexample_tree, centroid_between, double_broom, find_betweenness_violations,
    gamma_argmax, survey, trees_with_distinct_middles, DistinctMiddlesWitness, ExtremalRecord,
    Metric,
};
pub use generate::{enumerate_free_trees, random_tree, tree_from_prufer, FreeTrees};
pub use pathstar::{
    center_core_distance_bound, centroid_core_distance_bound, gamma_threshold, GammaThreshold,
    PathStarParams,
};
pub use perturb::{
    core_after_leaf_move, relocate_leaf, relocate_path, verify_intermediate_identities,
    verify_leaf_identity, verify_path_identity, LeafMove, PathMove,
};
pub use tree::{parse_edge_list, write_edge_list, MiddleKind, MiddleSet, Tree};
