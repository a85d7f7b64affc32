//! Exhaustive verification over all free trees of small order: extremal
//! surveys of the pairwise distances between the three middle parts,
//! centroid-betweenness checks and the search for their violations, and the
//! reconstructed special trees used as fixed checks.

use rayon::prelude::*;

use crate::canon::{canonical_code, CanonicalCode};
use crate::count::{count_all_vertices, count_at_vertex, subtree_core, Count};
use crate::error::{Error, Result};
use crate::generate::enumerate_free_trees;
use crate::pathstar::{
    center_core_distance_bound, centroid_core_distance_bound, gamma_threshold, PathStarParams,
};
use crate::tree::Tree;

/// Which pairwise middle-part distance a survey maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    /// Distance between center and subtree core.
    CenterCore,
    /// Distance between centroid and subtree core.
    CentroidCore,
    /// Distance between center and centroid.
    CenterCentroid,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::CenterCore, Metric::CentroidCore, Metric::CenterCentroid];

    /// The distance this metric measures, on any tree.
    pub fn evaluate(&self, tree: &Tree) -> usize {
        let (from, to) = match self {
            Metric::CenterCore => (tree.center(), subtree_core(tree)),
            Metric::CentroidCore => (tree.centroid(), subtree_core(tree)),
            Metric::CenterCentroid => (tree.center(), tree.centroid()),
        };
        tree.set_distance(from.vertices(), to.vertices())
            .expect("middle sets are nonempty and in range")
    }

    /// Proven upper bound over all trees of order `n >= 5`.
    pub fn distance_bound(&self, n: usize) -> Result<usize> {
        match self {
            Metric::CenterCore => center_core_distance_bound(n),
            Metric::CentroidCore => centroid_core_distance_bound(n),
            Metric::CenterCentroid => {
                gamma_threshold(n)?; // order validation
                Ok((n - 3) / 4)
            }
        }
    }

    /// Pendant count of the path-star expected to attain the maximum at
    /// order `n`: the threshold count for the two core metrics, `floor(n/2)`
    /// for center–centroid.
    pub fn extremal_pendant_count(&self, n: usize) -> Result<usize> {
        match self {
            Metric::CenterCore | Metric::CentroidCore => Ok(gamma_threshold(n)?.g0),
            Metric::CenterCentroid => {
                gamma_threshold(n)?;
                Ok(n / 2)
            }
        }
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Metric::CenterCore => write!(f, "c-sc"),
            Metric::CentroidCore => write!(f, "cd-sc"),
            Metric::CenterCentroid => write!(f, "c-cd"),
        }
    }
}

/// Result of an exhaustive survey at one order: the maximum of a metric over
/// all free trees, with every maximizing isomorphism class.
#[derive(Debug, Clone)]
pub struct ExtremalRecord {
    pub n: usize,
    pub metric: Metric,
    pub max_value: usize,
    /// Canonical codes of all maximizers, sorted.
    pub maximizers: Vec<CanonicalCode>,
    pub tree_count: u64,
}

impl ExtremalRecord {
    /// The proven bound this record is checked against.
    pub fn distance_bound(&self) -> usize {
        self.metric
            .distance_bound(self.n)
            .expect("records exist only for n >= 5")
    }

    pub fn bound_ok(&self) -> bool {
        self.max_value <= self.distance_bound()
    }

    /// The path-star expected among the maximizers.
    pub fn reference_pathstar(&self) -> PathStarParams {
        let g = self
            .metric
            .extremal_pendant_count(self.n)
            .expect("records exist only for n >= 5");
        PathStarParams::new(self.n, g).expect("extremal pendant count is in range")
    }

    /// Whether the reference path-star's isomorphism class attains the max.
    pub fn pathstar_attains(&self) -> bool {
        let code = canonical_code(&self.reference_pathstar().build());
        self.maximizers.binary_search(&code).is_ok()
    }
}

/// Maximizes `metric` over every free tree of order `n`, `5 <= n <= 18`.
/// Tree analysis fans out to the rayon pool; the result is deterministic
/// regardless of worker count.
pub fn survey(n: usize, metric: Metric) -> Result<ExtremalRecord> {
    if n < 5 {
        return Err(Error::InvalidParams {
            reason: format!("survey needs n >= 5, got {n}"),
        });
    }
    let trees: Vec<Tree> = enumerate_free_trees(n)?.collect();
    let scored: Vec<(usize, CanonicalCode)> = trees
        .par_iter()
        .map(|t| (metric.evaluate(t), canonical_code(t)))
        .collect();
    let max_value = scored.iter().map(|&(v, _)| v).max().unwrap();
    let mut maximizers: Vec<CanonicalCode> = scored
        .into_iter()
        .filter(|&(v, _)| v == max_value)
        .map(|(_, code)| code)
        .collect();
    maximizers.sort();
    Ok(ExtremalRecord {
        n,
        metric,
        max_value,
        maximizers,
        tree_count: trees.len() as u64,
    })
}

/// The smallest pendant count maximizing `metric` over the path-star family
/// of order `n` (direct computation per member).
pub fn gamma_argmax(n: usize, metric: Metric) -> Result<usize> {
    if n < 5 {
        return Err(Error::InvalidParams {
            reason: format!("family sweep needs n >= 5, got {n}"),
        });
    }
    let mut best: Option<(usize, usize)> = None; // (value, g)
    for g in 2..=n - 3 {
        let value = metric.evaluate(&PathStarParams::new(n, g)?.build());
        if best.is_none_or(|(v, _)| value > v) {
            best = Some((value, g));
        }
    }
    Ok(best.expect("the family is nonempty for n >= 5").1)
}

/// True when every centroid vertex lies on some path from a center vertex to
/// a subtree-core vertex.
pub fn centroid_between(tree: &Tree) -> bool {
    let center = tree.center();
    let core = subtree_core(tree);
    let centroid = tree.centroid();
    for &c in center.vertices() {
        for &s in core.vertices() {
            let path = tree
                .path_between(c, s)
                .expect("middle vertices are in range");
            if centroid.vertices().iter().all(|v| path.contains(v)) {
                return true;
            }
        }
    }
    false
}

/// Canonical codes of all free trees of order `n` on which the centroid
/// escapes every center-to-core path, sorted.
pub fn find_betweenness_violations(n: usize) -> Result<Vec<CanonicalCode>> {
    let trees: Vec<Tree> = enumerate_free_trees(n)?.collect();
    let mut codes: Vec<CanonicalCode> = trees
        .par_iter()
        .filter(|t| !centroid_between(t))
        .map(canonical_code)
        .collect();
    codes.sort();
    Ok(codes)
}

/// A double-broom: spine `1..=spine_len`, `interior_pendants` extra pendant
/// vertices at `attach`, and `end_pendants` extra pendant vertices at the
/// spine end. Path-stars are the `interior_pendants == 0` members.
pub fn double_broom(
    spine_len: usize,
    attach: usize,
    interior_pendants: usize,
    end_pendants: usize,
) -> Result<Tree> {
    if spine_len == 0 {
        return Err(Error::InvalidParams {
            reason: "spine must be nonempty".into(),
        });
    }
    if attach == 0 || attach > spine_len {
        return Err(Error::InvalidParams {
            reason: format!("attachment vertex {attach} outside spine 1..={spine_len}"),
        });
    }
    let n = spine_len + interior_pendants + end_pendants;
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..spine_len {
        edges.push((i, i + 1));
    }
    for v in spine_len + 1..=spine_len + interior_pendants {
        edges.push((attach, v));
    }
    for v in spine_len + interior_pendants + 1..=n {
        edges.push((spine_len, v));
    }
    Tree::from_edge_list(n, &edges)
}

/// The 27-vertex tree on which the centroid leaves every center-to-core
/// path: spine `1..=16`, four pendants at vertex 9 and seven at vertex 16.
/// Construction re-derives and checks the quantities that force it — the
/// middle parts, the two split counts at the edge `{9, 10}`, and the count
/// gap between vertices 9 and 10 — and fails loudly on any mismatch.
pub fn betweenness_counterexample_tree() -> Result<Tree> {
    let tree = double_broom(16, 9, 4, 7)?;
    let mismatch = |check: &str| Error::ReconstructionMismatch {
        check: check.to_string(),
    };
    if tree.center().vertices() != [9] {
        return Err(mismatch("center is {9}"));
    }
    if tree.centroid().vertices() != [10] {
        return Err(mismatch("centroid is {10}"));
    }
    if subtree_core(&tree).vertices() != [9] {
        return Err(mismatch("subtree core is {9}"));
    }
    let side_count = |keep: usize, drop: usize| -> Result<Count> {
        let (component, to_old) = tree.component_without_edge(keep, drop)?;
        let local = to_old[1..]
            .binary_search(&keep)
            .expect("kept vertex is in its component")
            + 1;
        count_at_vertex(&component, local)
    };
    if side_count(9, 10)? != Count::from(144u32) {
        return Err(mismatch("count at 9 in the left split is 144"));
    }
    if side_count(10, 9)? != Count::from(134u32) {
        return Err(mismatch("count at 10 in the right split is 134"));
    }
    let table = count_all_vertices(&tree);
    if table.get(9) != &(table.get(10) + Count::from(10u32)) {
        return Err(mismatch("count gap between 9 and 10 is 10"));
    }
    Ok(tree)
}

/// A tree whose center, centroid and subtree core are pairwise disjoint.
#[derive(Debug, Clone)]
pub struct DistinctMiddlesWitness {
    pub code: CanonicalCode,
    /// The maximum per-vertex subtree count of the witness.
    pub max_count: Count,
}

/// All free trees of order `n` whose three middle parts are pairwise
/// disjoint, sorted by code.
pub fn trees_with_distinct_middles(n: usize) -> Result<Vec<DistinctMiddlesWitness>> {
    let trees: Vec<Tree> = enumerate_free_trees(n)?.collect();
    let mut witnesses: Vec<DistinctMiddlesWitness> = trees
        .par_iter()
        .filter_map(|t| {
            let center = t.center();
            let centroid = t.centroid();
            let table = count_all_vertices(t);
            let core = table.max_vertices();
            let disjoint = |a: &[usize], b: &[usize]| a.iter().all(|v| !b.contains(v));
            if disjoint(center.vertices(), centroid.vertices())
                && disjoint(center.vertices(), &core)
                && disjoint(centroid.vertices(), &core)
            {
                Some(DistinctMiddlesWitness {
                    code: canonical_code(t),
                    max_count: table.max_count().clone(),
                })
            } else {
                None
            }
        })
        .collect();
    witnesses.sort_by(|a, b| a.code.cmp(&b.code));
    Ok(witnesses)
}
