//! Isomorph-free generation of free trees at small orders, and labeled-tree
//! helpers for randomized testing.
//!
//! Rooted trees are generated as canonical level sequences via the classic
//! lexicographic successor rule, one representative per rooted isomorphism
//! class. Free trees with a one-vertex centroid are the rooted trees whose
//! root is that centroid; free trees with a two-vertex centroid split across
//! the centroid edge into an unordered pair of equal-size rooted halves, so
//! they are generated by pairing the rooted trees on `n/2` vertices.

use rand::Rng;

use crate::error::{Error, Result};
use crate::tree::Tree;

/// Exhaustive enumeration cap: free-tree counts roughly triple per vertex.
pub const MAX_ENUMERATION_ORDER: usize = 18;

/// Canonical level sequences of rooted trees on `n` vertices, lexicographically
/// descending from the path. The root sits at level 1 and every entry is the
/// level of the next vertex in preorder.
#[derive(Debug)]
struct RootedLevelSeqs {
    levels: Vec<usize>,
    fresh: bool,
    done: bool,
}

impl RootedLevelSeqs {
    fn new(n: usize) -> Self {
        RootedLevelSeqs {
            levels: (1..=n).collect(),
            fresh: true,
            done: n == 0,
        }
    }

    fn advance(&mut self) -> bool {
        let levels = &mut self.levels;
        let n = levels.len();
        let Some(p) = (0..n).rev().find(|&i| levels[i] > 2) else {
            return false;
        };
        let q = (0..p).rev().find(|&i| levels[i] == levels[p] - 1).unwrap();
        for i in p..n {
            levels[i] = levels[i - (p - q)];
        }
        true
    }
}

impl Iterator for RootedLevelSeqs {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.fresh {
            self.fresh = false;
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(self.levels.clone())
    }
}

/// Edges of the rooted tree a level sequence encodes, vertices numbered in
/// sequence order with the root as vertex 1.
fn edges_from_levels(levels: &[usize]) -> Vec<(usize, usize)> {
    let n = levels.len();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut last_at_level = vec![0usize; n + 2];
    last_at_level[levels[0]] = 1;
    for (i, &level) in levels.iter().enumerate().skip(1) {
        let v = i + 1;
        edges.push((last_at_level[level - 1], v));
        last_at_level[level] = v;
    }
    edges
}

/// Stream of free trees of order `n`, one per isomorphism class.
#[derive(Debug)]
pub struct FreeTrees {
    n: usize,
    rooted: Option<RootedLevelSeqs>,
    halves: Vec<Vec<(usize, usize)>>,
    pair: (usize, usize),
}

impl FreeTrees {
    fn join_halves(&self, i: usize, j: usize) -> Tree {
        let half = self.n / 2;
        let mut edges: Vec<(usize, usize)> = self.halves[i].clone();
        edges.extend(self.halves[j].iter().map(|&(u, v)| (u + half, v + half)));
        edges.push((1, half + 1));
        Tree::from_edge_list(self.n, &edges).expect("joined halves form a tree")
    }
}

impl Iterator for FreeTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        while let Some(seqs) = self.rooted.as_mut() {
            match seqs.next() {
                Some(levels) => {
                    let tree = Tree::from_edge_list(self.n, &edges_from_levels(&levels))
                        .expect("level sequence encodes a tree");
                    if tree.centroid().vertices() == [1] {
                        return Some(tree);
                    }
                }
                None => {
                    self.rooted = None;
                    if self.n.is_multiple_of(2) {
                        self.halves = RootedLevelSeqs::new(self.n / 2)
                            .map(|levels| edges_from_levels(&levels))
                            .collect();
                        self.pair = (0, 0);
                    }
                }
            }
        }
        let (i, j) = self.pair;
        if i >= self.halves.len() {
            return None;
        }
        let tree = self.join_halves(i, j);
        self.pair = if j + 1 < self.halves.len() {
            (i, j + 1)
        } else {
            (i + 1, i + 1)
        };
        Some(tree)
    }
}

/// One representative per isomorphism class of trees on `n` vertices,
/// for `1 <= n <= 18`.
pub fn enumerate_free_trees(n: usize) -> Result<FreeTrees> {
    if n == 0 {
        return Err(Error::InvalidParams {
            reason: "order must be positive".into(),
        });
    }
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::TooLarge {
            n,
            max: MAX_ENUMERATION_ORDER,
        });
    }
    Ok(FreeTrees {
        n,
        rooted: Some(RootedLevelSeqs::new(n)),
        halves: Vec::new(),
        pair: (0, 0),
    })
}

/// Decodes a Prüfer sequence (length `n - 2`, entries in `1..=n`) into the
/// labeled tree it encodes.
pub fn tree_from_prufer(n: usize, seq: &[usize]) -> Result<Tree> {
    if n == 0 {
        return Err(Error::InvalidParams {
            reason: "order must be positive".into(),
        });
    }
    if seq.len() != n.saturating_sub(2) {
        return Err(Error::InvalidParams {
            reason: format!("sequence length {} differs from n - 2 = {}", seq.len(), n.saturating_sub(2)),
        });
    }
    for &v in seq {
        if v == 0 || v > n {
            return Err(Error::VertexOutOfRange { v, n });
        }
    }
    if n == 1 {
        return Tree::from_edge_list(1, &[]);
    }
    let mut degree = vec![1usize; n + 1];
    for &v in seq {
        degree[v] += 1;
    }
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;
    let mut leaves: BinaryHeap<Reverse<usize>> = (1..=n)
        .filter(|&v| degree[v] == 1)
        .map(Reverse)
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let Reverse(leaf) = leaves.pop().expect("a leaf always remains");
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.push(Reverse(s));
        }
    }
    let Reverse(u) = leaves.pop().unwrap();
    let Reverse(v) = leaves.pop().unwrap();
    edges.push((u, v));
    Tree::from_edge_list(n, &edges)
}

/// Uniform random labeled tree on `n` vertices via a random Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Tree {
    if n <= 2 {
        return if n <= 1 {
            Tree::from_edge_list(1, &[]).unwrap()
        } else {
            Tree::from_edge_list(2, &[(1, 2)]).unwrap()
        };
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
    tree_from_prufer(n, &seq).expect("random sequence is well-formed")
}
