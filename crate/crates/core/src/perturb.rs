//! The two tree perturbations used throughout: relocating a pendant vertex
//! and relocating a hanging path. Each comes with an exact verifier for the
//! subtree-counting identity it satisfies, evaluated subtraction-free in
//! big integers.
//!
//! Moved vertices keep their labels; results are fresh validated trees on
//! the same vertex set.

use num_bigint::BigUint;

use crate::count::{count_at_vertex, count_with_set, subtree_core};
use crate::error::{Error, Result};
use crate::tree::{MiddleSet, Tree};

/// Detach pendant `pendant` and re-attach it as a pendant of `dest`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeafMove {
    pub pendant: usize,
    pub dest: usize,
}

/// Detach the hanging path `path` (first vertex adjacent to `anchor`, last
/// vertex pendant) from `anchor` and re-attach its first vertex to `dest`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathMove {
    pub anchor: usize,
    pub path: Vec<usize>,
    pub dest: usize,
}

impl LeafMove {
    pub fn new(pendant: usize, dest: usize) -> Self {
        LeafMove { pendant, dest }
    }

    /// Checks the move against `tree`; returns the pendant's current neighbor.
    pub fn validate(&self, tree: &Tree) -> Result<usize> {
        tree.check_vertex(self.pendant)?;
        tree.check_vertex(self.dest)?;
        if self.pendant == self.dest {
            return Err(Error::SameVertex { v: self.pendant });
        }
        if !tree.is_pendant(self.pendant) {
            return Err(Error::NotPendant { v: self.pendant });
        }
        if tree.has_edge(self.pendant, self.dest) {
            return Err(Error::AdjacentAlready {
                y: self.pendant,
                w: self.dest,
            });
        }
        Ok(tree.neighbors(self.pendant)[0])
    }
}

/// Applies a leaf move; the result is a tree on the same vertex set with the
/// pendant still of degree one and the destination's degree grown by one.
pub fn relocate_leaf(tree: &Tree, mv: &LeafMove) -> Result<Tree> {
    let old_neighbor = mv.validate(tree)?;
    let dropped = (
        mv.pendant.min(old_neighbor),
        mv.pendant.max(old_neighbor),
    );
    let mut edges: Vec<(usize, usize)> = tree
        .edges()
        .iter()
        .copied()
        .filter(|&e| e != dropped)
        .collect();
    edges.push((mv.pendant, mv.dest));
    Tree::from_edge_list(tree.n(), &edges)
}

/// Checks the exact count identity a leaf move satisfies at vertex `a`:
/// the moved tree's count at `a` equals
/// `f(a) - f(a,y) + f(a,w) - f(a,w,y)` on the source tree, compared here in
/// the rearranged all-additive form. Always true for a valid move.
pub fn verify_leaf_identity(tree: &Tree, mv: &LeafMove, a: usize) -> Result<bool> {
    mv.validate(tree)?;
    tree.check_vertex(a)?;
    if a == mv.pendant {
        return Err(Error::InvalidParams {
            reason: format!("identity vertex a={a} must differ from the moved pendant"),
        });
    }
    let moved = relocate_leaf(tree, mv)?;
    let (y, w) = (mv.pendant, mv.dest);
    let lhs = count_at_vertex(&moved, a)?
        + count_with_set(tree, &[a, y])?
        + count_with_set(tree, &[a, w, y])?;
    let rhs = count_at_vertex(tree, a)? + count_with_set(tree, &[a, w])?;
    Ok(lhs == rhs)
}

/// Checks the three stepwise identities through the intermediate tree
/// `T' = T - pendant`: with `a'`, `w'` the relabeled images of `a`, `w`,
///
/// 1. moved count at `a` equals `f'(a') + f'(a', w')`,
/// 2. `f'(a')` equals `f(a) - f(a, y)`,
/// 3. `f'(a', w')` equals `f(a, w) - f(a, w, y)`.
pub fn verify_intermediate_identities(tree: &Tree, mv: &LeafMove, a: usize) -> Result<bool> {
    let old_neighbor = mv.validate(tree)?;
    tree.check_vertex(a)?;
    if a == mv.pendant {
        return Err(Error::InvalidParams {
            reason: format!("identity vertex a={a} must differ from the moved pendant"),
        });
    }
    let (y, w) = (mv.pendant, mv.dest);
    let (stripped, to_old) = tree.component_without_edge(old_neighbor, y)?;
    let relabel = |v: usize| -> usize {
        to_old[1..]
            .binary_search(&v)
            .expect("vertex survives pendant removal")
            + 1
    };
    let moved = relocate_leaf(tree, mv)?;
    let a_new = relabel(a);
    let w_new = relabel(w);

    let stripped_a = count_at_vertex(&stripped, a_new)?;
    let stripped_aw = count_with_set(&stripped, &[a_new, w_new])?;
    let join = count_at_vertex(&moved, a)? == &stripped_a + &stripped_aw;
    let drop_single = &stripped_a + count_with_set(tree, &[a, y])? == count_at_vertex(tree, a)?;
    let drop_pair =
        &stripped_aw + count_with_set(tree, &[a, w, y])? == count_with_set(tree, &[a, w])?;
    Ok(join && drop_single && drop_pair)
}

/// Moves a non-adjacent pendant onto a subtree-core vertex `v` and returns
/// the new core, which is exactly `{v}`. A differing core is reported as
/// [`Error::CoreMismatch`] and indicates a bug, never a legitimate outcome.
pub fn core_after_leaf_move(tree: &Tree, v: usize, mv: &LeafMove) -> Result<MiddleSet> {
    if mv.dest != v {
        return Err(Error::InvalidParams {
            reason: format!("move destination {} must be the core vertex {v}", mv.dest),
        });
    }
    if !subtree_core(tree).contains(v) {
        return Err(Error::InvalidParams {
            reason: format!("vertex {v} is not in the subtree core"),
        });
    }
    let moved = relocate_leaf(tree, mv)?;
    let core = subtree_core(&moved);
    if core.vertices() != [v] {
        return Err(Error::CoreMismatch {
            expected: v,
            got: core.vertices().to_vec(),
        });
    }
    Ok(core)
}

impl PathMove {
    pub fn new(anchor: usize, path: Vec<usize>, dest: usize) -> Self {
        PathMove { anchor, path, dest }
    }

    /// Number of vertices on the moved path.
    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    pub fn validate(&self, tree: &Tree) -> Result<()> {
        tree.check_vertex(self.anchor)?;
        tree.check_vertex(self.dest)?;
        for &v in &self.path {
            tree.check_vertex(v)?;
        }
        if self.path.is_empty() {
            return Err(Error::InvalidHangingPath {
                reason: "path is empty".into(),
            });
        }
        if tree.degree(self.anchor) < 3 {
            return Err(Error::InvalidHangingPath {
                reason: format!("anchor {} has degree < 3", self.anchor),
            });
        }
        if !tree.has_edge(self.anchor, self.path[0]) {
            return Err(Error::InvalidHangingPath {
                reason: format!("{} is not adjacent to anchor {}", self.path[0], self.anchor),
            });
        }
        let m = self.path.len();
        for i in 0..m {
            let v = self.path[i];
            let expected_degree = if i + 1 == m { 1 } else { 2 };
            if tree.degree(v) != expected_degree {
                return Err(Error::InvalidHangingPath {
                    reason: format!(
                        "path vertex {v} has degree {}, expected {expected_degree}",
                        tree.degree(v)
                    ),
                });
            }
            if i + 1 < m && !tree.has_edge(v, self.path[i + 1]) {
                return Err(Error::InvalidHangingPath {
                    reason: format!("{v} and {} are not adjacent", self.path[i + 1]),
                });
            }
        }
        if self.dest == self.anchor {
            return Err(Error::BadDestination {
                z: self.dest,
                reason: "destination equals the anchor".into(),
            });
        }
        if self.path.contains(&self.dest) {
            return Err(Error::BadDestination {
                z: self.dest,
                reason: "destination lies on the moved path".into(),
            });
        }
        Ok(())
    }
}

/// Applies a path move: the edge from the anchor to the path's first vertex
/// is replaced by an edge from the destination to that vertex.
pub fn relocate_path(tree: &Tree, mv: &PathMove) -> Result<Tree> {
    mv.validate(tree)?;
    let first = mv.path[0];
    let dropped = (mv.anchor.min(first), mv.anchor.max(first));
    let mut edges: Vec<(usize, usize)> = tree
        .edges()
        .iter()
        .copied()
        .filter(|&e| e != dropped)
        .collect();
    edges.push((mv.dest, first));
    Tree::from_edge_list(tree.n(), &edges)
}

/// Checks the fraction-cleared count identity a path move satisfies at a
/// vertex `a` off the moved path, with `m` the path length, `y` the anchor
/// and `z` the destination:
///
/// `(m+1) f~(a) + m f(a,y) + m^2 f(a,z,y) = (m+1) f(a) + m(m+1) f(a,z)`.
pub fn verify_path_identity(tree: &Tree, mv: &PathMove, a: usize) -> Result<bool> {
    mv.validate(tree)?;
    tree.check_vertex(a)?;
    if mv.path.contains(&a) {
        return Err(Error::InvalidParams {
            reason: format!("identity vertex a={a} must avoid the moved path"),
        });
    }
    let moved = relocate_path(tree, mv)?;
    let m = BigUint::from(mv.path.len());
    let m1 = &m + 1u32;
    let (y, z) = (mv.anchor, mv.dest);
    let lhs = &m1 * count_at_vertex(&moved, a)?
        + &m * count_with_set(tree, &[a, y])?
        + &m * &m * count_with_set(tree, &[a, z, y])?;
    let rhs = &m1 * count_at_vertex(tree, a)? + &m * &m1 * count_with_set(tree, &[a, z])?;
    Ok(lhs == rhs)
}
