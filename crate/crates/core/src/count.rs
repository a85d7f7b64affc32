//! Exact subtree counting: the number of subtrees containing prescribed
//! vertices, the per-vertex count table, the subtree core, and a bitmask
//! brute-force oracle for small trees.
//!
//! Counts grow like `2^degree`, so everything is arbitrary precision. No
//! division is used anywhere: the rerooted table is built from prefix and
//! suffix products of neighbor factors.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::tree::{MiddleKind, MiddleSet, Tree};

/// Exact nonnegative subtree count.
pub type Count = BigUint;

/// Per-vertex subtree counts for a whole tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    counts: Vec<Count>, // index 0 unused
}

impl CountTable {
    pub fn get(&self, v: usize) -> &Count {
        &self.counts[v]
    }

    pub fn len(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(vertex, count)` pairs in vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Count)> {
        self.counts.iter().enumerate().skip(1)
    }

    /// Vertices attaining the maximum count, sorted ascending.
    pub fn max_vertices(&self) -> Vec<usize> {
        let max = self.counts[1..].iter().max().unwrap();
        self.iter().filter(|(_, c)| *c == max).map(|(v, _)| v).collect()
    }

    pub fn max_count(&self) -> &Count {
        self.counts[1..].iter().max().unwrap()
    }

    /// TSV serialization: one `v<TAB>count` line per vertex, decimal counts.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (v, c) in self.iter() {
            out.push_str(&format!("{v}\t{c}\n"));
        }
        out
    }
}

/// Rooted counts: `down[v]` is the number of subtrees of the subtree hanging
/// at `v` (away from `parent[v]`) that contain `v`.
fn down_counts(tree: &Tree, order: &[usize], parent: &[usize]) -> Vec<Count> {
    let mut down = vec![Count::one(); tree.n() + 1];
    for &v in order.iter().rev() {
        let mut acc = Count::one();
        for &c in tree.neighbors(v) {
            if c != parent[v] {
                acc *= &down[c] + 1u32;
            }
        }
        down[v] = acc;
    }
    down
}

/// Number of subtrees containing `v`: the product of `1 + down(child)` over
/// the children of `v` when the tree is rooted at `v`.
pub fn count_at_vertex(tree: &Tree, v: usize) -> Result<Count> {
    tree.check_vertex(v)?;
    let (order, parent) = tree.rooted_order(v);
    Ok(down_counts(tree, &order, &parent)[v].clone())
}

/// Subtree counts for every vertex via rerooting. Equivalent to calling
/// [`count_at_vertex`] per vertex, but one pass overall.
pub fn count_all_vertices(tree: &Tree) -> CountTable {
    let n = tree.n();
    let (order, parent) = tree.rooted_order(1);
    let down = down_counts(tree, &order, &parent);

    // up[v]: subtrees of the component above v (through parent[v]) that
    // contain parent[v]. Filled in BFS order so up[p] is ready before p's
    // children are processed.
    let mut up = vec![Count::one(); n + 1];
    let mut counts = vec![Count::one(); n + 1];
    for &p in &order {
        let neighbors = tree.neighbors(p);
        let factors: Vec<Count> = neighbors
            .iter()
            .map(|&w| {
                if w == parent[p] {
                    &up[p] + 1u32
                } else {
                    &down[w] + 1u32
                }
            })
            .collect();
        let k = factors.len();
        let mut prefix = vec![Count::one(); k + 1];
        for i in 0..k {
            prefix[i + 1] = &prefix[i] * &factors[i];
        }
        let mut suffix = vec![Count::one(); k + 1];
        for i in (0..k).rev() {
            suffix[i] = &suffix[i + 1] * &factors[i];
        }
        counts[p] = prefix[k].clone();
        for (i, &w) in neighbors.iter().enumerate() {
            if w != parent[p] {
                up[w] = &prefix[i] * &suffix[i + 1];
            }
        }
    }
    CountTable { counts }
}

/// Marks the minimal subtree spanning `set`: the union of the paths from the
/// first member to every other member.
fn steiner_marks(tree: &Tree, set: &[usize]) -> Result<Vec<bool>> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    for &v in set {
        tree.check_vertex(v)?;
    }
    let mut marked = vec![false; tree.n() + 1];
    marked[set[0]] = true;
    for &v in &set[1..] {
        for u in tree.path_between(set[0], v)? {
            marked[u] = true;
        }
    }
    Ok(marked)
}

/// Number of subtrees containing every vertex of `set`. Such a subtree is
/// the spanning (Steiner) subtree of `set` plus independent optional
/// extensions through each dangling neighbor.
pub fn count_with_set(tree: &Tree, set: &[usize]) -> Result<Count> {
    let marked = steiner_marks(tree, set)?;
    let anchor = set[0];
    let (order, parent) = tree.rooted_order(anchor);
    let down = down_counts(tree, &order, &parent);
    let mut acc = Count::one();
    for v in 1..=tree.n() {
        if !marked[v] {
            continue;
        }
        for &w in tree.neighbors(v) {
            if !marked[w] && parent[w] == v {
                acc *= &down[w] + 1u32;
            }
        }
    }
    Ok(acc)
}

/// Vertices contained in the maximum number of subtrees: one vertex or two
/// adjacent ones.
pub fn subtree_core(tree: &Tree) -> MiddleSet {
    let table = count_all_vertices(tree);
    MiddleSet::new(MiddleKind::SubtreeCore, table.max_vertices())
}

/// Cap on the brute-force oracle; a star at this order already has
/// `2^23 + 23` subtrees.
pub const BRUTE_FORCE_MAX: usize = 24;

/// Ground-truth count by enumerating every connected vertex subset that
/// contains `set`, as bitmasks with flood-fill connectivity checks.
pub fn brute_force_count(tree: &Tree, set: &[usize]) -> Result<Count> {
    let n = tree.n();
    if n > BRUTE_FORCE_MAX {
        return Err(Error::TooLarge {
            n,
            max: BRUTE_FORCE_MAX,
        });
    }
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut set_mask = 0u32;
    for &v in set {
        tree.check_vertex(v)?;
        set_mask |= 1 << (v - 1);
    }
    let adj_mask: Vec<u32> = (0..=n)
        .map(|v| {
            if v == 0 {
                0
            } else {
                tree.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << (w - 1))
            }
        })
        .collect();

    let is_connected = |mask: u32| -> bool {
        let start = mask.trailing_zeros() as usize;
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u32;
            let mut bits = frontier;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize + 1;
                bits &= bits - 1;
                next |= adj_mask[v];
            }
            frontier = next & mask & !seen;
            seen |= frontier;
        }
        seen == mask
    };

    let free = !set_mask & ((1u32 << n) - 1);
    let mut hits = 0u64;
    let mut extra = free;
    loop {
        if is_connected(set_mask | extra) {
            hits += 1;
        }
        if extra == 0 {
            break;
        }
        extra = (extra - 1) & free;
    }
    Ok(Count::from(hits))
}
