//! Canonical codes for free trees: a rooted parenthesis encoding taken at
//! the centroid, so that two trees get equal codes iff they are isomorphic.

use std::fmt;

use crate::tree::Tree;

/// Relabeling-invariant code of a free tree. Equal codes iff isomorphic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.0)
    }
}

/// Canonical parenthesis code of the tree rooted at `root`, not descending
/// into `blocked`: children codes are sorted, so the result is invariant
/// under relabeling.
fn rooted_code(tree: &Tree, root: usize, blocked: Option<usize>) -> String {
    let n = tree.n();
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![0usize; n + 1];
    let mut seen = vec![false; n + 1];
    if let Some(b) = blocked {
        seen[b] = true;
    }
    seen[root] = true;
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in tree.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = u;
                order.push(w);
            }
        }
    }
    let mut child_codes: Vec<Vec<String>> = vec![Vec::new(); n + 1];
    for &v in order.iter().rev() {
        let mut kids = std::mem::take(&mut child_codes[v]);
        kids.sort_unstable();
        let mut code = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
        code.push('(');
        for k in &kids {
            code.push_str(k);
        }
        code.push(')');
        if v == root {
            return code;
        }
        child_codes[parent[v]].push(code);
    }
    unreachable!("root is always reached")
}

/// The canonical code of a free tree: the rooted code at the centroid. For
/// a two-vertex centroid, both halves across the centroid edge are encoded
/// and composed smaller-first.
pub fn canonical_code(tree: &Tree) -> CanonicalCode {
    let centroid = tree.centroid();
    match *centroid.vertices() {
        [c] => CanonicalCode(format!("1{}", rooted_code(tree, c, None))),
        [a, b] => {
            let code_a = rooted_code(tree, a, Some(b));
            let code_b = rooted_code(tree, b, Some(a));
            let (small, large) = if code_a <= code_b {
                (code_a, code_b)
            } else {
                (code_b, code_a)
            };
            CanonicalCode(format!("2{small}{large}"))
        }
        _ => unreachable!("centroid has one or two vertices"),
    }
}
