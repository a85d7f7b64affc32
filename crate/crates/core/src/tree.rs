//! Tree representation, validation, and metric quantities: distance,
//! eccentricity, radius, diameter, branch weights, center and centroid.
//!
//! Vertices are 1-based throughout, including all I/O.

use std::fmt;

use crate::error::{Error, Result};

/// An immutable tree on vertices `1..=n`.
///
/// Construction validates the tree property (exactly `n-1` edges, connected,
/// no self-loops or duplicate edges). All operations are pure, so a `Tree`
/// can be shared freely across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    n: usize,
    adj: Vec<Vec<usize>>,          // index 0 unused; lists sorted ascending
    edges: Vec<(usize, usize)>,    // normalized u < v, sorted lexicographically
}

/// Which of the three middle parts a [`MiddleSet`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MiddleKind {
    Center,
    Centroid,
    SubtreeCore,
}

impl fmt::Display for MiddleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MiddleKind::Center => write!(f, "center"),
            MiddleKind::Centroid => write!(f, "centroid"),
            MiddleKind::SubtreeCore => write!(f, "subtree-core"),
        }
    }
}

/// A middle part of a tree: one vertex, or two adjacent vertices, sorted
/// ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiddleSet {
    kind: MiddleKind,
    vertices: Vec<usize>,
}

impl MiddleSet {
    pub(crate) fn new(kind: MiddleKind, mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        debug_assert!(!vertices.is_empty() && vertices.len() <= 2);
        MiddleSet { kind, vertices }
    }

    pub fn kind(&self) -> MiddleKind {
        self.kind
    }

    /// The member vertices, sorted ascending.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }
}

impl fmt::Display for MiddleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", ids.join(","))
    }
}

impl Tree {
    /// Builds a validated tree from an explicit edge list on vertices `1..=n`.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Tree> {
        if n == 0 {
            return Err(Error::InvalidParams {
                reason: "vertex count must be positive".into(),
            });
        }
        let mut adj = vec![Vec::new(); n + 1];
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == 0 || u > n {
                return Err(Error::VertexOutOfRange { v: u, n });
            }
            if v == 0 || v > n {
                return Err(Error::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(Error::SelfLoop { v });
            }
            let e = (u.min(v), u.max(v));
            normalized.push(e);
        }
        if normalized.len() != n - 1 {
            return Err(Error::EdgeCountMismatch {
                n,
                expected: n - 1,
                actual: normalized.len(),
            });
        }
        normalized.sort_unstable();
        for w in normalized.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEdge { u: w[0].0, v: w[0].1 });
            }
        }
        for &(u, v) in &normalized {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        let tree = Tree {
            n,
            adj,
            edges: normalized,
        };
        // n-1 edges without duplicates: connectivity alone implies acyclicity.
        let dist = tree.bfs(1);
        if let Some(unreachable) = (1..=n).find(|&v| dist[v] == usize::MAX) {
            return Err(Error::NotConnected { unreachable });
        }
        Ok(tree)
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Neighbors of `v`, sorted ascending. Panics if `v` is out of range;
    /// use [`Tree::check_vertex`] first when `v` is untrusted.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_pendant(&self, v: usize) -> bool {
        self.adj[v].len() == 1
    }

    /// The `n-1` edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            return Err(Error::VertexOutOfRange { v, n: self.n });
        }
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u <= self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// BFS distances from `start`; unreachable entries are `usize::MAX`
    /// (never happens for a valid tree) and index 0 is unused.
    fn bfs(&self, start: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n + 1];
        let mut queue = std::collections::VecDeque::new();
        dist[start] = 0;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Length in edges of the unique `u`-`v` path.
    pub fn distance(&self, u: usize, v: usize) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.bfs(u)[v])
    }

    /// Minimum distance over all pairs `(a, b)` with `a` in `from` and `b`
    /// in `to`. Zero iff the sets share a vertex or touch at distance zero.
    pub fn set_distance(&self, from: &[usize], to: &[usize]) -> Result<usize> {
        if from.is_empty() || to.is_empty() {
            return Err(Error::EmptySet);
        }
        for &v in from.iter().chain(to) {
            self.check_vertex(v)?;
        }
        let mut best = usize::MAX;
        for &a in from {
            let dist = self.bfs(a);
            for &b in to {
                best = best.min(dist[b]);
            }
        }
        Ok(best)
    }

    /// Maximum distance from `v` to any vertex.
    pub fn eccentricity(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.bfs(v)[1..].iter().copied().max().unwrap())
    }

    fn all_eccentricities(&self) -> Vec<usize> {
        let mut ecc = vec![0; self.n + 1];
        for (v, slot) in ecc.iter_mut().enumerate().skip(1) {
            *slot = self.bfs(v)[1..].iter().copied().max().unwrap();
        }
        ecc
    }

    pub fn radius(&self) -> usize {
        self.all_eccentricities()[1..].iter().copied().min().unwrap()
    }

    pub fn diameter(&self) -> usize {
        self.all_eccentricities()[1..].iter().copied().max().unwrap()
    }

    /// The vertices of minimum eccentricity: one vertex or two adjacent ones.
    pub fn center(&self) -> MiddleSet {
        let ecc = self.all_eccentricities();
        let radius = ecc[1..].iter().copied().min().unwrap();
        let members: Vec<usize> = (1..=self.n).filter(|&v| ecc[v] == radius).collect();
        MiddleSet::new(MiddleKind::Center, members)
    }

    /// Maximum number of edges in a branch at `v` (a maximal subtree with
    /// `v` as a pendant vertex). For the one-vertex tree this is 0; otherwise
    /// it equals the largest vertex count among the components of `t - v`.
    pub fn branch_weight(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        if self.n == 1 {
            return Ok(0);
        }
        let mut seen = vec![false; self.n + 1];
        seen[v] = true;
        let mut best = 0;
        for &u in &self.adj[v] {
            if seen[u] {
                continue;
            }
            // vertex count of the component of t - v containing u
            let mut size = 0;
            let mut stack = vec![u];
            seen[u] = true;
            while let Some(x) = stack.pop() {
                size += 1;
                for &w in &self.adj[x] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            best = best.max(size);
        }
        Ok(best)
    }

    /// The vertices of minimum branch weight: one vertex or two adjacent
    /// ones. One subtree-size pass; agrees with [`Tree::branch_weight`]
    /// because a branch's edge count is its component's vertex count.
    pub fn centroid(&self) -> MiddleSet {
        if self.n == 1 {
            return MiddleSet::new(MiddleKind::Centroid, vec![1]);
        }
        let (order, parent) = self.rooted_order(1);
        let mut size = vec![1usize; self.n + 1];
        let mut weight = vec![0usize; self.n + 1];
        for &v in order.iter().rev() {
            if v != 1 {
                size[parent[v]] += size[v];
                weight[parent[v]] = weight[parent[v]].max(size[v]);
            }
        }
        for v in 2..=self.n {
            weight[v] = weight[v].max(self.n - size[v]);
        }
        let min = weight[1..].iter().copied().min().unwrap();
        let members: Vec<usize> = (1..=self.n).filter(|&v| weight[v] == min).collect();
        MiddleSet::new(MiddleKind::Centroid, members)
    }

    /// BFS order from `root` with parent pointers; parents precede children.
    pub(crate) fn rooted_order(&self, root: usize) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(self.n);
        let mut parent = vec![0usize; self.n + 1];
        let mut seen = vec![false; self.n + 1];
        seen[root] = true;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    order.push(w);
                }
            }
        }
        (order, parent)
    }

    /// The unique `u`-`v` path, endpoints inclusive.
    pub fn path_between(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut parent = vec![0usize; self.n + 1];
        let mut seen = vec![false; self.n + 1];
        let mut queue = std::collections::VecDeque::new();
        seen[u] = true;
        queue.push_back(u);
        while let Some(x) = queue.pop_front() {
            if x == v {
                break;
            }
            for &w in &self.adj[x] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = x;
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![v];
        let mut cur = v;
        while cur != u {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        Ok(path)
    }

    /// The component of `self - {keep, drop}` containing `keep`, relabeled to
    /// `1..=m` in ascending order of the original ids. Returns the component
    /// tree and the map from new ids to old ids (index 0 unused).
    pub fn component_without_edge(&self, keep: usize, drop: usize) -> Result<(Tree, Vec<usize>)> {
        self.check_vertex(keep)?;
        self.check_vertex(drop)?;
        if !self.has_edge(keep, drop) {
            return Err(Error::InvalidParams {
                reason: format!("{{{keep}, {drop}}} is not an edge"),
            });
        }
        let mut in_comp = vec![false; self.n + 1];
        in_comp[keep] = true;
        let mut stack = vec![keep];
        while let Some(x) = stack.pop() {
            for &w in &self.adj[x] {
                if (x == keep && w == drop) || (x == drop && w == keep) {
                    continue;
                }
                if !in_comp[w] {
                    in_comp[w] = true;
                    stack.push(w);
                }
            }
        }
        let mut to_old = vec![0usize];
        let mut to_new = vec![0usize; self.n + 1];
        for v in 1..=self.n {
            if in_comp[v] {
                to_new[v] = to_old.len();
                to_old.push(v);
            }
        }
        let m = to_old.len() - 1;
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(a, b)| in_comp[a] && in_comp[b])
            .map(|&(a, b)| (to_new[a], to_new[b]))
            .collect();
        Ok((Tree::from_edge_list(m, &edges)?, to_old))
    }
}

/// Parses the edge-list text format: first line `n`, then `n-1` lines `u v`.
pub fn parse_edge_list(input: &str) -> Result<Tree> {
    let mut lines = input.lines().enumerate();
    let (_, first) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty input".into(),
    })?;
    let n: usize = first.trim().parse().map_err(|_| Error::Parse {
        line: 1,
        msg: format!("expected vertex count, got {first:?}"),
    })?;
    let mut edges = Vec::new();
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<usize> {
            tok.ok_or(Error::Parse {
                line: idx + 1,
                msg: "expected two vertex ids".into(),
            })?
            .parse()
            .map_err(|_| Error::Parse {
                line: idx + 1,
                msg: format!("bad vertex id in {line:?}"),
            })
        };
        let u = parse(it.next())?;
        let v = parse(it.next())?;
        if it.next().is_some() {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("trailing tokens in {line:?}"),
            });
        }
        edges.push((u, v));
    }
    Tree::from_edge_list(n, &edges)
}

/// Writes the edge-list text format; edges come out sorted lexicographically.
pub fn write_edge_list(tree: &Tree) -> String {
    let mut out = String::new();
    out.push_str(&tree.n().to_string());
    out.push('\n');
    for &(u, v) in tree.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// A path on `n` vertices labeled `1..=n` along the path.
pub fn path(n: usize) -> Tree {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
    Tree::from_edge_list(n.max(1), &edges).expect("path is a valid tree")
}

/// A star on `n` vertices with hub `n`, matching the labeling where `n` is
/// the only non-pendant vertex.
pub fn star(n: usize) -> Tree {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i, n)).collect();
    Tree::from_edge_list(n.max(1), &edges).expect("star is a valid tree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_tree() {
        let t = Tree::from_edge_list(2, &[(1, 2)]).unwrap();
        assert_eq!(t.n(), 2);
        assert_eq!(t.edges(), &[(1, 2)]);
    }

    #[test]
    fn path_construction() {
        let t = Tree::from_edge_list(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(t.neighbors(2), &[1, 3]);
        assert_eq!(t.degree(1), 1);
    }

    #[test]
    fn edge_count_mismatch() {
        let err = Tree::from_edge_list(4, &[(1, 2), (2, 3)]).unwrap_err();
        assert_eq!(
            err,
            Error::EdgeCountMismatch {
                n: 4,
                expected: 3,
                actual: 2
            }
        );
    }

    #[test]
    fn cycle_rejected_as_disconnection() {
        // n-1 edges, but they form a triangle and strand vertex 4
        let err = Tree::from_edge_list(4, &[(1, 2), (2, 3), (1, 3)]).unwrap_err();
        assert_eq!(err, Error::NotConnected { unreachable: 4 });
    }

    #[test]
    fn self_loop_and_duplicate_rejected() {
        assert_eq!(
            Tree::from_edge_list(2, &[(1, 1)]).unwrap_err(),
            Error::SelfLoop { v: 1 }
        );
        assert_eq!(
            Tree::from_edge_list(3, &[(1, 2), (2, 1)]).unwrap_err(),
            Error::DuplicateEdge { u: 1, v: 2 }
        );
        assert_eq!(
            Tree::from_edge_list(2, &[(1, 3)]).unwrap_err(),
            Error::VertexOutOfRange { v: 3, n: 2 }
        );
    }

    #[test]
    fn distances_on_paths() {
        let p5 = path(5);
        assert_eq!(p5.distance(1, 5).unwrap(), 4);
        assert_eq!(p5.distance(3, 3).unwrap(), 0);
        assert_eq!(p5.distance(2, 4).unwrap(), p5.distance(4, 2).unwrap());
    }

    #[test]
    fn set_distance_basics() {
        let p5 = path(5);
        assert_eq!(p5.set_distance(&[3], &[3]).unwrap(), 0);
        assert_eq!(p5.set_distance(&[1, 2], &[4, 5]).unwrap(), 2);
        assert_eq!(p5.set_distance(&[], &[1]).unwrap_err(), Error::EmptySet);
    }

    #[test]
    fn eccentricity_radius_diameter() {
        let p5 = path(5);
        assert_eq!(p5.eccentricity(3).unwrap(), 2);
        let p6 = path(6);
        assert_eq!(p6.radius(), 3);
        assert_eq!(p6.diameter(), 5);
        let k18 = star(9);
        assert_eq!(k18.eccentricity(9).unwrap(), 1);
        let k15 = star(6);
        assert_eq!(k15.radius(), 1);
        assert_eq!(k15.diameter(), 2);
    }

    #[test]
    fn center_of_paths_and_stars() {
        assert_eq!(path(6).center().vertices(), &[3, 4]);
        assert_eq!(path(5).center().vertices(), &[3]);
        assert_eq!(star(9).center().vertices(), &[9]);
    }

    #[test]
    fn branch_weights() {
        let p5 = path(5);
        assert_eq!(p5.branch_weight(3).unwrap(), 2);
        assert_eq!(p5.branch_weight(1).unwrap(), 4);
        assert_eq!(star(9).branch_weight(9).unwrap(), 1);
        let single = Tree::from_edge_list(1, &[]).unwrap();
        assert_eq!(single.branch_weight(1).unwrap(), 0);
    }

    #[test]
    fn centroid_of_paths_and_stars() {
        let p6 = path(6);
        let c = p6.centroid();
        assert_eq!(c.vertices(), &[3, 4]);
        assert_eq!(p6.branch_weight(3).unwrap(), 3);
        assert_eq!(p6.branch_weight(4).unwrap(), 3);
        assert_eq!(star(9).centroid().vertices(), &[9]);
    }

    #[test]
    fn paths_between_vertices() {
        let p5 = path(5);
        assert_eq!(p5.path_between(2, 4).unwrap(), vec![2, 3, 4]);
        assert_eq!(p5.path_between(3, 3).unwrap(), vec![3]);
        assert_eq!(
            p5.path_between(1, 5).unwrap().len(),
            p5.distance(1, 5).unwrap() + 1
        );
    }

    #[test]
    fn edge_list_round_trip() {
        let t = Tree::from_edge_list(4, &[(3, 4), (2, 1), (3, 2)]).unwrap();
        let text = write_edge_list(&t);
        assert_eq!(text, "4\n1 2\n2 3\n3 4\n");
        let back = parse_edge_list(&text).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("two\n1 2"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_edge_list("3\n1 2\n2 x"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn component_split() {
        let p5 = path(5);
        let (left, to_old) = p5.component_without_edge(2, 3).unwrap();
        assert_eq!(left.n(), 2);
        assert_eq!(&to_old[1..], &[1, 2]);
        let (right, to_old) = p5.component_without_edge(3, 2).unwrap();
        assert_eq!(right.n(), 3);
        assert_eq!(&to_old[1..], &[3, 4, 5]);
    }

    #[test]
    fn single_vertex_tree() {
        let t = Tree::from_edge_list(1, &[]).unwrap();
        assert_eq!(t.center().vertices(), &[1]);
        assert_eq!(t.centroid().vertices(), &[1]);
        assert_eq!(t.radius(), 0);
        assert_eq!(t.diameter(), 0);
    }
}
