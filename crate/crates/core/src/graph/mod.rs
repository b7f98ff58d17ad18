//! Canonical simple graphs with fixed edge, arc and orientation orderings.
//!
//! Edges are stored as `(u, v)` with `u < v`, sorted lexicographically. Edge
//! `j` owns arcs `2j = (u, v)` and `2j + 1 = (v, u)`, and its orientation runs
//! from the smaller label (tail) to the larger one (head).

mod incidence;
pub mod io;
mod partition;
pub mod presets;

pub use incidence::{to_f64, IncidenceSet};
pub use partition::MarkedPartition;

use std::collections::{BTreeSet, VecDeque};

use nalgebra::DMatrix;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    regular_degree: Option<usize>,
}

/// Builds a validated graph on vertices `0..n`.
///
/// Pairs may be given in either order; the result is connected and simple.
pub fn build_graph(n: usize, edge_list: &[(usize, usize)]) -> Result<Graph> {
    Graph::new(n, edge_list)
}

impl Graph {
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut seen = BTreeSet::new();
        for &(u, v) in edge_list {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::InvalidVertex(w));
                }
            }
            if u == v || !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::NotSimple(u, v));
            }
        }
        let edges: Vec<_> = seen.into_iter().collect();
        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in &edges {
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        let k = neighbors[0].len();
        let regular_degree = (k > 0 && neighbors.iter().all(|l| l.len() == k)).then_some(k);
        let g = Graph {
            n,
            edges,
            neighbors,
            regular_degree,
        };
        if g.components(&[]).len() != 1 {
            return Err(Error::NotConnected);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn arc_count(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, j: usize) -> (usize, usize) {
        self.edges[j]
    }

    /// Index of the edge `{u, v}`, if present.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Arc `(tail, head)` with index `a`.
    pub fn arc(&self, a: usize) -> (usize, usize) {
        let (u, v) = self.edges[a / 2];
        if a % 2 == 0 {
            (u, v)
        } else {
            (v, u)
        }
    }

    /// Index of the arc `(tail, head)`, if the edge exists.
    pub fn arc_index(&self, tail: usize, head: usize) -> Option<usize> {
        self.edge_index(tail, head)
            .map(|j| if tail < head { 2 * j } else { 2 * j + 1 })
    }

    /// Arcs whose tail is `u`, in increasing arc index.
    pub fn out_arcs(&self, u: usize) -> Vec<usize> {
        let mut arcs: Vec<_> = self.neighbors[u]
            .iter()
            .filter_map(|&v| self.arc_index(u, v))
            .collect();
        arcs.sort_unstable();
        arcs
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.neighbors[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors[u].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    /// The common degree `k` when the graph is regular with `k >= 1`.
    pub fn regular_degree(&self) -> Option<usize> {
        self.regular_degree
    }

    pub fn require_regular(&self) -> Result<usize> {
        self.regular_degree.ok_or(Error::NotRegular)
    }

    pub fn adjacency(&self) -> DMatrix<i64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u, v)] = 1;
            a[(v, u)] = 1;
        }
        a
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Two-colouring of the graph, or `None` when it has an odd cycle.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut colour = vec![u8::MAX; self.n];
        colour[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.neighbors[u] {
                if colour[v] == u8::MAX {
                    colour[v] = 1 - colour[u];
                    queue.push_back(v);
                } else if colour[v] == colour[u] {
                    return None;
                }
            }
        }
        Some(colour)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// True when the graph is a single cycle of odd length.
    pub fn is_odd_cycle(&self) -> bool {
        self.regular_degree == Some(2) && self.n % 2 == 1
    }

    /// Connected components of the graph with `removed` deleted, each sorted.
    pub fn components(&self, removed: &[usize]) -> Vec<Vec<usize>> {
        let mut gone = vec![false; self.n];
        for &r in removed {
            gone[r] = true;
        }
        let mut comps = Vec::new();
        for start in 0..self.n {
            if gone[start] {
                continue;
            }
            gone[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.neighbors[u] {
                    if !gone[v] {
                        gone[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// The subgraph `X \ S` keeping original vertex labels.
    pub fn delete_vertices(&self, removed: &[usize]) -> Result<Subgraph> {
        let removed = normalize_subset(self.n, removed)?;
        let keep: Vec<usize> = complement(self.n, &removed);
        Ok(self.induced(&keep))
    }

    /// The whole graph as a [`Subgraph`].
    pub fn as_subgraph(&self) -> Subgraph {
        self.induced(&(0..self.n).collect::<Vec<_>>())
    }

    fn induced(&self, keep: &[usize]) -> Subgraph {
        let m = keep.len();
        let mut adj = DMatrix::zeros(m, m);
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate() {
                if self.is_adjacent(u, v) {
                    adj[(i, j)] = 1;
                }
            }
        }
        Subgraph {
            labels: keep.to_vec(),
            adj,
        }
    }

    /// Relabels vertex `v` as `perm[v]` and rebuilds the canonical orderings.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        check_permutation(self.n, perm)?;
        let edges: Vec<_> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Graph::new(self.n, &edges)
    }
}

/// A possibly disconnected graph whose vertices carry labels from a parent graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    labels: Vec<usize>,
    adj: DMatrix<i64>,
}

impl Subgraph {
    /// Wraps a symmetric 0/1 adjacency matrix with labels `0..n`.
    pub fn from_adjacency(adj: DMatrix<i64>) -> Result<Self> {
        if !adj.is_square() {
            return Err(Error::DimensionMismatch("adjacency must be square".into()));
        }
        let n = adj.nrows();
        for i in 0..n {
            if adj[(i, i)] != 0 {
                return Err(Error::NotSimple(i, i));
            }
            for j in 0..n {
                if adj[(i, j)] != adj[(j, i)] || !(0..=1).contains(&adj[(i, j)]) {
                    return Err(Error::NotSimple(i, j));
                }
            }
        }
        Ok(Subgraph {
            labels: (0..n).collect(),
            adj,
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = DMatrix::zeros(n, n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidVertex(u.max(v)));
            }
            if u == v || adj[(u, v)] != 0 {
                return Err(Error::NotSimple(u, v));
            }
            adj[(u, v)] = 1;
            adj[(v, u)] = 1;
        }
        Ok(Subgraph {
            labels: (0..n).collect(),
            adj,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn adjacency(&self) -> &DMatrix<i64> {
        &self.adj
    }

    pub fn adjacency_f64(&self) -> DMatrix<f64> {
        to_f64(&self.adj)
    }

    /// Position of a parent-graph label inside this subgraph.
    pub fn local(&self, label: usize) -> Result<usize> {
        self.labels
            .binary_search(&label)
            .map_err(|_| Error::InvalidVertex(label))
    }

    pub fn local_set(&self, labels: &[usize]) -> Result<Vec<usize>> {
        let mut out = labels
            .iter()
            .map(|&l| self.local(l))
            .collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.adj.row(i).sum()
    }

    pub fn max_degree(&self) -> i64 {
        (0..self.len()).map(|i| self.degree(i)).max().unwrap_or(0)
    }

    /// Components as lists of local indices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in 0..n {
                    if self.adj[(u, v)] != 0 && !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

/// Sorts, deduplicates and range-checks a vertex subset.
pub fn normalize_subset(n: usize, set: &[usize]) -> Result<Vec<usize>> {
    if let Some(&bad) = set.iter().find(|&&v| v >= n) {
        return Err(Error::InvalidVertex(bad));
    }
    let mut out = set.to_vec();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `0..n` minus a sorted subset.
pub fn complement(n: usize, sorted: &[usize]) -> Vec<usize> {
    (0..n).filter(|v| sorted.binary_search(v).is_err()).collect()
}

pub(crate) fn check_permutation(n: usize, perm: &[usize]) -> Result<()> {
    if perm.len() != n {
        return Err(Error::NotPermutation(n));
    }
    let mut hit = vec![false; n];
    for &p in perm {
        if p >= n || hit[p] {
            return Err(Error::NotPermutation(n));
        }
        hit[p] = true;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_cycle_is_two_regular() {
        let g = build_graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(g.regular_degree(), Some(2));
        assert_eq!(g.edges(), &[(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(g.arc(2), (0, 3));
        assert_eq!(g.arc(3), (3, 0));
        assert_eq!(g.out_arcs(0), vec![0, 2]);
    }

    #[test]
    fn disconnected_and_non_simple_inputs_fail() {
        assert_eq!(build_graph(4, &[(0, 1), (2, 3)]), Err(Error::NotConnected));
        assert_eq!(build_graph(2, &[(0, 1), (0, 1)]), Err(Error::NotSimple(0, 1)));
        assert_eq!(build_graph(2, &[(0, 1), (1, 0)]), Err(Error::NotSimple(1, 0)));
        assert_eq!(build_graph(2, &[(1, 1)]), Err(Error::NotSimple(1, 1)));
        assert_eq!(build_graph(0, &[]), Err(Error::EmptyGraph));
        assert_eq!(build_graph(2, &[(0, 2)]), Err(Error::InvalidVertex(2)));
    }

    #[test]
    fn irregular_graph_has_no_degree() {
        let p3 = build_graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.regular_degree(), None);
        assert_eq!(p3.require_regular(), Err(Error::NotRegular));
    }

    #[test]
    fn bipartite_detection() {
        let c4 = presets::cycle(4).unwrap();
        let c5 = presets::cycle(5).unwrap();
        assert!(c4.is_bipartite());
        assert!(!c5.is_bipartite());
        assert!(c5.is_odd_cycle());
        assert!(!presets::complete(3).unwrap().is_bipartite());
    }

    #[test]
    fn vertex_deletion_keeps_labels() {
        let c6 = presets::cycle(6).unwrap();
        let y = c6.delete_vertices(&[0, 1, 3]).unwrap();
        assert_eq!(y.labels(), &[2, 4, 5]);
        assert_eq!(y.adjacency()[(1, 2)], 1);
        assert_eq!(y.components(), vec![vec![0], vec![1, 2]]);
        assert_eq!(y.local(3), Err(Error::InvalidVertex(3)));
    }
}
