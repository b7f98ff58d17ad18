use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{normalize_subset, Graph};

/// Whether to also build an odd unicyclic spanning subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpanningRequest {
    TreeOnly,
    WithOddUnicyclic,
}

/// Spanning subgraph with `|V|` edges whose only cycle is odd: a spanning
/// tree plus one closing edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddUnicyclic {
    /// Edge indices, sorted.
    pub edges: Vec<usize>,
    pub closing_edge: usize,
    /// The odd cycle as a vertex sequence; consecutive entries (cyclically) are adjacent.
    pub cycle: Vec<usize>,
}

/// A rooted spanning tree with its fundamental cycles and tree paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningStructure {
    pub anchor: usize,
    /// Tree edge indices, sorted.
    pub tree: Vec<usize>,
    /// Non-tree edge → its fundamental cycle as a vertex sequence, starting
    /// with the edge's tail then its head.
    pub fundamental_cycles: BTreeMap<usize, Vec<usize>>,
    pub odd_unicyclic: Option<OddUnicyclic>,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
}

/// BFS spanning tree from `anchor` (neighbours in increasing order), plus the
/// odd unicyclic subgraph closed by the first non-tree edge with an odd
/// fundamental cycle when requested.
pub fn spanning_structures(
    g: &Graph,
    marked: &[usize],
    anchor: usize,
    request: SpanningRequest,
) -> Result<SpanningStructure> {
    let marked = normalize_subset(g.vertex_count(), marked)?;
    if marked.binary_search(&anchor).is_err() {
        return Err(Error::AnchorNotMarked(anchor));
    }
    let mut seen = vec![false; g.vertex_count()];
    seen[anchor] = true;
    let mut tree = Vec::new();
    let mut queue = VecDeque::from([anchor]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                tree.push(g.edge_index(u, v).expect("neighbour edge"));
                queue.push_back(v);
            }
        }
    }
    SpanningStructure::with_tree(g, anchor, &tree, request)
}

impl SpanningStructure {
    /// Uses a caller-chosen spanning tree, given as edge indices.
    pub fn with_tree(g: &Graph, anchor: usize, tree: &[usize], request: SpanningRequest) -> Result<Self> {
        let n = g.vertex_count();
        if anchor >= n {
            return Err(Error::InvalidVertex(anchor));
        }
        let mut tree = tree.to_vec();
        tree.sort_unstable();
        tree.dedup();
        if tree.len() + 1 != n || tree.iter().any(|&e| e >= g.edge_count()) {
            return Err(Error::DimensionMismatch(format!(
                "a spanning tree on {n} vertices needs {} edges",
                n - 1
            )));
        }
        let mut tree_adj = vec![Vec::new(); n];
        for &e in &tree {
            let (u, v) = g.edge(e);
            tree_adj[u].push(v);
            tree_adj[v].push(u);
        }
        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        depth[anchor] = 0;
        let mut queue = VecDeque::from([anchor]);
        while let Some(u) = queue.pop_front() {
            for &v in &tree_adj[u] {
                if depth[v] == usize::MAX {
                    depth[v] = depth[u] + 1;
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        if depth.contains(&usize::MAX) {
            return Err(Error::DimensionMismatch("tree edges do not span the graph".into()));
        }

        let mut st = SpanningStructure {
            anchor,
            tree,
            fundamental_cycles: BTreeMap::new(),
            odd_unicyclic: None,
            parent,
            depth,
        };
        for e in 0..g.edge_count() {
            if st.tree.binary_search(&e).is_err() {
                let (x, y) = g.edge(e);
                let mut cycle = vec![x];
                let back = st.tree_path(y, x);
                cycle.extend_from_slice(&back[..back.len() - 1]);
                st.fundamental_cycles.insert(e, cycle);
            }
        }
        if request == SpanningRequest::WithOddUnicyclic {
            let (&closing, cycle) = st
                .fundamental_cycles
                .iter()
                .find(|(_, c)| c.len() % 2 == 1)
                .ok_or(Error::BipartiteNoOddCycle)?;
            let mut edges = st.tree.clone();
            edges.push(closing);
            edges.sort_unstable();
            st.odd_unicyclic = Some(OddUnicyclic {
                edges,
                closing_edge: closing,
                cycle: cycle.clone(),
            });
        }
        Ok(st)
    }

    /// Vertex sequence of the tree path from `a` to `b`.
    pub fn tree_path(&self, a: usize, b: usize) -> Vec<usize> {
        let (mut x, mut y) = (a, b);
        let mut front = vec![x];
        let mut back = vec![y];
        while self.depth[x] > self.depth[y] {
            x = self.parent[x].expect("non-root has a parent");
            front.push(x);
        }
        while self.depth[y] > self.depth[x] {
            y = self.parent[y].expect("non-root has a parent");
            back.push(y);
        }
        while x != y {
            x = self.parent[x].expect("non-root has a parent");
            y = self.parent[y].expect("non-root has a parent");
            front.push(x);
            back.push(y);
        }
        back.pop();
        front.extend(back.into_iter().rev());
        front
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn fundamental_cycle(&self, e: usize) -> Option<&[usize]> {
        self.fundamental_cycles.get(&e).map(Vec::as_slice)
    }

    /// Edge sequence of the fundamental cycle of `e`.
    pub fn fundamental_cycle_edges(&self, g: &Graph, e: usize) -> Option<Vec<usize>> {
        self.fundamental_cycle(e).map(|c| walk_edges(g, c, true))
    }

    /// Edge sequence of the tree path from `a` to `b`.
    pub fn tree_path_edges(&self, g: &Graph, a: usize, b: usize) -> Vec<usize> {
        walk_edges(g, &self.tree_path(a, b), false)
    }
}

/// Edge indices traversed by a vertex walk; `closed` adds the step back to the start.
pub fn walk_edges(g: &Graph, walk: &[usize], closed: bool) -> Vec<usize> {
    let mut steps: Vec<(usize, usize)> = walk.windows(2).map(|w| (w[0], w[1])).collect();
    if closed && walk.len() > 1 {
        steps.push((walk[walk.len() - 1], walk[0]));
    }
    steps
        .into_iter()
        .map(|(x, y)| g.edge_index(x, y).expect("walk steps along edges"))
        .collect()
}
