//! Mutable undirected simple graph with tombstoned vertex removal.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// A set of vertex ids, kept ascending and free of duplicates.
pub type VertexSet = Vec<usize>;

/// Undirected simple graph.
///
/// Removed vertices keep their id slot (`alive[v] == false`, empty adjacency);
/// ids are never reused, so a reduction trace can refer to them after the fact.
/// Neighbor iteration is always in ascending id order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<BTreeSet<usize>>,
    alive: Vec<bool>,
    live: usize,
    edges: usize,
}

impl Graph {
    /// Edgeless graph on `n` live vertices `0..n`.
    pub fn new(n: usize) -> Self {
        Graph {
            adjacency: vec![BTreeSet::new(); n],
            alive: vec![true; n],
            live: n,
            edges: 0,
        }
    }

    /// Builds a graph on `n` vertices. Duplicate edges are merged; self-loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParams(format!(
                    "edge {u}-{v} out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidParams(format!("self-loop on vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Number of id slots ever allocated, live or dead.
    pub fn capacity(&self) -> usize {
        self.alive.len()
    }

    /// Number of live vertices.
    pub fn num_vertices(&self) -> usize {
        self.live
    }

    pub fn num_edges(&self) -> usize {
        self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.alive.get(v).copied().unwrap_or(false)
    }

    /// Errors with [`Error::DeadVertex`] unless `v` is live.
    pub fn check_alive(&self, v: usize) -> Result<()> {
        if self.is_alive(v) {
            Ok(())
        } else {
            Err(Error::DeadVertex(v))
        }
    }

    /// Live vertices in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter_map(|(v, &a)| a.then_some(v))
    }

    /// Edges `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices()
            .flat_map(move |u| self.adjacency[u].range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().copied()
    }

    pub fn neighbor_set(&self, v: usize) -> &BTreeSet<usize> {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency
            .get(u)
            .map(|n| n.contains(&v))
            .unwrap_or(false)
    }

    /// Appends a fresh isolated vertex at the end of the id space.
    pub fn add_vertex(&mut self) -> usize {
        self.adjacency.push(BTreeSet::new());
        self.alive.push(true);
        self.live += 1;
        self.alive.len() - 1
    }

    /// Adds `{u, v}`; returns false if it was already present.
    ///
    /// Panics on self-loops or dead endpoints.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "self-loop on {u}");
        assert!(
            self.is_alive(u) && self.is_alive(v),
            "edge {u}-{v} touches a dead vertex"
        );
        if self.adjacency[u].insert(v) {
            self.adjacency[v].insert(u);
            self.edges += 1;
            true
        } else {
            false
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u < self.adjacency.len() && self.adjacency[u].remove(&v) {
            self.adjacency[v].remove(&u);
            self.edges -= 1;
            true
        } else {
            false
        }
    }

    /// Tombstones `v` and detaches it from its neighbors. Returns its former
    /// neighborhood.
    pub fn remove_vertex(&mut self, v: usize) -> BTreeSet<usize> {
        if !self.is_alive(v) {
            return BTreeSet::new();
        }
        let nbrs = std::mem::take(&mut self.adjacency[v]);
        for &u in &nbrs {
            self.adjacency[u].remove(&v);
        }
        self.edges -= nbrs.len();
        self.alive[v] = false;
        self.live -= 1;
        nbrs
    }

    /// Removes every vertex in `vs`.
    pub fn remove_vertices<'a>(&mut self, vs: impl IntoIterator<Item = &'a usize>) {
        for &v in vs {
            self.remove_vertex(v);
        }
    }

    /// Closed neighborhood `N[v]`, ascending.
    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        let mut out: Vec<usize> = self.neighbors(v).collect();
        let pos = out.partition_point(|&x| x < v);
        out.insert(pos, v);
        out
    }

    /// Open neighborhood of a set, `N(U)`, excluding members of `U`.
    pub fn set_neighborhood(&self, set: &[usize]) -> VertexSet {
        let members: BTreeSet<usize> = set.iter().copied().collect();
        let mut out = BTreeSet::new();
        for &u in set {
            for w in self.neighbors(u) {
                if !members.contains(&w) {
                    out.insert(w);
                }
            }
        }
        out.into_iter().collect()
    }

    /// True when no two members of `set` are adjacent.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        self.first_internal_edge(set).is_none()
    }

    /// First edge `(u, v)`, `u < v`, with both ends in `set`, scanning in
    /// ascending order.
    pub fn first_internal_edge(&self, set: &[usize]) -> Option<(usize, usize)> {
        let members: BTreeSet<usize> = set.iter().copied().collect();
        for &u in &members {
            if let Some(nbrs) = self.adjacency.get(u) {
                if let Some(&v) = nbrs.range(u + 1..).find(|v| members.contains(v)) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    /// True when every pair in `set` is adjacent.
    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    /// Panics if an internal invariant is broken. Intended for tests.
    pub fn assert_consistent(&self) {
        let mut degree_sum = 0;
        let mut live = 0;
        for v in 0..self.capacity() {
            if !self.alive[v] {
                assert!(
                    self.adjacency[v].is_empty(),
                    "dead vertex {v} has neighbors"
                );
                continue;
            }
            live += 1;
            for &u in &self.adjacency[v] {
                assert!(u != v, "self-loop on {v}");
                assert!(self.alive[u], "{v} lists dead neighbor {u}");
                assert!(self.adjacency[u].contains(&v), "asymmetric edge {v}-{u}");
            }
            degree_sum += self.adjacency[v].len();
        }
        assert_eq!(live, self.live);
        assert_eq!(degree_sum, 2 * self.edges);
    }
}

/// Partition of the live vertices into connected components, ordered by their
/// smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<VertexSet> {
    let mut seen = vec![false; g.capacity()];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        let mut comp = Vec::new();
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Compacted copy of `G[S]` on ids `0..|S|`, with `mapping[new] = old`.
///
/// The mapping preserves the ascending order of `S`.
pub fn induced_subgraph(g: &Graph, set: &[usize]) -> Result<(Graph, Vec<usize>)> {
    let mut mapping: Vec<usize> = set.to_vec();
    mapping.sort_unstable();
    mapping.dedup();
    let mut index = vec![usize::MAX; g.capacity()];
    for (i, &v) in mapping.iter().enumerate() {
        g.check_alive(v)?;
        index[v] = i;
    }
    let mut sub = Graph::new(mapping.len());
    for (i, &v) in mapping.iter().enumerate() {
        for u in g.neighbors(v) {
            let j = index[u];
            if j != usize::MAX && i < j {
                sub.add_edge(i, j);
            }
        }
    }
    Ok((sub, mapping))
}
