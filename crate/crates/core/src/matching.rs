//! Bi-double graphs and maximum bipartite matching by depth-first augmenting
//! paths, with warm starts.
//!
//! The matcher is deliberately the plain augmenting-path method (no
//! Hopcroft–Karp phases): free left vertices are tried in ascending order,
//! neighbors are scanned in ascending order, and passes repeat until one finds
//! no augmenting path. Every result is therefore reproducible, including the
//! number of augmentations, which the critical-set code reports.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Bipartite graph with left vertices `0..n_left` and right vertices
/// `0..n_right`. Adjacency lists are ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    n_left: usize,
    n_right: usize,
    adjacency: Vec<Vec<usize>>,
    origin: Option<Vec<usize>>,
}

impl BipartiteGraph {
    /// Builds from `(left, right)` pairs; duplicates are merged.
    pub fn from_edges(n_left: usize, n_right: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n_left];
        for &(l, r) in edges {
            if l >= n_left || r >= n_right {
                return Err(Error::InvalidParams(format!(
                    "bipartite edge ({l}, {r}) out of range {n_left}x{n_right}"
                )));
            }
            adjacency[l].push(r);
        }
        for a in &mut adjacency {
            a.sort_unstable();
            a.dedup();
        }
        Ok(BipartiteGraph {
            n_left,
            n_right,
            adjacency,
            origin: None,
        })
    }

    pub fn n_left(&self) -> usize {
        self.n_left
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    /// Right neighbors of left vertex `l`, ascending.
    pub fn neighbors(&self, l: usize) -> &[usize] {
        &self.adjacency[l]
    }

    pub fn has_edge(&self, l: usize, r: usize) -> bool {
        self.adjacency
            .get(l)
            .is_some_and(|a| a.binary_search(&r).is_ok())
    }

    /// Source-graph vertex of index `i` (same on both sides) for a bi-double.
    pub fn origin(&self, i: usize) -> Option<usize> {
        self.origin.as_ref().map(|o| o[i])
    }

    pub fn origin_map(&self) -> Option<&[usize]> {
        self.origin.as_deref()
    }
}

/// Bi-double graph `B(G)` over the live vertices of `g`, compacted in
/// ascending id order: left `i` and right `i` both stand for the `i`-th live
/// vertex, and `(u, v')` is an edge iff `{u, v}` is an edge of `g`.
pub fn build_bidouble(g: &Graph) -> BipartiteGraph {
    let ids: Vec<usize> = g.vertices().collect();
    let mut index = vec![usize::MAX; g.capacity()];
    for (i, &v) in ids.iter().enumerate() {
        index[v] = i;
    }
    let adjacency = ids
        .iter()
        .map(|&v| g.neighbors(v).map(|u| index[u]).collect())
        .collect();
    BipartiteGraph {
        n_left: ids.len(),
        n_right: ids.len(),
        adjacency,
        origin: Some(ids),
    }
}

/// A matching as a pair of mutually inverse partial maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    left: Vec<Option<usize>>,
    right: Vec<Option<usize>>,
    size: usize,
}

impl Matching {
    pub fn empty(n_left: usize, n_right: usize) -> Self {
        Matching {
            left: vec![None; n_left],
            right: vec![None; n_right],
            size: 0,
        }
    }

    /// Builds a matching from explicit `(left, right)` pairs.
    pub fn from_pairs(n_left: usize, n_right: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut m = Matching::empty(n_left, n_right);
        for &(l, r) in pairs {
            if l >= n_left || r >= n_right {
                return Err(Error::InvalidMatching(format!(
                    "pair ({l}, {r}) out of range"
                )));
            }
            if m.left[l].is_some() || m.right[r].is_some() {
                return Err(Error::InvalidMatching(format!(
                    "pair ({l}, {r}) reuses a vertex"
                )));
            }
            m.left[l] = Some(r);
            m.right[r] = Some(l);
            m.size += 1;
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn left_partner(&self, l: usize) -> Option<usize> {
        self.left[l]
    }

    pub fn right_partner(&self, r: usize) -> Option<usize> {
        self.right[r]
    }

    /// Matched pairs `(left, right)` in ascending left order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left
            .iter()
            .enumerate()
            .filter_map(|(l, r)| r.map(|r| (l, r)))
    }

    /// Drops the pair containing left vertex `l`, if any. Returns true if a
    /// pair was removed.
    pub fn unmatch_left(&mut self, l: usize) -> bool {
        match self.left[l].take() {
            Some(r) => {
                self.right[r] = None;
                self.size -= 1;
                true
            }
            None => false,
        }
    }

    /// Drops the pair containing right vertex `r`, if any.
    pub fn unmatch_right(&mut self, r: usize) -> bool {
        match self.right[r].take() {
            Some(l) => {
                self.left[l] = None;
                self.size -= 1;
                true
            }
            None => false,
        }
    }

    /// Checks that this is a valid matching of `b`.
    pub fn validate(&self, b: &BipartiteGraph) -> Result<()> {
        if self.left.len() != b.n_left || self.right.len() != b.n_right {
            return Err(Error::InvalidMatching(format!(
                "matching is sized {}x{}, graph is {}x{}",
                self.left.len(),
                self.right.len(),
                b.n_left,
                b.n_right
            )));
        }
        let mut count = 0;
        for (l, r) in self.pairs() {
            if self.right.get(r).copied().flatten() != Some(l) {
                return Err(Error::InvalidMatching(format!(
                    "left {l} and right {r} disagree"
                )));
            }
            if !b.has_edge(l, r) {
                return Err(Error::InvalidMatching(format!("({l}, {r}) is not an edge")));
            }
            count += 1;
        }
        let right_count = self.right.iter().flatten().count();
        if count != self.size || right_count != self.size {
            return Err(Error::InvalidMatching("size does not match pairs".into()));
        }
        Ok(())
    }
}

/// Work done while growing a matching to maximum.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AugmentStats {
    /// Augmenting paths found and applied.
    pub augmentations: usize,
    /// Depth-first searches started, successful or not.
    pub searches: usize,
    /// Passes over the free left vertices; the last one finds nothing.
    pub passes: usize,
}

impl std::ops::AddAssign for AugmentStats {
    fn add_assign(&mut self, o: Self) {
        self.augmentations += o.augmentations;
        self.searches += o.searches;
        self.passes += o.passes;
    }
}

/// Maximum matching of `b`, optionally grown from a valid warm start.
pub fn max_matching(b: &BipartiteGraph, warm_start: Option<&Matching>) -> Result<Matching> {
    max_matching_with_stats(b, warm_start).map(|(m, _)| m)
}

pub fn max_matching_with_stats(
    b: &BipartiteGraph,
    warm_start: Option<&Matching>,
) -> Result<(Matching, AugmentStats)> {
    let mut m = match warm_start {
        Some(w) => {
            w.validate(b)?;
            w.clone()
        }
        None => Matching::empty(b.n_left, b.n_right),
    };
    let stats = augment_to_maximum(b, &mut m, None);
    Ok((m, stats))
}

/// Vertices that are present in a masked view of a bipartite graph.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Mask<'a> {
    pub left: &'a [bool],
    pub right: &'a [bool],
}

impl Mask<'_> {
    fn left(mask: Option<Mask<'_>>, l: usize) -> bool {
        mask.is_none_or(|m| m.left[l])
    }

    fn right(mask: Option<Mask<'_>>, r: usize) -> bool {
        mask.is_none_or(|m| m.right[r])
    }
}

/// Augments `m` until maximum in `b` restricted to `mask`. `m` must only use
/// vertices present in the mask.
pub(crate) fn augment_to_maximum(
    b: &BipartiteGraph,
    m: &mut Matching,
    mask: Option<Mask<'_>>,
) -> AugmentStats {
    let mut stats = AugmentStats::default();
    let mut visited = vec![false; b.n_right];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    loop {
        stats.passes += 1;
        visited.fill(false);
        let mut found = false;
        for l in 0..b.n_left {
            if m.left[l].is_some() || !Mask::left(mask, l) {
                continue;
            }
            stats.searches += 1;
            if try_augment(b, m, l, &mut visited, &mut stack, mask) {
                stats.augmentations += 1;
                found = true;
            }
        }
        if !found {
            return stats;
        }
    }
}

/// Iterative depth-first search for an augmenting path from free left vertex
/// `root`. Each stack frame is `(left vertex, index of next neighbor)`.
fn try_augment(
    b: &BipartiteGraph,
    m: &mut Matching,
    root: usize,
    visited: &mut [bool],
    stack: &mut Vec<(usize, usize)>,
    mask: Option<Mask<'_>>,
) -> bool {
    stack.clear();
    stack.push((root, 0));
    while let Some(top) = stack.len().checked_sub(1) {
        let (u, mut idx) = stack[top];
        let nbrs = &b.adjacency[u];
        let mut next = None;
        while idx < nbrs.len() {
            let r = nbrs[idx];
            idx += 1;
            if visited[r] || !Mask::right(mask, r) {
                continue;
            }
            visited[r] = true;
            next = Some(r);
            break;
        }
        stack[top].1 = idx;
        match next {
            None => {
                stack.pop();
            }
            Some(r) => match m.right[r] {
                Some(partner) => stack.push((partner, 0)),
                None => {
                    // Flip the path: each frame's left vertex takes the right
                    // vertex it last stepped to.
                    for &(lu, li) in stack.iter() {
                        let rr = b.adjacency[lu][li - 1];
                        m.left[lu] = Some(rr);
                        m.right[rr] = Some(lu);
                    }
                    m.size += 1;
                    return true;
                }
            },
        }
    }
    false
}

/// `α(B) = |L| + |R| − |M|` for a maximum matching `M` (König–Gallai).
pub fn independence_number_bipartite(b: &BipartiteGraph, m: &Matching) -> usize {
    b.n_left + b.n_right - m.size
}

/// Independent set of a bipartite graph, split by side.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BipartiteSet {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl BipartiteSet {
    pub fn len(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Alternating reachability `Z` from the free left vertices: left to right
/// along any edge, right to left along matched edges.
pub(crate) fn alternating_reach(
    b: &BipartiteGraph,
    m: &Matching,
    mask: Option<Mask<'_>>,
) -> (Vec<bool>, Vec<bool>) {
    let mut zl = vec![false; b.n_left];
    let mut zr = vec![false; b.n_right];
    let mut queue = VecDeque::new();
    for (l, z) in zl.iter_mut().enumerate() {
        if m.left[l].is_none() && Mask::left(mask, l) {
            *z = true;
            queue.push_back(l);
        }
    }
    while let Some(l) = queue.pop_front() {
        for &r in &b.adjacency[l] {
            if zr[r] || !Mask::right(mask, r) {
                continue;
            }
            zr[r] = true;
            if let Some(p) = m.right[r] {
                if !zl[p] {
                    zl[p] = true;
                    queue.push_back(p);
                }
            }
        }
    }
    (zl, zr)
}

/// Maximum independent set of `b` from a maximum matching: with `Z` the
/// alternating reach of the free left vertices, returns `(L ∩ Z) ∪ (R \ Z)`.
pub fn extract_mis_bipartite(b: &BipartiteGraph, m: &Matching) -> BipartiteSet {
    let (zl, zr) = alternating_reach(b, m, None);
    BipartiteSet {
        left: (0..b.n_left).filter(|&l| zl[l]).collect(),
        right: (0..b.n_right).filter(|&r| !zr[r]).collect(),
    }
}
