//! Simplicial vertex removal at any degree and degree-2 vertex folding.

use std::collections::{BTreeSet, VecDeque};

use super::{ReductionEvent, ReductionTrace};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// True iff the neighborhood of `v` is a clique. Degree 0 and 1 qualify.
pub fn is_simplicial(g: &Graph, v: usize) -> Result<bool> {
    g.check_alive(v)?;
    Ok(simplicial_unchecked(g, v))
}

pub(crate) fn simplicial_unchecked(g: &Graph, v: usize) -> bool {
    let nbrs: Vec<usize> = g.neighbors(v).collect();
    for (i, &a) in nbrs.iter().enumerate() {
        // a needs at least deg(v) - 1 neighbors for N(v) to be a clique.
        if g.degree(a) + 1 < nbrs.len() {
            return false;
        }
        let na = g.neighbor_set(a);
        if !nbrs[i + 1..].iter().all(|b| na.contains(b)) {
            return false;
        }
    }
    true
}

/// Takes simplicial `v` into the solution and deletes `N[v]`.
pub fn apply_simplicial(g: &mut Graph, v: usize, trace: &mut ReductionTrace) -> Result<()> {
    if !is_simplicial(g, v)? {
        return Err(Error::Precondition(format!("vertex {v} is not simplicial")));
    }
    simplicial_apply(g, v, trace);
    Ok(())
}

/// Returns the surviving vertices whose neighborhood shrank.
fn simplicial_apply(g: &mut Graph, v: usize, trace: &mut ReductionTrace) -> BTreeSet<usize> {
    let removed = g.closed_neighborhood(v);
    let mut touched = BTreeSet::new();
    for &x in &removed {
        touched.extend(g.remove_vertex(x));
    }
    for x in &removed {
        touched.remove(x);
    }
    trace.stats.simplicial += 1;
    trace.push(ReductionEvent::SimplicialInclude { v, removed });
    touched
}

/// True iff `v` has degree 2 and its two neighbors are not adjacent.
pub fn is_foldable(g: &Graph, v: usize) -> bool {
    if !g.is_alive(v) || g.degree(v) != 2 {
        return false;
    }
    let mut it = g.neighbors(v);
    let (u, w) = (it.next().unwrap(), it.next().unwrap());
    !g.has_edge(u, w)
}

/// Contracts `v` and its non-adjacent neighbors `u < w` into a fresh vertex
/// adjacent to `(N(u) ∪ N(w)) \ {u, v, w}`. Returns the fresh id.
pub fn apply_fold(g: &mut Graph, v: usize, trace: &mut ReductionTrace) -> Result<usize> {
    g.check_alive(v)?;
    if g.degree(v) != 2 {
        return Err(Error::Precondition(format!(
            "vertex {v} has degree {}, folding needs 2",
            g.degree(v)
        )));
    }
    if !is_foldable(g, v) {
        return Err(Error::Precondition(format!(
            "neighbors of {v} are adjacent; the simplicial rule applies instead"
        )));
    }
    Ok(fold_apply(g, v, trace))
}

fn fold_apply(g: &mut Graph, v: usize, trace: &mut ReductionTrace) -> usize {
    let (u, w) = {
        let mut it = g.neighbors(v);
        (it.next().unwrap(), it.next().unwrap())
    };
    let mut nbrs: BTreeSet<usize> = g
        .neighbor_set(u)
        .union(g.neighbor_set(w))
        .copied()
        .collect();
    nbrs.remove(&v);
    g.remove_vertex(u);
    g.remove_vertex(v);
    g.remove_vertex(w);
    let fresh = g.add_vertex();
    for &x in &nbrs {
        g.add_edge(fresh, x);
    }
    trace.stats.fold += 1;
    trace.push(ReductionEvent::Fold {
        v,
        u,
        w,
        new_vertex: fresh,
        new_neighbors: nbrs.into_iter().collect(),
    });
    fresh
}

/// Applies simplicial removal and folding until neither applies.
pub fn reduce_simple(g: &mut Graph, trace: &mut ReductionTrace) {
    let mut queued = vec![false; g.capacity()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for v in g.vertices() {
        queued[v] = true;
        queue.push_back(v);
    }
    fn enqueue(queue: &mut VecDeque<usize>, queued: &mut Vec<bool>, v: usize) {
        if v >= queued.len() {
            queued.resize(v + 1, false);
        }
        if !queued[v] {
            queued[v] = true;
            queue.push_back(v);
        }
    }

    while let Some(v) = queue.pop_front() {
        queued[v] = false;
        if !g.is_alive(v) {
            continue;
        }
        if simplicial_unchecked(g, v) {
            for x in simplicial_apply(g, v, trace) {
                enqueue(&mut queue, &mut queued, x);
            }
        } else if is_foldable(g, v) {
            let fresh = fold_apply(g, v, trace);
            // The fresh vertex and its neighbors changed neighborhoods, which
            // can also turn their neighbors simplicial.
            enqueue(&mut queue, &mut queued, fresh);
            let first: Vec<usize> = g.neighbors(fresh).collect();
            for x in first {
                enqueue(&mut queue, &mut queued, x);
                let second: Vec<usize> = g.neighbors(x).collect();
                for y in second {
                    enqueue(&mut queue, &mut queued, y);
                }
            }
        }
    }
}
