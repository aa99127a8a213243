//! LP, unconfined, twin and funnel reductions, and the combined `Advanced`
//! fixpoint.

use std::collections::{BTreeSet, HashMap};

use super::simple::{reduce_simple, simplicial_unchecked};
use super::{ReductionEvent, ReductionTrace};
use crate::error::Result;
use crate::graph::{Graph, VertexSet};
use crate::matching::{alternating_reach, build_bidouble, max_matching_with_stats};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LpValue {
    Zero,
    Half,
    One,
}

impl LpValue {
    pub fn halves(self) -> usize {
        match self {
            LpValue::Zero => 0,
            LpValue::Half => 1,
            LpValue::One => 2,
        }
    }
}

/// Half-integral optimum of `max Σ x_v` subject to `x_u + x_v ≤ 1` per edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    /// `(vertex, value)` for each live vertex, ascending.
    pub values: Vec<(usize, LpValue)>,
}

impl LpSolution {
    pub fn value(&self, v: usize) -> Option<LpValue> {
        self.values
            .binary_search_by_key(&v, |&(x, _)| x)
            .ok()
            .map(|i| self.values[i].1)
    }

    /// Objective value times two.
    pub fn total_halves(&self) -> usize {
        self.values.iter().map(|(_, x)| x.halves()).sum()
    }

    pub fn ones(&self) -> VertexSet {
        self.values
            .iter()
            .filter(|(_, x)| *x == LpValue::One)
            .map(|&(v, _)| v)
            .collect()
    }
}

/// Solves the relaxation through a maximum matching of `B(G)`: with `C` the
/// König vertex cover `(L \ Z) ∪ (R ∩ Z)`, vertex `v` gets
/// `(2 − |{v, v'} ∩ C|) / 2`.
pub fn lp_solution(g: &Graph) -> LpSolution {
    lp_solution_counted(g).0
}

fn lp_solution_counted(g: &Graph) -> (LpSolution, usize) {
    let b = build_bidouble(g);
    let (m, stats) = max_matching_with_stats(&b, None).expect("no warm start");
    let (zl, zr) = alternating_reach(&b, &m, None);
    let origin = b.origin_map().expect("bi-double has an origin map");
    let values = (0..b.n_left())
        .map(|i| {
            let x = match (zl[i], zr[i]) {
                (true, false) => LpValue::One,
                (false, true) => LpValue::Zero,
                _ => LpValue::Half,
            };
            (origin[i], x)
        })
        .collect();
    (LpSolution { values }, stats.augmentations)
}

pub(crate) fn lp_step(g: &mut Graph, trace: &mut ReductionTrace) -> bool {
    let (sol, augmentations) = lp_solution_counted(g);
    trace.stats.matchings += 1;
    trace.stats.augmentations += augmentations;
    let set = sol.ones();
    if set.is_empty() {
        return false;
    }
    let removed_neighbors = g.set_neighborhood(&set);
    debug_assert!(removed_neighbors
        .iter()
        .all(|&v| sol.value(v) == Some(LpValue::Zero)));
    g.remove_vertices(&set);
    g.remove_vertices(&removed_neighbors);
    trace.stats.lp_rounds += 1;
    trace.stats.lp_included += set.len();
    trace.push(ReductionEvent::LpInclude {
        set,
        removed_neighbors,
    });
    true
}

/// Takes every value-1 vertex and deletes its (value-0) neighbors, re-solving
/// until no value-1 vertex remains. Returns true if anything was removed.
pub fn lp_reduce(g: &mut Graph, trace: &mut ReductionTrace) -> bool {
    let mut changed = false;
    while lp_step(g, trace) {
        changed = true;
    }
    changed
}

/// Grows `S = {v}` while some `u ∈ N(S)` with exactly one neighbor in `S`
/// has exactly one neighbor outside `N[S]`, picking the `u` with the fewest
/// such outside neighbors (then the smallest id). `v` is unconfined when some
/// such `u` has none.
pub fn is_unconfined(g: &Graph, v: usize) -> Result<bool> {
    g.check_alive(v)?;
    Ok(unconfined_unchecked(g, v))
}

pub(crate) fn unconfined_unchecked(g: &Graph, v: usize) -> bool {
    let mut s: BTreeSet<usize> = BTreeSet::from([v]);
    let mut closed: BTreeSet<usize> = g.closed_neighborhood(v).into_iter().collect();
    loop {
        // (outside count, u, sole outside vertex)
        let mut best: Option<(usize, usize, Option<usize>)> = None;
        for &u in closed.difference(&s) {
            let mut in_s = 0;
            let mut outside = 0;
            let mut sole = None;
            for x in g.neighbors(u) {
                if s.contains(&x) {
                    in_s += 1;
                    if in_s > 1 {
                        break;
                    }
                } else if !closed.contains(&x) {
                    outside += 1;
                    sole = Some(x);
                }
            }
            if in_s != 1 {
                continue;
            }
            if outside == 0 {
                return true;
            }
            if best.is_none_or(|(o, _, _)| outside < o) {
                best = Some((outside, u, sole));
            }
        }
        match best {
            Some((1, _, Some(w))) => {
                s.insert(w);
                closed.extend(g.closed_neighborhood(w));
            }
            _ => return false,
        }
    }
}

pub(crate) fn exclude_unconfined(g: &mut Graph, v: usize, trace: &mut ReductionTrace) {
    g.remove_vertex(v);
    trace.stats.unconfined += 1;
    trace.push(ReductionEvent::UnconfinedExclude { v });
}

/// Deletes unconfined vertices, scanning ids in ascending order and repeating
/// the scan until a full pass removes nothing. Returns true on any removal.
pub fn reduce_unconfined(g: &mut Graph, trace: &mut ReductionTrace) -> bool {
    let mut changed = false;
    loop {
        let mut pass = false;
        for v in 0..g.capacity() {
            if g.is_alive(v) && unconfined_unchecked(g, v) {
                exclude_unconfined(g, v, trace);
                pass = true;
            }
        }
        if !pass {
            return changed;
        }
        changed = true;
    }
}

/// Degree-3 twin pairs `(u, v)`, `u < v`, grouped by neighborhood in
/// ascending order of `v`.
fn twin_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let mut first: HashMap<[usize; 3], usize> = HashMap::new();
    let mut pairs = Vec::new();
    for v in g.vertices() {
        if g.degree(v) != 3 {
            continue;
        }
        let mut it = g.neighbors(v);
        let key = [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()];
        match first.get(&key) {
            Some(&u) => pairs.push((u, v)),
            None => {
                first.insert(key, v);
            }
        }
    }
    pairs
}

fn still_twins(g: &Graph, u: usize, v: usize) -> bool {
    g.is_alive(u)
        && g.is_alive(v)
        && g.degree(u) == 3
        && g.degree(v) == 3
        && g.neighbor_set(u) == g.neighbor_set(v)
}

fn twin_apply(g: &mut Graph, u: usize, v: usize, trace: &mut ReductionTrace) {
    let neighborhood: VertexSet = g.neighbors(u).collect();
    if g.is_independent(&neighborhood) {
        let mut second: BTreeSet<usize> = BTreeSet::new();
        for &x in &neighborhood {
            second.extend(g.neighbors(x));
        }
        second.remove(&u);
        second.remove(&v);
        g.remove_vertex(u);
        g.remove_vertex(v);
        g.remove_vertices(&neighborhood);
        let gadget = g.add_vertex();
        for &y in &second {
            g.add_edge(gadget, y);
        }
        trace.stats.twin_gadget += 1;
        trace.push(ReductionEvent::TwinGadget {
            u,
            v,
            neighborhood,
            gadget,
            gadget_neighbors: second.into_iter().collect(),
        });
    } else {
        g.remove_vertex(u);
        g.remove_vertex(v);
        g.remove_vertices(&neighborhood);
        trace.stats.twin_include += 1;
        trace.push(ReductionEvent::TwinInclude { u, v, neighborhood });
    }
}

pub(crate) fn twin_step(g: &mut Graph, trace: &mut ReductionTrace) -> bool {
    match twin_pairs(g).first() {
        Some(&(u, v)) => {
            twin_apply(g, u, v, trace);
            true
        }
        None => false,
    }
}

/// Resolves degree-3 twins with identical neighborhoods until none remain.
/// Returns true if any pair was reduced.
pub fn twin_reduce(g: &mut Graph, trace: &mut ReductionTrace) -> bool {
    let mut changed = false;
    loop {
        let mut pass = false;
        for (u, v) in twin_pairs(g) {
            if still_twins(g, u, v) {
                twin_apply(g, u, v, trace);
                pass = true;
            }
        }
        if !pass {
            return changed;
        }
        changed = true;
    }
}

/// A neighbor `u` of `v` such that `N(v) \ {u}` is a clique, with neither `u`
/// nor `v` simplicial.
fn find_funnel(g: &Graph, v: usize) -> Option<usize> {
    let nbrs: Vec<usize> = g.neighbors(v).collect();
    // Any u must cover every non-adjacent pair in N(v); the first such pair
    // leaves two candidates. No pair means v is simplicial.
    let (a, b) = nbrs.iter().enumerate().find_map(|(i, &a)| {
        nbrs[i + 1..]
            .iter()
            .find(|&&b| !g.has_edge(a, b))
            .map(|&b| (a, b))
    })?;
    [a, b].into_iter().find(|&u| {
        let rest: Vec<usize> = nbrs.iter().copied().filter(|&x| x != u).collect();
        g.is_clique(&rest) && !simplicial_unchecked(g, u)
    })
}

fn funnel_apply(g: &mut Graph, u: usize, v: usize, trace: &mut ReductionTrace) {
    let nu: BTreeSet<usize> = g.neighbors(u).filter(|&x| x != v).collect();
    let nv: BTreeSet<usize> = g.neighbors(v).filter(|&x| x != u).collect();
    let c: VertexSet = nu.intersection(&nv).copied().collect();
    let a_neighbors: VertexSet = nu.difference(&nv).copied().collect();
    let b_neighbors: VertexSet = nv.difference(&nu).copied().collect();
    g.remove_vertex(u);
    g.remove_vertex(v);
    g.remove_vertices(&c);
    let mut added_edges = Vec::new();
    for &x in &a_neighbors {
        for &y in &b_neighbors {
            if g.add_edge(x, y) {
                added_edges.push((x.min(y), x.max(y)));
            }
        }
    }
    trace.stats.funnel += 1;
    trace.push(ReductionEvent::FunnelResolve {
        a: vec![u],
        b: vec![v],
        c,
        added_edges,
        a_neighbors,
        b_neighbors,
    });
}

pub(crate) fn funnel_step(g: &mut Graph, trace: &mut ReductionTrace) -> bool {
    for v in g.vertices().collect::<Vec<_>>() {
        if let Some(u) = find_funnel(g, v) {
            funnel_apply(g, u, v, trace);
            return true;
        }
    }
    false
}

/// Resolves funnels `{u}`, `{v}` as alternatives until none remain. Returns
/// true if any funnel was reduced.
pub fn funnel_reduce(g: &mut Graph, trace: &mut ReductionTrace) -> bool {
    let mut changed = false;
    loop {
        let mut pass = false;
        for v in 0..g.capacity() {
            if !g.is_alive(v) {
                continue;
            }
            if let Some(u) = find_funnel(g, v) {
                funnel_apply(g, u, v, trace);
                pass = true;
            }
        }
        if !pass {
            return changed;
        }
        changed = true;
    }
}

/// Fixpoint over simplicial, fold, unconfined, twin, funnel and LP, cheapest
/// first; each rule runs only once everything before it is exhausted.
pub fn reduce_advanced(g: &mut Graph, trace: &mut ReductionTrace) {
    loop {
        reduce_simple(g, trace);
        if reduce_unconfined(g, trace)
            || twin_reduce(g, trace)
            || funnel_reduce(g, trace)
            || lp_reduce(g, trace)
        {
            continue;
        }
        break;
    }
}
