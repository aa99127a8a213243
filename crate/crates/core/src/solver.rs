//! Coloring-bounded branch-and-bound for maximum independent set.
//!
//! This is a maximum-clique search on the complement graph, with the
//! complement evaluated on the fly: two candidates conflict (are adjacent in
//! the complement) iff they are *not* adjacent in the input. A greedy
//! sequential coloring of the complement partitions the candidates into
//! cliques of the input graph, and an independent set takes at most one vertex
//! per clique, so the number of colors bounds the search.

use std::time::Instant;

use rayon::prelude::*;

use crate::error::Result;
use crate::graph::{connected_components, induced_subgraph, Graph, VertexSet};

#[derive(Clone, Copy, Debug)]
pub struct SolverOptions {
    /// Stop searching once this instant has passed.
    pub deadline: Option<Instant>,
    /// Nodes between deadline checks; the first node is always checked.
    pub check_interval: u64,
    /// Worker threads for independent components. 1 solves them in order on
    /// the calling thread.
    pub jobs: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            deadline: None,
            check_interval: 1024,
            jobs: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ComponentStats {
    pub vertices: usize,
    pub edges: usize,
    pub nodes: u64,
    /// Color bound at the root.
    pub root_bound: usize,
    /// Size of the greedy starting solution.
    pub initial: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveOutcome {
    /// Independent set in the ids of the graph passed in.
    pub set: VertexSet,
    /// False if any component hit the deadline.
    pub exact: bool,
    pub components: Vec<ComponentStats>,
}

impl SolveOutcome {
    pub fn nodes(&self) -> u64 {
        self.components.iter().map(|c| c.nodes).sum()
    }
}

/// Compact adjacency with ascending neighbor lists.
struct Compact {
    adj: Vec<Vec<usize>>,
}

impl Compact {
    fn adjacent(&self, a: usize, b: usize) -> bool {
        let (x, y) = if self.adj[a].len() <= self.adj[b].len() {
            (a, b)
        } else {
            (b, a)
        };
        self.adj[x].binary_search(&y).is_ok()
    }
}

/// Greedy sequential coloring of `order` under the complement relation.
/// Returns `(vertex, color)` sorted by color, colors starting at 1. Vertices
/// whose color is below `min_color` come first, in input order, with color 0.
fn color_sort(c: &Compact, order: &[usize], min_color: usize) -> Vec<(usize, usize)> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = Vec::with_capacity(order.len());
    for &v in order {
        let deg = c.adj[v].len();
        let slot = classes
            .iter()
            .position(|cls| cls.len() <= deg && cls.iter().all(|&u| c.adjacent(u, v)));
        let k = match slot {
            Some(k) => {
                classes[k].push(v);
                k
            }
            None => {
                classes.push(vec![v]);
                classes.len() - 1
            }
        };
        class_of.push(k);
    }
    let mut out: Vec<(usize, usize)> = order
        .iter()
        .zip(&class_of)
        .filter(|&(_, &k)| k + 1 < min_color)
        .map(|(&v, _)| (v, 0))
        .collect();
    for (k, cls) in classes.iter().enumerate().skip(min_color.saturating_sub(1)) {
        out.extend(cls.iter().map(|&v| (v, k + 1)));
    }
    out
}

/// Greedy coloring bound on the independent sets within `candidates`.
///
/// Returns each candidate's color (1-based) in the order the candidates were
/// given, and the number of colors used.
pub fn coloring_bound(g: &Graph, candidates: &[usize]) -> Result<(Vec<(usize, usize)>, usize)> {
    let (sub, mapping) = induced_subgraph(g, candidates)?;
    let c = compact(&sub);
    // induced_subgraph sorts; restore the caller's order for coloring.
    let order: Vec<usize> = candidates
        .iter()
        .map(|v| mapping.binary_search(v).expect("candidate is mapped"))
        .collect();
    let colored = color_sort(&c, &order, 0);
    let num_colors = colored.iter().map(|&(_, k)| k).max().unwrap_or(0);
    let mut by_vertex = vec![0; mapping.len()];
    for (v, k) in colored {
        by_vertex[v] = k;
    }
    Ok((
        order.iter().map(|&i| (mapping[i], by_vertex[i])).collect(),
        num_colors,
    ))
}

fn compact(g: &Graph) -> Compact {
    let ids: Vec<usize> = g.vertices().collect();
    let mut index = vec![usize::MAX; g.capacity()];
    for (i, &v) in ids.iter().enumerate() {
        index[v] = i;
    }
    Compact {
        adj: ids
            .iter()
            .map(|&v| g.neighbors(v).map(|u| index[u]).collect())
            .collect(),
    }
}

struct Frame {
    cands: Vec<(usize, usize)>,
    pos: usize,
}

/// Exact maximum independent set of `g` by branch-and-bound, or the best set
/// found when the deadline passes (then `exact` is false).
pub fn solve_component(g: &Graph, opts: &SolverOptions) -> SolveOutcome {
    let ids: Vec<usize> = g.vertices().collect();
    let c = compact(g);
    let n = ids.len();
    let mut stats = ComponentStats {
        vertices: n,
        edges: g.num_edges(),
        ..Default::default()
    };

    // Ascending degree in g (descending in the complement), ties by id.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (c.adj[v].len(), v));

    let mut taken = vec![false; n];
    let mut best: Vec<usize> = Vec::new();
    for &v in &order {
        if !c.adj[v].iter().any(|&u| taken[u]) {
            taken[v] = true;
            best.push(v);
        }
    }
    stats.initial = best.len();

    let mut exact = true;
    if best.len() < n {
        let root = color_sort(&c, &order, 0);
        stats.root_bound = root.iter().map(|&(_, k)| k).max().unwrap_or(0);
        if stats.root_bound > best.len() {
            exact = search(&c, root, &mut best, &mut stats, opts);
        }
    } else {
        stats.root_bound = n;
    }
    stats.exact = exact;

    let mut set: VertexSet = best.iter().map(|&i| ids[i]).collect();
    set.sort_unstable();
    SolveOutcome {
        set,
        exact,
        components: vec![stats],
    }
}

fn search(
    c: &Compact,
    root: Vec<(usize, usize)>,
    best: &mut Vec<usize>,
    stats: &mut ComponentStats,
    opts: &SolverOptions,
) -> bool {
    let mut current: Vec<usize> = Vec::new();
    let mut mark = vec![false; c.adj.len()];
    let pos = root.len();
    let mut stack = vec![Frame { cands: root, pos }];
    stats.nodes = 1;
    if deadline_passed(opts) {
        return false;
    }
    while let Some(top) = stack.last_mut() {
        if top.pos == 0 {
            stack.pop();
            if !stack.is_empty() {
                current.pop();
            }
            continue;
        }
        top.pos -= 1;
        let (p, color) = top.cands[top.pos];
        if current.len() + color <= best.len() {
            top.pos = 0;
            continue;
        }
        for &u in &c.adj[p] {
            mark[u] = true;
        }
        let next: Vec<usize> = top.cands[..top.pos]
            .iter()
            .map(|&(v, _)| v)
            .filter(|&v| !mark[v])
            .collect();
        for &u in &c.adj[p] {
            mark[u] = false;
        }
        current.push(p);
        if next.is_empty() {
            if current.len() > best.len() {
                best.clone_from(&current);
            }
            current.pop();
            continue;
        }
        let min_color = (best.len() + 1).saturating_sub(current.len());
        let cands = color_sort(c, &next, min_color);
        let pos = cands.len();
        stack.push(Frame { cands, pos });
        stats.nodes += 1;
        if (stats.nodes - 1).is_multiple_of(opts.check_interval.max(1)) && deadline_passed(opts) {
            return false;
        }
    }
    true
}

fn deadline_passed(opts: &SolverOptions) -> bool {
    opts.deadline.is_some_and(|d| Instant::now() >= d)
}

/// Solves each connected component separately and takes the union.
/// Components are reported in order of their smallest vertex regardless of
/// which worker finished first.
pub fn solve(g: &Graph, opts: &SolverOptions) -> SolveOutcome {
    let comps = connected_components(g);
    let run = |comp: &VertexSet| -> SolveOutcome {
        let (sub, mapping) = induced_subgraph(g, comp).expect("component of live vertices");
        let mut out = solve_component(&sub, opts);
        for v in &mut out.set {
            *v = mapping[*v];
        }
        out
    };
    let parts: Vec<SolveOutcome> = if opts.jobs > 1 && comps.len() > 1 {
        match rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
        {
            Ok(pool) => pool.install(|| comps.par_iter().map(run).collect()),
            Err(_) => comps.iter().map(run).collect(),
        }
    } else {
        comps.iter().map(run).collect()
    };

    let mut out = SolveOutcome {
        set: Vec::new(),
        exact: true,
        components: Vec::new(),
    };
    for part in parts {
        out.exact &= part.exact;
        out.set.extend(part.set);
        out.components.extend(part.components);
    }
    out.set.sort_unstable();
    out
}
