//! Kernelize, solve the kernel component by component, lift the solution back
//! and verify it.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{connected_components, induced_subgraph, Graph, VertexSet};
use crate::reduce::{
    reduce_advanced, reduce_critical, reduce_max_critical, reduce_simple, ReductionEvent,
    ReductionStats, ReductionTrace,
};
use crate::solver::{self, SolverOptions};

/// Kernelization strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Simplicial removal and vertex folding.
    Simple,
    /// Repeated critical independent set removal.
    Critical,
    /// Repeated maximum critical independent set removal.
    MaxCritical,
    /// Simplicial, fold, unconfined, twin, funnel and LP.
    Advanced,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::Simple,
        Strategy::Critical,
        Strategy::MaxCritical,
        Strategy::Advanced,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Simple => "simple",
            Strategy::Critical => "critical",
            Strategy::MaxCritical => "maxcritical",
            Strategy::Advanced => "advanced",
        }
    }

    /// Parses a comma-separated list; `all` expands to every strategy.
    pub fn parse_list(s: &str) -> Result<Vec<Strategy>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Strategy::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        if out.is_empty() {
            return Err(Error::InvalidParams("no strategies given".into()));
        }
        Ok(out)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown strategy '{s}'")))
    }
}

/// Output of [`kernelize`].
#[derive(Clone, Debug)]
pub struct KernelResult {
    /// Compacted kernel on ids `0..kernel.num_vertices()`.
    pub kernel: Graph,
    /// `kernel_to_working[k]` is the working-graph id of kernel vertex `k`.
    pub kernel_to_working: Vec<usize>,
    pub trace: ReductionTrace,
    pub offset: usize,
    pub stats: ReductionStats,
    pub time: Duration,
    /// Connected components of the kernel.
    pub components: usize,
    /// Size of the largest kernel component.
    pub k_max: usize,
}

/// Applies `strategy` to a copy of `g` until it reaches its fixpoint.
pub fn kernelize(g: &Graph, strategy: Strategy) -> KernelResult {
    let start = Instant::now();
    let mut working = g.clone();
    let mut trace = ReductionTrace::new();
    match strategy {
        Strategy::Simple => reduce_simple(&mut working, &mut trace),
        Strategy::Critical => reduce_critical(&mut working, &mut trace),
        Strategy::MaxCritical => reduce_max_critical(&mut working, &mut trace),
        Strategy::Advanced => reduce_advanced(&mut working, &mut trace),
    }
    let live: Vec<usize> = working.vertices().collect();
    let (kernel, kernel_to_working) =
        induced_subgraph(&working, &live).expect("live vertices of the working graph");
    let comps = connected_components(&kernel);
    let time = start.elapsed();
    KernelResult {
        components: comps.len(),
        k_max: comps.iter().map(Vec::len).max().unwrap_or(0),
        kernel,
        kernel_to_working,
        offset: trace.offset(),
        stats: trace.stats,
        trace,
        time,
    }
}

/// Lifts an MIS of the reduced graph (in working ids) to an independent set of
/// `original` by replaying the trace in reverse.
pub fn reconstruct(
    trace: &ReductionTrace,
    kernel_mis: &[usize],
    original: &Graph,
) -> Result<VertexSet> {
    let max_id = trace
        .events()
        .iter()
        .flat_map(event_ids)
        .chain(kernel_mis.iter().copied())
        .max()
        .map_or(0, |m| m + 1);
    let mut chosen = vec![false; max_id.max(original.capacity())];
    for &v in kernel_mis {
        chosen[v] = true;
    }

    for event in trace.events().iter().rev() {
        match event {
            ReductionEvent::SimplicialInclude { v, .. } => chosen[*v] = true,
            ReductionEvent::Fold {
                v,
                u,
                w,
                new_vertex,
                ..
            } => {
                if chosen[*new_vertex] {
                    chosen[*new_vertex] = false;
                    chosen[*u] = true;
                    chosen[*w] = true;
                } else {
                    chosen[*v] = true;
                }
            }
            ReductionEvent::CriticalInclude { set, .. } | ReductionEvent::LpInclude { set, .. } => {
                for &v in set {
                    chosen[v] = true;
                }
            }
            ReductionEvent::UnconfinedExclude { .. } => {}
            ReductionEvent::TwinInclude { u, v, .. } => {
                chosen[*u] = true;
                chosen[*v] = true;
            }
            ReductionEvent::TwinGadget {
                u,
                v,
                neighborhood,
                gadget,
                ..
            } => {
                if chosen[*gadget] {
                    chosen[*gadget] = false;
                    for &x in neighborhood {
                        chosen[x] = true;
                    }
                } else {
                    chosen[*u] = true;
                    chosen[*v] = true;
                }
            }
            ReductionEvent::FunnelResolve {
                a, b, a_neighbors, ..
            } => {
                let pick = if a_neighbors.iter().any(|&x| chosen[x]) {
                    b
                } else {
                    a
                };
                for &x in pick {
                    chosen[x] = true;
                }
            }
        }
    }

    let set: VertexSet = (0..chosen.len()).filter(|&v| chosen[v]).collect();
    if let Some(&bad) = set.iter().find(|&&v| !original.is_alive(v)) {
        return Err(Error::TraceMismatch(format!(
            "vertex {bad} survives reconstruction but is not in the original graph"
        )));
    }
    if let Some((u, v)) = original.first_internal_edge(&set) {
        return Err(Error::NotIndependent(u, v));
    }
    Ok(set)
}

fn event_ids(e: &ReductionEvent) -> Vec<usize> {
    match e {
        ReductionEvent::SimplicialInclude { v, .. } => vec![*v],
        ReductionEvent::Fold {
            v,
            u,
            w,
            new_vertex,
            ..
        } => vec![*v, *u, *w, *new_vertex],
        ReductionEvent::CriticalInclude { set, .. } | ReductionEvent::LpInclude { set, .. } => {
            set.clone()
        }
        ReductionEvent::UnconfinedExclude { v } => vec![*v],
        ReductionEvent::TwinInclude { u, v, .. } => vec![*u, *v],
        ReductionEvent::TwinGadget {
            u,
            v,
            neighborhood,
            gadget,
            ..
        } => {
            let mut ids = vec![*u, *v, *gadget];
            ids.extend(neighborhood);
            ids
        }
        ReductionEvent::FunnelResolve {
            a, b, a_neighbors, ..
        } => a.iter().chain(b).chain(a_neighbors).copied().collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Exact,
    Timeout,
    /// Only kernelized; the solution is the lift of an empty kernel solution.
    KernelOnly,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Exact => "exact",
            Status::Timeout => "timeout",
            Status::KernelOnly => "kernel-only",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Status::Exact, Status::Timeout, Status::KernelOnly]
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown status '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Timings {
    pub kernelize: Duration,
    pub solve: Duration,
    pub reconstruct: Duration,
}

/// Kernel statistics carried in a [`SolveReport`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct KernelSummary {
    pub n: usize,
    pub m: usize,
    pub components: usize,
    pub k_max: usize,
    pub offset: usize,
    pub stats: ReductionStats,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub strategy: Strategy,
    /// Size of `mis`; the independence number when `status` is exact.
    pub alpha: usize,
    /// Independent set in original ids, ascending.
    pub mis: VertexSet,
    pub status: Status,
    pub timings: Timings,
    pub kernel: KernelSummary,
    /// Branch-and-bound nodes over all kernel components.
    pub nodes: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Budget for the solving phase; kernelization is never interrupted.
    pub timeout: Option<Duration>,
    pub jobs: usize,
    pub check_interval: u64,
    /// Stop after kernelization.
    pub kernel_only: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            timeout: None,
            jobs: 1,
            check_interval: 1024,
            kernel_only: false,
        }
    }
}

/// Kernelize with `strategy`, solve each kernel component, reconstruct and
/// verify.
pub fn solve_exact(g: &Graph, strategy: Strategy, opts: &SolveOptions) -> Result<SolveReport> {
    let kr = kernelize(g, strategy);
    let mut timings = Timings {
        kernelize: kr.time,
        ..Default::default()
    };

    let solve_start = Instant::now();
    let (kernel_mis, status, nodes) = if opts.kernel_only {
        (Vec::new(), Status::KernelOnly, 0)
    } else {
        let solver_opts = SolverOptions {
            deadline: opts.timeout.map(|t| solve_start + t),
            check_interval: opts.check_interval,
            jobs: opts.jobs,
        };
        let out = solver::solve(&kr.kernel, &solver_opts);
        let status = if out.exact {
            Status::Exact
        } else {
            Status::Timeout
        };
        let nodes = out.nodes();
        (out.set, status, nodes)
    };
    timings.solve = solve_start.elapsed();

    let lift_start = Instant::now();
    let working: Vec<usize> = kernel_mis
        .iter()
        .map(|&k| kr.kernel_to_working[k])
        .collect();
    let mis = reconstruct(&kr.trace, &working, g)?;
    let expected = kr.offset + kernel_mis.len();
    match verify_claim(g, &mis, expected) {
        Verdict::Valid => {}
        Verdict::Violation(u, v) => return Err(Error::NotIndependent(u, v)),
        other => {
            return Err(Error::TraceMismatch(format!(
                "reconstruction check failed: {other:?}"
            )))
        }
    }
    timings.reconstruct = lift_start.elapsed();

    Ok(SolveReport {
        strategy,
        alpha: mis.len(),
        mis,
        status,
        timings,
        kernel: KernelSummary {
            n: kr.kernel.num_vertices(),
            m: kr.kernel.num_edges(),
            components: kr.components,
            k_max: kr.k_max,
            offset: kr.offset,
            stats: kr.stats,
        },
        nodes,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// First edge `(u, v)`, `u < v`, with both ends in the set.
    Violation(usize, usize),
    /// The set names a vertex the graph does not have.
    UnknownVertex(usize),
    /// The set is independent but not of the claimed size.
    ClaimsMismatch {
        claimed: usize,
        actual: usize,
    },
}

/// Checks that `s` is an independent set of `g`.
pub fn verify_solution(g: &Graph, s: &[usize]) -> Verdict {
    if let Some(&v) = s.iter().find(|&&v| !g.is_alive(v)) {
        return Verdict::UnknownVertex(v);
    }
    match g.first_internal_edge(s) {
        Some((u, v)) => Verdict::Violation(u, v),
        None => Verdict::Valid,
    }
}

/// [`verify_solution`] plus a check that `s` has `claimed` distinct vertices.
pub fn verify_claim(g: &Graph, s: &[usize], claimed: usize) -> Verdict {
    match verify_solution(g, s) {
        Verdict::Valid => {
            let mut distinct = s.to_vec();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.len() == claimed {
                Verdict::Valid
            } else {
                Verdict::ClaimsMismatch {
                    claimed,
                    actual: distinct.len(),
                }
            }
        }
        other => other,
    }
}
