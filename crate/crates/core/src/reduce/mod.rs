//! Reduction rules for maximum independent set and the trace that undoes them.
//!
//! Every rule mutates a working [`Graph`] in place and appends a
//! [`ReductionEvent`] to a [`ReductionTrace`]. Each event records the local
//! structure it destroyed, so any maximum independent set of the reduced graph
//! can be lifted back (see [`crate::pipeline::reconstruct`]). The trace offset
//! is the number of vertices the events are guaranteed to contribute:
//! `α(before) = offset + α(after)`.

pub mod advanced;
pub mod critical;
pub mod simple;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub use advanced::{
    funnel_reduce, is_unconfined, lp_reduce, lp_solution, reduce_advanced, reduce_unconfined,
    twin_reduce, LpSolution, LpValue,
};
pub use critical::{
    find_critical_set, is_in_some_critical_independent_set, max_critical_independent_set,
    max_critical_independent_set_probes, max_critical_independent_set_with_stats, reduce_critical,
    reduce_max_critical, CriticalSetResult, LarsonStats, Probe,
};
pub use simple::{apply_fold, apply_simplicial, is_foldable, is_simplicial, reduce_simple};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionEvent {
    /// `v` was simplicial; `removed` is `N[v]`.
    SimplicialInclude { v: usize, removed: VertexSet },
    /// Degree-2 vertex `v` with non-adjacent neighbors `u`, `w` was contracted
    /// into the fresh vertex `new_vertex`.
    Fold {
        v: usize,
        u: usize,
        w: usize,
        new_vertex: usize,
        new_neighbors: VertexSet,
    },
    /// A critical independent set was taken; `removed` is its closed neighborhood.
    CriticalInclude { set: VertexSet, removed: VertexSet },
    /// LP value-1 vertices were taken; `removed_neighbors` had value 0.
    LpInclude {
        set: VertexSet,
        removed_neighbors: VertexSet,
    },
    /// `v` was unconfined and deleted without being taken.
    UnconfinedExclude { v: usize },
    /// Degree-3 twins whose common neighborhood has an edge; both taken.
    TwinInclude {
        u: usize,
        v: usize,
        neighborhood: VertexSet,
    },
    /// Degree-3 twins with an independent common neighborhood, replaced by
    /// `gadget` adjacent to the second neighborhood.
    TwinGadget {
        u: usize,
        v: usize,
        neighborhood: VertexSet,
        gadget: usize,
        gadget_neighbors: VertexSet,
    },
    /// Funnel alternatives `a` and `b`; `c = N(a) ∩ N(b)` was deleted and
    /// `added_edges` join `N(a) \ c` to `N(b) \ c`.
    FunnelResolve {
        a: VertexSet,
        b: VertexSet,
        c: VertexSet,
        added_edges: Vec<(usize, usize)>,
        a_neighbors: VertexSet,
        b_neighbors: VertexSet,
    },
}

impl ReductionEvent {
    /// Vertices this event adds to the solution beyond the reduced graph's MIS.
    pub fn contribution(&self) -> usize {
        match self {
            ReductionEvent::SimplicialInclude { .. } => 1,
            ReductionEvent::Fold { .. } => 1,
            ReductionEvent::CriticalInclude { set, .. } => set.len(),
            ReductionEvent::LpInclude { set, .. } => set.len(),
            ReductionEvent::UnconfinedExclude { .. } => 0,
            ReductionEvent::TwinInclude { .. } => 2,
            ReductionEvent::TwinGadget { .. } => 2,
            ReductionEvent::FunnelResolve { a, .. } => a.len(),
        }
    }
}

/// Per-rule counters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReductionStats {
    pub simplicial: usize,
    pub fold: usize,
    pub critical_iterations: usize,
    pub critical_included: usize,
    pub lp_rounds: usize,
    pub lp_included: usize,
    pub unconfined: usize,
    pub twin_include: usize,
    pub twin_gadget: usize,
    pub funnel: usize,
    /// Bipartite matchings computed from scratch.
    pub matchings: usize,
    /// Warm-started membership tests run by the maximum critical set search.
    pub larson_tests: usize,
    /// Augmenting paths applied across all matchings.
    pub augmentations: usize,
}

/// Ordered undo log of reductions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    events: Vec<ReductionEvent>,
    offset: usize,
    pub stats: ReductionStats,
}

impl ReductionTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, event: ReductionEvent) {
        self.offset += event.contribution();
        self.events.push(event);
    }

    pub fn events(&self) -> &[ReductionEvent] {
        &self.events
    }

    /// Guaranteed MIS-size contribution of all recorded events.
    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }
}

/// A single reduction rule, for applying one step at a time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Simplicial,
    Fold,
    Critical,
    MaxCritical,
    Lp,
    Unconfined,
    Twin,
    Funnel,
}

impl Rule {
    pub const ALL: [Rule; 8] = [
        Rule::Simplicial,
        Rule::Fold,
        Rule::Critical,
        Rule::MaxCritical,
        Rule::Lp,
        Rule::Unconfined,
        Rule::Twin,
        Rule::Funnel,
    ];

    /// Applies the first applicable instance of this rule (lowest vertex id
    /// first). Returns false when the rule does not apply anywhere.
    pub fn apply_once(self, g: &mut Graph, trace: &mut ReductionTrace) -> Result<bool> {
        match self {
            Rule::Simplicial => {
                let v = g.vertices().find(|&v| simple::simplicial_unchecked(g, v));
                match v {
                    Some(v) => apply_simplicial(g, v, trace).map(|_| true),
                    None => Ok(false),
                }
            }
            Rule::Fold => {
                let v = g.vertices().find(|&v| is_foldable(g, v));
                match v {
                    Some(v) => apply_fold(g, v, trace).map(|_| true),
                    None => Ok(false),
                }
            }
            Rule::Critical => Ok(critical::critical_step(g, trace)),
            Rule::MaxCritical => Ok(critical::max_critical_step(g, trace)),
            Rule::Lp => Ok(advanced::lp_step(g, trace)),
            Rule::Unconfined => {
                let v = g.vertices().find(|&v| advanced::unconfined_unchecked(g, v));
                match v {
                    Some(v) => {
                        advanced::exclude_unconfined(g, v, trace);
                        Ok(true)
                    }
                    None => Ok(false),
                }
            }
            Rule::Twin => Ok(advanced::twin_step(g, trace)),
            Rule::Funnel => Ok(advanced::funnel_step(g, trace)),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::Simplicial => "simplicial",
            Rule::Fold => "fold",
            Rule::Critical => "critical",
            Rule::MaxCritical => "maxcritical",
            Rule::Lp => "lp",
            Rule::Unconfined => "unconfined",
            Rule::Twin => "twin",
            Rule::Funnel => "funnel",
        };
        f.write_str(s)
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Rule::ALL
            .into_iter()
            .find(|r| r.to_string() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown rule '{s}'")))
    }
}
