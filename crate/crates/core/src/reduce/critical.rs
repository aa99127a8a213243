//! Critical independent set reductions.
//!
//! A critical set `U` maximizes `|U| − |N(U)|`; `U \ N(U)` is then a critical
//! independent set and lies in some maximum independent set. Both reductions
//! work on the bi-double graph `B(G)`:
//!
//! * [`reduce_critical`] takes the critical set read off one maximum
//!   independent set of `B(G)` and repeats until it comes back empty.
//! * [`reduce_max_critical`] grows a maximum critical independent set one
//!   vertex at a time with the membership test
//!   `α(B(G)) = α(B(G) − N[{v, v'}]) + 2`, re-augmenting a copy of one base
//!   matching for each test instead of matching from scratch.

use super::{ReductionEvent, ReductionTrace};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::matching::{
    alternating_reach, augment_to_maximum, build_bidouble, max_matching_with_stats, AugmentStats,
    BipartiteGraph, Mask, Matching,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalSetResult {
    pub critical_set: VertexSet,
    pub independent_set: VertexSet,
    /// `|U| − |N(U)|`.
    pub difference: i64,
}

/// Critical set from a maximum independent set `J` of `B(G)`:
/// `U = {v : v ∈ J and v' ∈ J}`.
pub fn find_critical_set(g: &Graph) -> CriticalSetResult {
    find_critical_set_counted(g).0
}

fn find_critical_set_counted(g: &Graph) -> (CriticalSetResult, AugmentStats) {
    let b = build_bidouble(g);
    let (m, stats) = max_matching_with_stats(&b, None).expect("no warm start");
    // J = (L ∩ Z) ∪ (R \ Z), so v, v' ∈ J iff left v ∈ Z and right v ∉ Z.
    let (zl, zr) = alternating_reach(&b, &m, None);
    let origin = b.origin_map().expect("bi-double has an origin map");
    let critical_set: VertexSet = (0..b.n_left())
        .filter(|&i| zl[i] && !zr[i])
        .map(|i| origin[i])
        .collect();
    // N(U) here keeps members of U that have a neighbor in U.
    let mut nbhd: VertexSet = critical_set.iter().flat_map(|&v| g.neighbors(v)).collect();
    nbhd.sort_unstable();
    nbhd.dedup();
    let independent_set: VertexSet = critical_set
        .iter()
        .copied()
        .filter(|v| nbhd.binary_search(v).is_err())
        .collect();
    let difference = critical_set.len() as i64 - nbhd.len() as i64;
    (
        CriticalSetResult {
            critical_set,
            independent_set,
            difference,
        },
        stats,
    )
}

fn remove_and_record(g: &mut Graph, set: VertexSet, trace: &mut ReductionTrace) {
    let mut removed: VertexSet = set.iter().flat_map(|&v| g.closed_neighborhood(v)).collect();
    removed.sort_unstable();
    removed.dedup();
    g.remove_vertices(&removed);
    trace.stats.critical_iterations += 1;
    trace.stats.critical_included += set.len();
    trace.push(ReductionEvent::CriticalInclude { set, removed });
}

/// One critical-set round. Returns false when the critical independent set
/// found is empty.
pub(crate) fn critical_step(g: &mut Graph, trace: &mut ReductionTrace) -> bool {
    let (res, stats) = find_critical_set_counted(g);
    trace.stats.matchings += 1;
    trace.stats.augmentations += stats.augmentations;
    if res.independent_set.is_empty() {
        return false;
    }
    remove_and_record(g, res.independent_set, trace);
    true
}

/// Repeatedly removes `N[I_c]` for the critical independent set `I_c` found,
/// stopping when it is empty.
pub fn reduce_critical(g: &mut Graph, trace: &mut ReductionTrace) {
    while critical_step(g, trace) {}
}

/// Counters from one maximum-critical-set computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LarsonStats {
    /// Membership tests run.
    pub tests: usize,
    /// Matched pairs stripped from the base matching before re-augmenting.
    pub stripped: usize,
    /// Work spent re-augmenting after stripping, summed over tests.
    pub reaugment: AugmentStats,
    /// `Σ (deg(v) + deg(v'))` over tested vertices, degrees taken in the
    /// bi-double graph the test ran on.
    pub degree_bound: usize,
    /// Augmentations for the initial base matching.
    pub base_augmentations: usize,
}

/// One membership test of a maximum-critical-set run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Probe {
    pub vertex: usize,
    /// Vertices of `G` whose copies were absent from the tested graph:
    /// `N[I] ∪ N[v]` for the set `I` accepted so far.
    pub excluded: VertexSet,
    /// Size of the warm-started maximum matching of that graph.
    pub matching_size: usize,
    pub member: bool,
}

/// Membership tests on `B(G − N[I])`, where `I` grows as vertices are
/// accepted. Vertices outside the current graph are masked out of `B(G)`.
struct MembershipTester<'a> {
    b: &'a BipartiteGraph,
    base: Matching,
    alpha: usize,
    live: usize,
    present: Vec<bool>,
    left: Vec<bool>,
    right: Vec<bool>,
}

struct TestOutcome {
    member: bool,
    matching: Matching,
    closed: Vec<usize>,
    stripped: usize,
    stats: AugmentStats,
}

impl<'a> MembershipTester<'a> {
    fn new(b: &'a BipartiteGraph, base: Matching) -> Self {
        MembershipTester {
            b,
            alpha: b.n_left() + b.n_right() - base.size(),
            base,
            live: b.n_left(),
            present: vec![true; b.n_left()],
            left: vec![true; b.n_left()],
            right: vec![true; b.n_right()],
        }
    }

    /// Tests compact vertex `i`: removes `N[{i, i'}]` (left `i` and `N(i)`,
    /// right `i'` and `N(i)'`), strips the affected matched pairs from a copy
    /// of the base matching and re-augments inside the remaining graph.
    fn test(&mut self, i: usize) -> TestOutcome {
        let b = self.b;
        let closed: Vec<usize> = std::iter::once(i)
            .chain(b.neighbors(i).iter().copied())
            .filter(|&x| self.present[x])
            .collect();
        let mut m = self.base.clone();
        let mut stripped = 0;
        for &x in &closed {
            self.left[x] = false;
            self.right[x] = false;
            stripped += m.unmatch_left(x) as usize;
            stripped += m.unmatch_right(x) as usize;
        }
        let stats = augment_to_maximum(
            b,
            &mut m,
            Some(Mask {
                left: &self.left,
                right: &self.right,
            }),
        );
        for &x in &closed {
            self.left[x] = true;
            self.right[x] = true;
        }
        let alpha_v = 2 * (self.live - closed.len()) - m.size();
        TestOutcome {
            member: self.alpha == alpha_v + 2,
            matching: m,
            closed,
            stripped,
            stats,
        }
    }

    /// Makes `B(G − N[v])` the current graph after `v` was accepted.
    fn accept(&mut self, out: TestOutcome) {
        for &x in &out.closed {
            self.present[x] = false;
            self.left[x] = false;
            self.right[x] = false;
        }
        self.live -= out.closed.len();
        self.alpha = 2 * self.live - out.matching.size();
        self.base = out.matching;
    }
}

/// Whether `v` lies in some critical independent set of `g`, given a maximum
/// matching `base` of `build_bidouble(g)`.
pub fn is_in_some_critical_independent_set(g: &Graph, v: usize, base: &Matching) -> Result<bool> {
    g.check_alive(v)?;
    let b = build_bidouble(g);
    base.validate(&b)?;
    let mut check = base.clone();
    if augment_to_maximum(&b, &mut check, None).augmentations > 0 {
        return Err(Error::Precondition("base matching is not maximum".into()));
    }
    let i = b
        .origin_map()
        .expect("bi-double has an origin map")
        .binary_search(&v)
        .expect("live vertex is in the bi-double");
    Ok(MembershipTester::new(&b, base.clone()).test(i).member)
}

/// A maximum-cardinality critical independent set.
///
/// Vertices are visited in ascending id order. Each one still in the current
/// graph is tested there; on success it joins the set and the current graph
/// loses its closed neighborhood, otherwise only it leaves the pool. The
/// matching found for an accepted test is the next base matching.
pub fn max_critical_independent_set(g: &Graph) -> VertexSet {
    max_critical_independent_set_with_stats(g).0
}

pub fn max_critical_independent_set_with_stats(g: &Graph) -> (VertexSet, LarsonStats) {
    let (set, stats, _) = larson(g, false);
    (set, stats)
}

/// [`max_critical_independent_set`] with a record of every membership test.
pub fn max_critical_independent_set_probes(g: &Graph) -> (VertexSet, LarsonStats, Vec<Probe>) {
    larson(g, true)
}

fn larson(g: &Graph, record: bool) -> (VertexSet, LarsonStats, Vec<Probe>) {
    let b = build_bidouble(g);
    let (base, base_stats) = max_matching_with_stats(&b, None).expect("no warm start");
    let origin = b.origin_map().expect("bi-double has an origin map");
    let mut stats = LarsonStats {
        base_augmentations: base_stats.augmentations,
        ..Default::default()
    };
    let mut tester = MembershipTester::new(&b, base);
    let mut pool = vec![true; b.n_left()];
    let mut set = Vec::new();
    let mut probes = Vec::new();
    for i in 0..b.n_left() {
        if !pool[i] {
            continue;
        }
        let out = tester.test(i);
        stats.tests += 1;
        stats.stripped += out.stripped;
        stats.reaugment += out.stats;
        stats.degree_bound += 2 * (out.closed.len() - 1);
        if record {
            let mut excluded: VertexSet = (0..b.n_left())
                .filter(|&x| !tester.present[x] || out.closed.contains(&x))
                .map(|x| origin[x])
                .collect();
            excluded.sort_unstable();
            probes.push(Probe {
                vertex: origin[i],
                excluded,
                matching_size: out.matching.size(),
                member: out.member,
            });
        }
        pool[i] = false;
        if out.member {
            set.push(origin[i]);
            for &x in &out.closed {
                pool[x] = false;
            }
            tester.accept(out);
        }
    }
    (set, stats, probes)
}

pub(crate) fn max_critical_step(g: &mut Graph, trace: &mut ReductionTrace) -> bool {
    let (set, stats) = max_critical_independent_set_with_stats(g);
    trace.stats.matchings += 1;
    trace.stats.larson_tests += stats.tests;
    trace.stats.augmentations += stats.base_augmentations + stats.reaugment.augmentations;
    if set.is_empty() {
        return false;
    }
    remove_and_record(g, set, trace);
    true
}

/// Repeatedly removes `N[I]` for a maximum critical independent set `I` until
/// it is empty.
pub fn reduce_max_critical(g: &mut Graph, trace: &mut ReductionTrace) {
    while max_critical_step(g, trace) {}
}
