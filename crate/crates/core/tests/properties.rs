use std::time::Instant;

use miskern::graph::{connected_components, induced_subgraph, Graph};
use miskern::matching::{build_bidouble, extract_mis_bipartite, max_matching};
use miskern::oracle::{alpha, brute_force_mis};
use miskern::pipeline::{kernelize, reconstruct, solve_exact, SolveOptions, Strategy};
use miskern::reduce::{
    find_critical_set, lp_solution, reduce_simple, LpValue, ReductionEvent, ReductionTrace, Rule,
};
use miskern::solver::{coloring_bound, solve, SolverOptions};
use miskern::{generate, GraphKind};
use proptest::prelude::*;
use proptest::strategy::Strategy as _;

fn arb_graph(max_n: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    (
        1..=max_n,
        prop::sample::select(vec![0.1, 0.2, 0.3, 0.5]),
        any::<u64>(),
    )
        .prop_map(|(n, p, seed)| generate(GraphKind::Gnp { n, p, seed }).unwrap())
}

/// A random graph plus two fresh degree-3 vertices sharing one neighborhood.
fn arb_planted_twins() -> impl proptest::strategy::Strategy<Value = Graph> {
    (arb_graph(10), any::<u64>()).prop_filter_map("needs 3 vertices", |(mut g, pick)| {
        let n = g.num_vertices();
        if n < 3 {
            return None;
        }
        let a = (pick % n as u64) as usize;
        let b = (a + 1 + (pick >> 8) as usize % (n - 1)) % n;
        let c = (0..n).find(|&c| c != a && c != b)?;
        for _ in 0..2 {
            let t = g.add_vertex();
            for x in [a, b, c] {
                g.add_edge(t, x);
            }
        }
        Some(g)
    })
}

/// Lifts an oracle MIS of the reduced working graph back to `original`.
fn lift(original: &Graph, reduced: &Graph, trace: &ReductionTrace) -> Vec<usize> {
    let inner = brute_force_mis(reduced).unwrap();
    reconstruct(trace, &inner, original).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn generated_graphs_are_simple(g in arb_graph(40)) {
        g.assert_consistent();
        for (u, v) in g.edges() {
            prop_assert!(u != v && g.has_edge(v, u));
        }
    }

    #[test]
    fn oracle_mis_is_maximal(g in arb_graph(16)) {
        let s = brute_force_mis(&g).unwrap();
        prop_assert!(g.is_independent(&s));
        for v in g.vertices().filter(|v| !s.contains(v)) {
            prop_assert!(g.neighbors(v).any(|u| s.contains(&u)));
        }
    }

    #[test]
    fn components_do_not_touch(g in arb_graph(40)) {
        let comps = connected_components(&g);
        let mut owner = vec![usize::MAX; g.capacity()];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                prop_assert_eq!(owner[v], usize::MAX);
                owner[v] = i;
            }
        }
        for (u, v) in g.edges() {
            prop_assert_eq!(owner[u], owner[v]);
        }
        prop_assert_eq!(comps.iter().map(Vec::len).sum::<usize>(), g.num_vertices());
    }

    #[test]
    fn simple_preserves_alpha_and_is_idempotent(g in arb_graph(16)) {
        let mut h = g.clone();
        let mut t = ReductionTrace::new();
        reduce_simple(&mut h, &mut t);
        prop_assert_eq!(alpha(&g).unwrap(), t.offset() + alpha(&h).unwrap());
        let snapshot = h.clone();
        let events = t.len();
        reduce_simple(&mut h, &mut t);
        prop_assert_eq!(h, snapshot);
        prop_assert_eq!(t.len(), events);
    }

    #[test]
    fn konig_extraction(g in arb_graph(15)) {
        let b = build_bidouble(&g);
        let m = max_matching(&b, None).unwrap();
        let s = extract_mis_bipartite(&b, &m);
        prop_assert_eq!(s.len(), b.n_left() + b.n_right() - m.size());
        for &l in &s.left {
            for r in b.neighbors(l) {
                prop_assert!(!s.right.contains(r));
            }
        }
    }

    #[test]
    fn critical_set_decomposes_alpha(g in arb_graph(14)) {
        let ic = find_critical_set(&g).independent_set;
        prop_assert!(g.is_independent(&ic));
        let mut h = g.clone();
        let closed: Vec<usize> = ic.iter().flat_map(|&v| g.closed_neighborhood(v)).collect();
        h.remove_vertices(&closed);
        prop_assert_eq!(alpha(&g).unwrap(), ic.len() + alpha(&h).unwrap());
    }

    #[test]
    fn maxcritical_kernel_is_no_larger(g in arb_graph(60)) {
        let a = kernelize(&g, Strategy::Critical).kernel.num_vertices();
        let b = kernelize(&g, Strategy::MaxCritical).kernel.num_vertices();
        prop_assert!(b <= a);
    }

    #[test]
    fn lp_bounds_alpha_and_ones_are_safe(g in arb_graph(14)) {
        let lp = lp_solution(&g);
        let a = alpha(&g).unwrap();
        prop_assert!(lp.total_halves() >= 2 * a);
        let ones = lp.ones();
        let mut h = g.clone();
        let closed: Vec<usize> = ones.iter().flat_map(|&v| g.closed_neighborhood(v)).collect();
        h.remove_vertices(&closed);
        for v in g.vertices() {
            let expect_zero = !ones.contains(&v) && g.neighbors(v).any(|u| ones.contains(&u));
            prop_assert_eq!(lp.value(v) == Some(LpValue::Zero), expect_zero);
        }
        prop_assert_eq!(a, ones.len() + alpha(&h).unwrap());
    }

    #[test]
    fn every_rule_lifts_to_a_maximum_set(g in arb_graph(13)) {
        let a = alpha(&g).unwrap();
        for rule in Rule::ALL {
            let mut h = g.clone();
            let mut t = ReductionTrace::new();
            while rule.apply_once(&mut h, &mut t).unwrap() {}
            let lifted = lift(&g, &h, &t);
            prop_assert!(g.is_independent(&lifted), "{}", rule);
            prop_assert_eq!(lifted.len(), a, "{}", rule);
        }
    }

    #[test]
    fn twins_lift_in_both_cases(g in arb_planted_twins()) {
        let mut h = g.clone();
        let mut t = ReductionTrace::new();
        prop_assert!(Rule::Twin.apply_once(&mut h, &mut t).unwrap());
        let twin = matches!(
            t.events()[0],
            ReductionEvent::TwinInclude { .. } | ReductionEvent::TwinGadget { .. }
        );
        prop_assert!(twin);
        let a = alpha(&g).unwrap();
        prop_assert_eq!(a, t.offset() + alpha(&h).unwrap());
        let lifted = lift(&g, &h, &t);
        prop_assert!(g.is_independent(&lifted));
        prop_assert_eq!(lifted.len(), a);
    }

    #[test]
    fn solver_matches_oracle(g in arb_graph(18)) {
        let out = solve(&g, &SolverOptions::default());
        prop_assert!(out.exact);
        prop_assert!(g.is_independent(&out.set));
        prop_assert_eq!(out.set.len(), alpha(&g).unwrap());
    }

    #[test]
    fn coloring_bound_is_admissible(g in arb_graph(16), mask in any::<u32>()) {
        let candidates: Vec<usize> = g.vertices().filter(|&v| mask >> (v % 32) & 1 == 1).collect();
        let (_, bound) = coloring_bound(&g, &candidates).unwrap();
        let (sub, _) = induced_subgraph(&g, &candidates).unwrap();
        prop_assert!(bound >= alpha(&sub).unwrap());
    }

    #[test]
    fn expired_deadline_still_returns_independent_set(g in arb_graph(80)) {
        let opts = SolverOptions { deadline: Some(Instant::now()), ..Default::default() };
        let out = solve(&g, &opts);
        prop_assert!(g.is_independent(&out.set));
    }

    #[test]
    fn offset_identity_and_strategy_independence(g in arb_graph(14)) {
        let a = alpha(&g).unwrap();
        for s in Strategy::ALL {
            let kr = kernelize(&g, s);
            prop_assert_eq!(a, kr.offset + alpha(&kr.kernel).unwrap(), "{}", s);
            prop_assert!(kr.k_max <= kr.kernel.num_vertices());
            let r = solve_exact(&g, s, &SolveOptions::default()).unwrap();
            prop_assert_eq!(r.alpha, a, "{}", s);
        }
    }
}
