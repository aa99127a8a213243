//! Acceptance criteria 1-10. Runs without the libtest harness so every
//! criterion prints exactly one PASS/FAIL line.

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use miskern::bench::{parse_csv, BenchRow};
use miskern::graph::{connected_components, induced_subgraph, Graph};
use miskern::matching::{build_bidouble, max_matching, Matching};
use miskern::oracle::{alpha, critical_independent_sets, max_critical_difference};
use miskern::pipeline::{
    kernelize, solve_exact, verify_solution, SolveOptions, Status, Strategy, Verdict,
};
use miskern::reduce::{
    find_critical_set, is_in_some_critical_independent_set, max_critical_independent_set,
    max_critical_independent_set_probes, ReductionTrace, Rule,
};
use miskern::solver::{solve, SolverOptions};
use miskern::{generate, write_edge_list, GraphKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PS: [f64; 4] = [0.1, 0.2, 0.3, 0.5];

fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    generate(GraphKind::Gnp { n, p, seed }).unwrap()
}

/// Random graph with `n` vertices and exactly `m` distinct edges.
fn gnm(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::new(n);
    while g.num_edges() < m {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            g.add_edge(u, v);
        }
    }
    g
}

fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges).unwrap()
}

fn assert_valid(g: &Graph, s: &[usize], ctx: &str) {
    assert_eq!(verify_solution(g, s), Verdict::Valid, "{ctx}");
}

/// α of a forest by leaf-up dynamic programming.
fn forest_alpha(g: &Graph) -> usize {
    let mut total = 0;
    for comp in connected_components(g) {
        let root = comp[0];
        let mut order = vec![root];
        let mut parent = vec![usize::MAX; g.capacity()];
        parent[root] = root;
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            for w in g.neighbors(v) {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    order.push(w);
                }
            }
            i += 1;
        }
        let (mut take, mut skip) = (vec![1usize; g.capacity()], vec![0usize; g.capacity()]);
        for &v in order.iter().rev() {
            for w in g.neighbors(v).filter(|&w| parent[w] == v) {
                take[v] += skip[w];
                skip[v] += take[w].max(skip[w]);
            }
        }
        total += take[root].max(skip[root]);
    }
    total
}

fn criterion_1() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..500u64 {
        let n = rng.gen_range(4..=16);
        let p = PS[(i % 4) as usize];
        let g = gnp(n, p, 1000 + i);
        let a = alpha(&g).unwrap();
        for s in Strategy::ALL {
            let r = solve_exact(&g, s, &SolveOptions::default()).unwrap();
            assert_eq!(r.status, Status::Exact);
            assert_eq!(r.alpha, a, "graph {i} strategy {s}");
            assert_valid(&g, &r.mis, &format!("graph {i} strategy {s}"));
        }
    }
    "500 graphs x 4 strategies match the oracle".into()
}

fn criterion_2() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut steps = [0usize; Rule::ALL.len()];
    for i in 0..200u64 {
        let n = rng.gen_range(4..=14);
        let g0 = gnp(n, PS[(i % 4) as usize], 2000 + i);
        for (k, rule) in Rule::ALL.into_iter().enumerate() {
            let mut g = g0.clone();
            let mut t = ReductionTrace::new();
            loop {
                let before = alpha(&g).unwrap();
                let offset = t.offset();
                if !rule.apply_once(&mut g, &mut t).unwrap() {
                    break;
                }
                g.assert_consistent();
                steps[k] += 1;
                assert_eq!(
                    before,
                    t.offset() - offset + alpha(&g).unwrap(),
                    "graph {i} {rule}"
                );
            }
        }
        // Interleaved: each rule in turn until none applies.
        let mut g = g0.clone();
        let mut t = ReductionTrace::new();
        let mut progress = true;
        while progress {
            progress = false;
            for rule in Rule::ALL {
                let before = alpha(&g).unwrap();
                let offset = t.offset();
                if rule.apply_once(&mut g, &mut t).unwrap() {
                    progress = true;
                    assert_eq!(
                        before,
                        t.offset() - offset + alpha(&g).unwrap(),
                        "graph {i} {rule}"
                    );
                }
            }
        }
    }
    let fired: Vec<String> = Rule::ALL
        .iter()
        .zip(steps)
        .map(|(r, c)| format!("{r}={c}"))
        .collect();
    format!("200 graphs, steps checked: {}", fired.join(" "))
}

fn criterion_3() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..200u64 {
        let n = rng.gen_range(2..=12);
        let g = gnp(n, PS[(i % 4) as usize], 3000 + i);
        let r = find_critical_set(&g);
        assert_eq!(
            r.difference,
            max_critical_difference(&g).unwrap(),
            "graph {i}"
        );
        let sets = critical_independent_sets(&g).unwrap();
        assert!(
            sets.contains(&r.independent_set),
            "graph {i}: I_c is not critical"
        );
    }
    "200 graphs, critical difference equals the exhaustive maximum".into()
}

fn criterion_4() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut tests = 0;
    for i in 0..100u64 {
        let n = rng.gen_range(2..=10);
        let g = gnp(n, PS[(i % 4) as usize], 4000 + i);
        let sets = critical_independent_sets(&g).unwrap();
        let base = max_matching(&build_bidouble(&g), None).unwrap();
        for v in g.vertices() {
            let expected = sets.iter().any(|s| s.contains(&v));
            let got = is_in_some_critical_independent_set(&g, v, &base).unwrap();
            assert_eq!(got, expected, "graph {i} vertex {v}");
            tests += 1;
        }
        let mcis = max_critical_independent_set(&g);
        let best = sets.iter().map(Vec::len).max().unwrap();
        assert_eq!(mcis.len(), best, "graph {i}");
        assert!(sets.contains(&mcis), "graph {i}: result is not critical");
    }
    format!("100 graphs, {tests} membership tests agree with enumeration")
}

fn criterion_5() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut checked, mut augmentations, mut bound) = (0usize, 0usize, 0usize);
    for i in 0..12 {
        let n = rng.gen_range(20..=200);
        let m = rng.gen_range(n / 2..=1000.min(n * (n - 1) / 2));
        let g = gnm(n, m, &mut rng);

        // Every warm-started test against a matching of the same bi-double
        // graph rebuilt from scratch.
        let (_, stats, probes) = max_critical_independent_set_probes(&g);
        for p in &probes {
            let rest: Vec<usize> = g
                .vertices()
                .filter(|v| p.excluded.binary_search(v).is_err())
                .collect();
            let (sub, _) = induced_subgraph(&g, &rest).unwrap();
            let scratch = max_matching(&build_bidouble(&sub), None).unwrap();
            assert_eq!(
                p.matching_size,
                scratch.size(),
                "graph {i} vertex {}",
                p.vertex
            );
            checked += 1;
        }
        assert!(
            stats.reaugment.augmentations <= stats.degree_bound,
            "graph {i}: {} augmentations over bound {}",
            stats.reaugment.augmentations,
            stats.degree_bound
        );
        augmentations += stats.reaugment.augmentations;
        bound += stats.degree_bound;

        // Warm starts from arbitrary sub-matchings of a maximum matching.
        let b = build_bidouble(&g);
        let full = max_matching(&b, None).unwrap();
        for _ in 0..5 {
            let keep: Vec<(usize, usize)> = full.pairs().filter(|_| rng.gen_bool(0.5)).collect();
            let warm = Matching::from_pairs(b.n_left(), b.n_right(), &keep).unwrap();
            assert_eq!(
                max_matching(&b, Some(&warm)).unwrap().size(),
                full.size(),
                "graph {i}"
            );
            checked += 1;
        }
    }
    format!(
        "{checked} warm-started matchings equal scratch; augmentations {augmentations} <= bound {bound}"
    )
}

fn criterion_6() -> String {
    let check = |g: &Graph, expected: Option<usize>, ctx: &str| {
        let kr = kernelize(g, Strategy::Simple);
        assert_eq!(kr.kernel.num_vertices(), 0, "{ctx}: kernel not empty");
        let r = solve_exact(g, Strategy::Simple, &SolveOptions::default()).unwrap();
        assert_valid(g, &r.mis, ctx);
        assert_eq!(r.alpha, kr.offset, "{ctx}");
        if let Some(a) = expected {
            assert_eq!(r.alpha, a, "{ctx}");
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for seed in 0..100 {
        let tree = generate(GraphKind::Tree {
            n: rng.gen_range(1..=200),
            seed,
        })
        .unwrap();
        check(&tree, Some(forest_alpha(&tree)), &format!("tree {seed}"));
    }
    for _ in 0..50 {
        let n = rng.gen_range(3..=200);
        check(
            &generate(GraphKind::Cycle(n)).unwrap(),
            Some(n / 2),
            &format!("cycle {n}"),
        );
    }
    for seed in 0..50 {
        let n = rng.gen_range(1..=100);
        let g = generate(GraphKind::Chordal { n, seed }).unwrap();
        let expected = (n <= 24).then(|| alpha(&g).unwrap());
        check(&g, expected, &format!("chordal {seed}"));
    }
    "100 trees, 50 cycles, 50 chordal graphs reduce to empty kernels".into()
}

fn criterion_7() -> String {
    let mut cases: Vec<(String, Graph)> = vec![
        ("K2".into(), Graph::from_edges(2, &[(0, 1)]).unwrap()),
        ("C4".into(), generate(GraphKind::Cycle(4)).unwrap()),
    ];
    for n in [6, 8, 20] {
        cases.push((format!("C{n}"), generate(GraphKind::Cycle(n)).unwrap()));
    }
    let kkk: Vec<(usize, usize)> = (0..4).flat_map(|a| (4..8).map(move |b| (a, b))).collect();
    cases.push(("K4,4".into(), Graph::from_edges(8, &kkk).unwrap()));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..30 {
        // Sides 0..k and k..2k with the perfect matching i -- k+i plus noise.
        let k = rng.gen_range(1..=12);
        let mut g = Graph::new(2 * k);
        for a in 0..k {
            g.add_edge(a, k + a);
            for b in 0..k {
                if rng.gen_bool(0.3) {
                    g.add_edge(a, k + b);
                }
            }
        }
        cases.push((format!("bipartite {i}"), g));
    }
    for (name, g) in &cases {
        let r = find_critical_set(g);
        assert!(
            r.independent_set.is_empty(),
            "{name}: I_c = {:?}",
            r.independent_set
        );
        let kr = kernelize(g, Strategy::Critical);
        assert_eq!(&kr.kernel, g, "{name}: kernel changed");
        assert_eq!(kr.offset, 0, "{name}");
    }
    format!(
        "{} perfect-matchable graphs keep their Critical kernel",
        cases.len()
    )
}

fn criterion_8() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut critical, mut maxcritical) = (0usize, 0usize);
    for i in 0..100u64 {
        let n = rng.gen_range(4..=60);
        let p = [0.03, 0.05, 0.1, 0.2][(i % 4) as usize];
        let g = gnp(n, p, 8000 + i);
        let a = kernelize(&g, Strategy::Critical).kernel.num_vertices();
        let b = kernelize(&g, Strategy::MaxCritical).kernel.num_vertices();
        assert!(b <= a, "graph {i}: maxcritical {b} > critical {a}");
        critical += a;
        maxcritical += b;
    }
    format!("100 graphs, total kernel size critical={critical} maxcritical={maxcritical}")
}

fn criterion_9() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..200u64 {
        let n = rng.gen_range(1..=18);
        let g = gnp(n, PS[(i % 4) as usize], 9000 + i);
        let out = solve(&g, &SolverOptions::default());
        assert!(out.exact);
        assert_eq!(out.set.len(), alpha(&g).unwrap(), "graph {i}");
        assert_valid(&g, &out.set, &format!("graph {i}"));
    }
    let out = solve(&petersen(), &SolverOptions::default());
    assert_eq!(out.set.len(), 4);
    "200 graphs match the oracle; Petersen gives 4".into()
}

fn run_cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_miskern"))
        .args(args)
        .output()
        .unwrap()
}

fn criterion_10() -> String {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for (kind, params, seed) in [
        ("gnp", vec!["40", "0.1"], 1),
        ("gnp", vec!["30", "0.2"], 2),
        ("tree", vec!["50"], 3),
        ("chordal", vec!["40"], 4),
        ("cycle", vec!["9"], 0),
    ] {
        let path = dir.path().join(format!("{kind}{seed}.el"));
        let mut args = vec!["gen", kind];
        args.extend(params);
        let seed = seed.to_string();
        args.extend(["--seed", &seed, "--out", path.to_str().unwrap()]);
        assert!(run_cli(&args).status.success());
        files.push(path);
    }
    let csv = dir.path().join("suite.csv");
    let mut args = vec!["bench"];
    args.extend(files.iter().map(|f| f.to_str().unwrap()));
    args.extend([
        "--strategies",
        "all",
        "--timeout",
        "60",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    let out = run_cli(&args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&csv).unwrap();
    let rows = parse_csv(&text).unwrap();
    assert_eq!(rows.len(), files.len() * 4);
    for row in &rows {
        assert!(
            row.kernel_n <= row.n && row.k_max <= row.kernel_n,
            "{row:?}"
        );
        assert!(row.time_kernelize_s >= 0.0 && row.time_solve_s.is_none_or(|t| t >= 0.0));
        assert_eq!(row.status, Status::Exact, "{row:?}");
    }
    for chunk in rows.chunks(4) {
        let alphas: Vec<Option<usize>> = chunk.iter().map(|r| r.alpha).collect();
        assert!(
            alphas.iter().all(|a| *a == alphas[0]),
            "{}: {alphas:?}",
            chunk[0].name
        );
        let g = miskern::io::read_graph(
            &dir.path().join(format!("{}.el", chunk[0].name)),
            None,
            Default::default(),
        )
        .unwrap();
        let r = solve_exact(&g, Strategy::Simple, &SolveOptions::default()).unwrap();
        assert_eq!(alphas[0], Some(r.alpha));
    }

    // Deadline 0 on an instance whose kernel needs branching.
    let hard = dir.path().join("hard.el");
    std::fs::write(&hard, write_edge_list(&gnp(120, 0.08, 10))).unwrap();
    let csv = dir.path().join("timeout.csv");
    let out = run_cli(&[
        "bench",
        hard.to_str().unwrap(),
        "--strategies",
        "critical,maxcritical",
        "--timeout",
        "0",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let rows: Vec<BenchRow> = parse_csv(&text).unwrap();
    assert_eq!(rows.len(), 2);
    for (row, line) in rows.iter().zip(text.lines().skip(1)) {
        assert!(row.kernel_n > 0, "instance too easy: {row:?}");
        assert_eq!(row.status, Status::Timeout, "{row:?}");
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!((cells[9], cells[11]), ("-", "-"), "{line}");
    }
    format!(
        "{} suite rows consistent; forced timeouts render '-'",
        rows.len() + files.len() * 4
    )
}

type Criterion = (&'static str, fn() -> String);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("oracle exactness", criterion_1),
        ("per-rule soundness", criterion_2),
        ("critical-difference optimality", criterion_3),
        ("membership-test agreement", criterion_4),
        ("incremental matching", criterion_5),
        ("Simple completeness on trees, cycles, chordal", criterion_6),
        ("empty critical set on perfect matchings", criterion_7),
        ("MaxCritical dominance", criterion_8),
        ("solver exactness", criterion_9),
        ("harness fidelity", criterion_10),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, check)) in criteria.into_iter().enumerate() {
        let id = format!("criterion {}", k + 1);
        if !filter.is_empty() && !filter.iter().any(|f| id.ends_with(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {id} ({name}): {detail} [{secs:.1}s]"),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL {id} ({name}): {msg} [{secs:.1}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
