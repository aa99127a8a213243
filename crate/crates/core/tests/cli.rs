use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use miskern::bench::parse_csv;
use miskern::pipeline::Strategy;

fn miskern(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_miskern"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn solve_p3() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write(dir.path(), "p3.el", "0 1\n1 2\n");
    let sol = dir.path().join("sol.txt");
    let out = miskern(&[
        "solve",
        &p3,
        "--strategy",
        "simple",
        "--solution",
        sol.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().any(|l| l == "alpha=2"));
    assert_eq!(fs::read_to_string(sol).unwrap(), "0\n2\n");
}

#[test]
fn solve_other_formats() {
    let dir = tempfile::tempdir().unwrap();
    let metis = write(dir.path(), "c5.graph", "5 5\n2 5\n1 3\n2 4\n3 5\n4 1\n");
    let out = miskern(&["solve", &metis, "--strategy", "advanced"]);
    assert!(stdout(&out).contains("alpha=2"));
    let dimacs = write(
        dir.path(),
        "k3.col",
        "c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n",
    );
    let out = miskern(&["solve", &dimacs, "--strategy", "critical"]);
    assert!(stdout(&out).contains("alpha=1"));
}

#[test]
fn solve_timeout_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let gen = miskern(&["gen", "gnp", "120", "0.08", "--seed", "10"]);
    let g = write(dir.path(), "g.el", &stdout(&gen));
    let out = miskern(&["solve", &g, "--strategy", "simple", "--timeout", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("status=timeout"));
}

#[test]
fn bench_c4() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = write(dir.path(), "c4.el", "0 1\n1 2\n2 3\n3 0\n");
    let csv = dir.path().join("out.csv");
    let out = miskern(&[
        "bench",
        &c4,
        "--strategies",
        "simple,critical",
        "--timeout",
        "60",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = parse_csv(&fs::read_to_string(csv).unwrap()).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[0].strategy, rows[0].kernel_n), (Strategy::Simple, 0));
    assert_eq!(
        (rows[1].strategy, rows[1].kernel_n),
        (Strategy::Critical, 4)
    );
    assert!(rows.iter().all(|r| r.alpha == Some(2)));
}

#[test]
fn verify_reports_violation() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write(dir.path(), "p3.el", "0 1\n1 2\n");
    let bad = write(dir.path(), "bad.txt", "0\n1\n");
    let out = miskern(&["verify", &p3, &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("0 1"));

    let good = write(dir.path(), "good.txt", "0\n2\n");
    assert_eq!(miskern(&["verify", &p3, &good]).status.code(), Some(0));
}

#[test]
fn kernelize_writes_kernel() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = write(dir.path(), "c4.el", "0 1\n1 2\n2 3\n3 0\n");
    let kernel = dir.path().join("kernel.el");
    let out = miskern(&[
        "kernelize",
        &c4,
        "--strategy",
        "critical",
        "--out",
        kernel.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("kernel_n=4"));
    assert_eq!(fs::read_to_string(kernel).unwrap().lines().count(), 4);
}

#[test]
fn gen_is_deterministic() {
    let a = miskern(&["gen", "chordal", "30", "--seed", "7"]);
    let b = miskern(&["gen", "chordal", "30", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.el");
    let out = miskern(&["solve", missing.to_str().unwrap(), "--strategy", "simple"]);
    assert_eq!(out.status.code(), Some(2));

    let looped = write(dir.path(), "loop.el", "0 0\n0 1\n");
    assert_eq!(miskern(&["solve", &looped]).status.code(), Some(2));
    assert_eq!(
        miskern(&["solve", &looped, "--lenient"]).status.code(),
        Some(0)
    );

    let p3 = write(dir.path(), "p3.el", "0 1\n1 2\n");
    assert_eq!(
        miskern(&["solve", &p3, "--strategy", "fast"]).status.code(),
        Some(2)
    );
    assert_eq!(miskern(&["solve", &p3, "--bogus"]).status.code(), Some(2));
    assert_eq!(
        miskern(&["solve", &p3, "--format", "xml"]).status.code(),
        Some(2)
    );
    assert_eq!(miskern(&["gen", "torus", "4"]).status.code(), Some(2));
}
