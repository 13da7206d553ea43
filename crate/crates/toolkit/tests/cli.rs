use std::path::{Path, PathBuf};

use tempfile::TempDir;
use twoflow_toolkit::{load_instance, load_result, run_cli};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("twoflow").chain(args.iter().copied());
    let code = run_cli(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn solve_reports_optimum() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "i.json", r#"{"m":2,"jobs":[[2,1],[1,2],[2,2]]}"#);
    for algo in ["dp1", "dp2", "auto"] {
        let (code, out, _) = run(&["solve", "--in", f.to_str().unwrap(), "--algo", algo]);
        assert_eq!(code, 0);
        let doc = load_result(&out).unwrap();
        assert_eq!(doc.makespan, 4);
        assert!(doc.optimal);
        assert_eq!(doc.ratio_bound, None);
        assert_eq!(doc.assignment.unwrap().len(), 3);
        assert_ne!(doc.algo, "auto");
    }
}

#[test]
fn value_only_and_canonical_flags() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "i.json", r#"{"m":3,"jobs":[[2,1],[1,2],[2,2],[3,0],[0,3]]}"#);
    let path = f.to_str().unwrap();
    let (code, out, _) = run(&["solve", "--in", path, "--algo", "dp1", "--value-only"]);
    assert_eq!(code, 0);
    let lean = load_result(&out).unwrap();
    assert!(lean.assignment.is_none() && lean.shops.is_none());
    let (_, out, _) = run(&["solve", "--in", path, "--algo", "dp1", "--canonical", "--threads", "3"]);
    assert_eq!(load_result(&out).unwrap().makespan, lean.makespan);
}

#[test]
fn approx_reports_ratio_bound() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "i.json", r#"{"m":2,"jobs":[[30,10],[10,30],[20,20],[40,20]]}"#);
    let (code, out, _) = run(&["approx", "--eps", "1/4", "--in", f.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let doc = load_result(&out).unwrap();
    assert_eq!(doc.ratio_bound.as_deref(), Some("5/4"));
    assert_eq!(doc.algo, "approx");
    let (_, out, _) = run(&["oracle", "--in", f.to_str().unwrap()]);
    let opt = load_result(&out).unwrap().makespan;
    assert!(4 * doc.makespan <= 5 * opt && doc.makespan >= opt);
}

#[test]
fn oracle_over_budget_exits_2() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "big.json", r#"{"m":3,"jobs":[[1,1],[1,1],[1,1],[1,1],[1,1]]}"#);
    let (code, out, err) = run(&["oracle", "--in", f.to_str().unwrap(), "--budget", "10"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("41") && err.contains("budget"), "{err}");
}

#[test]
fn usage_errors_exit_1() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"m":0,"jobs":[]}"#);
    let (code, _, err) = run(&["solve", "--in", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("m must be"), "{err}");
    assert_eq!(run(&["solve"]).0, 1);
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["approx", "--in", "x.json", "--eps", "0/1"]).0, 1);
    assert_eq!(run(&["solve", "--in", "/nonexistent/x.json"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn gen_writes_reproducible_instances() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let (code, _, err) = run(&[
            "gen", "--n", "9", "--m", "2", "--rmax", "4", "--tmax", "40", "--zero-r", "1/3",
            "--seed", "42", "--out", p.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{err}");
    }
    let ta = std::fs::read_to_string(&a).unwrap();
    assert_eq!(ta, std::fs::read_to_string(&b).unwrap());
    let inst = load_instance(&ta).unwrap();
    assert_eq!((inst.n(), inst.m()), (9, 2));
    assert!(inst.jobs()[..3].iter().all(|j| j.r == 0));
}

#[test]
fn bench_writes_report() {
    let dir = TempDir::new().unwrap();
    let grid = write(
        dir.path(),
        "grid.json",
        r#"{"cells":[{"name":"sym","n":5,"m":2,"r_max":4,"t_max":4,"seeds":[1,2]},
                    {"name":"asym","n":6,"m":2,"r_max":1,"t_max":100,"zero_r":"1/2","seeds":[9]}]}"#,
    );
    let out = dir.path().join("report.tsv");
    let (code, _, err) = run(&["bench", "--grid", grid.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let report = std::fs::read_to_string(out).unwrap();
    assert_eq!(report.lines().count(), 4);
    assert!(report.starts_with("cell\tseed"));
}
