use std::path::PathBuf;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclic-jacobi")).args(args).output().expect("binary runs")
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cyclic-jacobi-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn identities_suite_exits_zero() {
    let o = bin(&["verify", "identities", "--trials", "10000", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["trials"], 10000);
}

#[test]
fn slow_sweep_single_eps_exits_zero() {
    assert_eq!(bin(&["verify", "prop52", "--eps", "1e-8"]).status.code(), Some(0));
}

#[test]
fn zero_trials_is_usage_error() {
    let o = bin(&["verify", "thm36", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("trials must be positive"));
}

#[test]
fn unknown_suite_is_usage_error() {
    assert_eq!(bin(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn slow_sweep_in_binary64_is_rejected() {
    assert_eq!(bin(&["verify", "prop52", "--eps", "1e-6", "--precision", "hw"]).status.code(), Some(2));
}

#[test]
fn strategies_enumerate_and_classify() {
    let o = bin(&["strategies", "enumerate"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("6 orderings in 2 shift classes"));
    let file = scratch("o1p.json", "[[1,4],[2,3],[1,2],[3,4],[1,3],[2,4]]");
    let o = bin(&["strategies", "classify", file.to_str().unwrap()]);
    assert!(stdout(&o).trim_end().ends_with("class I1"), "{}", stdout(&o));
}

#[test]
fn strategies_matrix_i1() {
    let o = bin(&["strategies", "matrix", "I1", "--format", "csv"]);
    assert_eq!(stdout(&o), "*,4,0,2\n4,*,3,1\n0,3,*,5\n2,1,5,*\n");
}

#[test]
fn solve_diagonal_needs_no_cycles_and_rejects_duplicate_pairs() {
    let m = scratch("diag.json", r#"{"n":4,"entries":["1","0","0","0","0","2","0","0","0","0","3","0","0","0","0","4"]}"#);
    let o = bin(&["solve", m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cycles"], 0);
    let bad = scratch("dup.json", "[[1,2],[1,2],[1,3],[1,4],[2,3],[2,4]]");
    let o = bin(&["solve", m.to_str().unwrap(), "--strategy", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn trace_csv_and_table_output() {
    let m = scratch("pat.json", r#"{"n":4,"entries":["0.4","0","0.7","0.2","0","-0.3","-0.5","-0.6","0.7","-0.5","0.9","0","0.2","-0.6","0","0.1"]}"#);
    let o = bin(&["trace", m.to_str().unwrap(), "--steps", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.starts_with("k,pivot_i,pivot_j,S,delta,nu_plus,nu_minus,b_quantity,phi,psi\n"));
    assert_eq!(out.lines().count(), 5);
    let o = bin(&["adversarial", "table", "--format", "csv"]);
    assert!(stdout(&o).contains("8,2,4,0.17677669529663688110021108266947024663734760219051e-26"));
}

#[test]
fn out_flag_writes_identical_reports() {
    let dir = std::env::temp_dir().join(format!("cyclic-jacobi-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("a.json"), dir.join("b.json"));
    for (p, jobs) in [(&a, "1"), (&b, "3")] {
        let o = bin(&["verify", "thm36", "--trials", "2000", "--seed", "5", "--jobs", jobs, "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}
