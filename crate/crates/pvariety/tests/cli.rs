use std::path::PathBuf;
use std::process::{Command, Output};

fn pvariety(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pvariety")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pvariety-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn check_zero_algebra_file_passes() {
    let f = scratch("zero.json", r#"{"dim": 3}"#);
    let o = pvariety(&["check", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all identities hold"));
}

#[test]
fn check_reports_leibniz_failure_with_exit_one() {
    let f = scratch("mixed.json", r#"{"dim": 3, "dot": [[1,1,1,1],[2,2,2,1],[3,3,3,1]], "bracket": [[1,2,3,1]]}"#);
    let o = pvariety(&["check", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("leibniz          fails at (e1, e1, e2)"), "{}", stdout(&o));
}

#[test]
fn malformed_input_exits_two() {
    let f = scratch("malformed.json", "not json");
    assert_eq!(pvariety(&["check", f.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(pvariety(&["check", "P3.99"]).status.code(), Some(2));
    assert_eq!(pvariety(&["verify-degeneration", "/nonexistent/witness.json"]).status.code(), Some(2));
    assert_eq!(pvariety(&["frobnicate"]).status.code(), Some(2));
    let o = pvariety(&["--seed", "x", "check", "P3.1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_degeneration_prints_verified() {
    let o = pvariety(&["verify-degeneration", "witnesses/table2/p33_to_p32.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("VERIFIED"), "{}", stdout(&o));
}

#[test]
fn wrong_witness_exits_one() {
    let f = scratch("wrong.json", r#"{"source": "P3.3", "target": "P3.1", "g": [["t^-1",0,0],[0,1,"t^-1"],[0,0,"-t^-1"]]}"#);
    let o = pvariety(&["verify-degeneration", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reproduce_table1_passes() {
    let o = pvariety(&["reproduce", "table1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("table1: PASS"));
}

#[test]
fn reproduce_json_is_parseable() {
    let o = pvariety(&["--json", "reproduce", "table5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).expect("json output");
    assert!(v.to_string().contains("table5"));
}

#[test]
fn filiform_non_degenerations_use_the_dimension_flag() {
    let o = pvariety(&["--n", "5", "verify-nondegeneration", "P0", "P1.3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[corollary]"));
    let o = pvariety(&["--n", "6", "verify-nondegeneration", "P1.2", "P1.4"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn separating_row_by_name() {
    let o = pvariety(&["--trials", "50", "verify-nondegeneration", "--row", "p39"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("NON-DEGENERATION"));
}

#[test]
fn z2_lists_delta_basis() {
    let o = pvariety(&["z2", "mu11(n=5)"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("Δ_15^4") && s.contains("Δ_15^5"), "{s}");
}

#[test]
fn graph_writes_dot_file() {
    let dir = std::env::temp_dir().join(format!("pvariety-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("filiform.dot");
    let o = pvariety(&["--n", "4", "--out", out.to_str().unwrap(), "graph", "--filiform"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = std::fs::read_to_string(&out).unwrap();
    assert!(dot.starts_with("digraph") && dot.contains("\"P0\" -> \"P1.4\""), "{dot}");
}
