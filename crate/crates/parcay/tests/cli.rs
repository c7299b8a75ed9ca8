use std::path::PathBuf;
use std::process::{Command, Output};

fn parcay(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parcay"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("parcay-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn build_and_iso_petersen() {
    let out = scratch("out.graph");
    let want = scratch("petersen_5_2.graph");
    let o = parcay(&["build", "fixtures/petersen.pp", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("10 vertices, 15 edges, closed"));
    let o = parcay(&["make", "petersen", "5", "2", "--coloured", "-o", want.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = parcay(&["iso", out.to_str().unwrap(), want.to_str().unwrap(), "--colours"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("isomorphic"));

    let other = scratch("p51.graph");
    parcay(&["make", "petersen", "5", "1", "-o", other.to_str().unwrap()]);
    let o = parcay(&["iso", other.to_str().unwrap(), want.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn validate_reports_line() {
    let o = parcay(&["validate", "fixtures/bad.pp"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3, column 1: FixedPointInvolution"), "{err}");
    let o = parcay(&["validate", "fixtures/line_petersen.pp"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(parcay(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(parcay(&["build", "no/such/file.pp"]).status.code(), Some(2));
    assert_eq!(parcay(&["make", "petersen", "4", "0"]).status.code(), Some(2));
    assert_eq!(parcay(&["--help"]).status.code(), Some(0));
}

#[test]
fn build_is_deterministic() {
    let a = parcay(&["build", "fixtures/line_petersen.pp", "--report", "json"]);
    let b = parcay(&["build", "fixtures/line_petersen.pp", "--report", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let a = parcay(&["matchings", "--seed", "7"]);
    let b = parcay(&["matchings", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn infinite_presentation_overflows() {
    let o = parcay(&["build", "fixtures/multi_cycle.pp", "--max-rows", "5000"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("5000 rows"));
    let o = parcay(&["ball", "fixtures/multi_cycle.pp", "--radius", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn decompose_extract_roundtrip() {
    let g = scratch("cube.graph");
    let coloured = scratch("cube_coloured.graph");
    std::fs::write(&g, parcay::graph::write_graph(&parcay::constructions::cube())).unwrap();
    let o = parcay(&["decompose", g.to_str().unwrap(), "-o", coloured.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    for check in ["weak", "pf"] {
        let o = parcay(&["decompose", coloured.to_str().unwrap(), "--check", check]);
        assert_eq!(o.status.code(), Some(0), "{check}");
    }
    let o = parcay(&["extract", coloured.to_str().unwrap(), "--roundtrip"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("roundtrip: isomorphic"));
    let o = parcay(&["extract", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_and_matchings() {
    let o = parcay(&["verify", "two-ended", "--report", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["checks"].as_array().unwrap().len() > 10);
    let o = parcay(&["matchings", "--family", "two-ended", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("B_3 covered: true"));
    let g = scratch("k4.graph");
    std::fs::write(&g, parcay::graph::write_graph(&parcay::constructions::complete(4))).unwrap();
    let o = parcay(&["verify", "cayley", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = parcay(&["make", "two-ended", "-2", "2", "--format", "dot"]);
    assert!(stdout(&o).starts_with("digraph"));
}

#[test]
fn suite_single_criterion() {
    let o = parcay(&["suite", "--only", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
    let o = parcay(&["suite", "--only", "5"]);
    assert_eq!(o.status.code(), Some(1));
}
