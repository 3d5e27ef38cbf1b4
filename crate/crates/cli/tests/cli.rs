use std::path::PathBuf;
use std::process::{Command, Output};

fn gliaison(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gliaison"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gliaison-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(name: &str, text: &str) -> PathBuf {
    let path = scratch("inputs").join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn list_names_every_scenario() {
    let out = gliaison(&["list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["skew-lines", "quadric-quintic", "knoerrer-tower", "cubic-surface-points"] {
        assert!(text.contains(name), "{name}");
    }
}

#[test]
fn passing_scenario_exits_zero() {
    let out = gliaison(&["run", "cone-planes"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: pass"));
    assert!(text.contains("Betti table E"));
}

#[test]
fn json_reports_parse() {
    let out = gliaison(&["--json", "run", "skew-lines"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["schema"], 1);
    assert_eq!(v["tables"]["hilbert"]["rao(C)"]["0"], 1);
    let out = gliaison(&["--json", "run", "skew-lines", "spinor"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn same_seed_same_bytes_in_either_mode() {
    let a = gliaison(&["--json", "--seed", "9", "run", "lesperance", "knoerrer-tower"]);
    let b = gliaison(&["--json", "--seed", "9", "--parallel", "run", "lesperance", "knoerrer-tower"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn unknown_scenario_exits_two() {
    let out = gliaison(&["run", "no-such-thing"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown scenario"));
}

#[test]
fn bad_flags_exit_two() {
    assert_eq!(gliaison(&["run", "skew-lines", "--seed", "x"]).status.code(), Some(2));
    assert_eq!(gliaison(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn parse_errors_exit_two() {
    let path = write("inhomogeneous.txt", "ring 32003 x0 x1 x2 x3\nideal C\nx0*x2 - x1\n");
    let out = gliaison(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let out = gliaison(&["run", "skew-lines", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = gliaison(&["check", "/nonexistent/input.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_summarizes_a_document() {
    let path = write("good.txt", "ring 32003 x0 x1 x2 x3 x4\nmodulus x0*x3 - x1*x2\nideal D\nx0\nx1\n");
    let out = gliaison(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("modulus -x1*x2 + x0*x3"));
    assert!(text.contains("ideal D with 2 generators"));
}

#[test]
fn failed_check_exits_one_and_names_the_entry() {
    let path = write(
        "bad_mf.txt",
        "ring 32003 x0 x1 x2 x3 x4\nmodulus x0*x1 + x2*x3\nmatrix phi 2 2\nx2, x0\nx1, -x3\nmatrix psi 2 2\nx3, x0\nx1, x2\n",
    );
    let out = gliaison(&["--json", "run", "knoerrer-tower", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "fail");
    let checks = v["steps"][0]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["passed"] == false && c["detail"].as_str().unwrap_or("").contains("[")));
}

#[test]
fn link_failure_exits_one() {
    // Y does not contain C
    let path = write(
        "bad_link.txt",
        "ring 32003 x0 x1 x2 x3\nideal C\nx0\nx2\nideal Y\nx0*x1\nx1*x3\n",
    );
    let out = gliaison(&["run", "skew-lines", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn report_directory_receives_files() {
    let dir = scratch("reports");
    let out = gliaison(&["--json", "--report-dir", dir.to_str().unwrap(), "run", "knoerrer-tower"]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read(dir.join("knoerrer-tower.json")).unwrap();
    assert_eq!(written, out.stdout);
}
