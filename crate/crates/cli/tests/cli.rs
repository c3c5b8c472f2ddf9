use std::path::PathBuf;
use std::process::{Command, Output};

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/examples").join(name)
}

fn algk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algk"))
        .args(args)
        .env_remove("ALGK_MAX_DEGREE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn trivial_dual_passes() {
    let f = example("trivial_dual.geo");
    let out = algk(&["run", f.to_str().unwrap(), "--suite", "tduality"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("all pass"));
}

#[test]
fn hopf_theorem_exits_one_with_degenerate_pairing() {
    let f = example("hopf_pair.geo");
    let out = algk(&["run", f.to_str().unwrap(), "--suite", "theorem1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("DegeneratePairing"));
}

#[test]
fn torus_theorem_exit_code_tracks_verdict() {
    let f = example("torus_pair.geo");
    let out = algk(&["run", f.to_str().unwrap(), "--suite", "theorem1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let all_pass = v.as_array().unwrap().iter().all(|r| r["verdict"] == "pass");
    assert_eq!(out.status.code(), Some(if all_pass { 0 } else { 1 }));
}

#[test]
fn text_and_json_agree() {
    let f = example("torus_pair.geo");
    let text = algk(&["run", f.to_str().unwrap()]);
    let json = algk(&["run", f.to_str().unwrap(), "--format", "json"]);
    assert_eq!(text.status.code(), json.status.code());
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    for r in v.as_array().unwrap() {
        let suite = r["suite"].as_str().unwrap();
        let verdict = if r["verdict"] == "pass" { "PASS" } else { "FAIL" };
        assert!(stdout(&text).contains(&format!("suite {suite}: {verdict}")));
        for c in r["checks"].as_array().unwrap() {
            assert!(c["label"].is_string() && c["anchor"].is_string());
            assert_eq!(c["status"] == "fail", c.get("residual").is_some());
        }
    }
}

#[test]
fn ledger_table() {
    let f = example("trivial_dual.geo");
    let out = algk(&["run", f.to_str().unwrap(), "--ledger"]);
    let s = stdout(&out);
    assert!(s.contains("sign conventions"));
    assert!(s.contains("Atiyah twist"));
}

#[test]
fn diagnostics_exit_two_with_location() {
    let dir = std::env::temp_dir().join(format!("algk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("bad.geo");
    std::fs::write(&f, "chart (x, y);\nform w = dx ^ dq;\n").unwrap();
    let out = algk(&["run", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.geo:2:15: error:"), "{err}");
}

#[test]
fn max_degree_env() {
    let f = example("torus_pair.geo");
    let out = Command::new(env!("CARGO_BIN_EXE_algk"))
        .args(["run", f.to_str().unwrap(), "--suite", "tduality"])
        .env("ALGK_MAX_DEGREE", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds the maximum degree"));
}

#[test]
fn missing_file() {
    let out = algk(&["run", "/nonexistent/file.geo"]);
    assert_eq!(out.status.code(), Some(2));
}
