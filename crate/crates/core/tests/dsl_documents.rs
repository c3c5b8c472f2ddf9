use algk_core::dsl::{self, elaborate, parse, run_source, DiagnosticKind, ElabOptions};
use algk_core::report::{CheckReport, Status};

const TORUS: &str = include_str!("../examples/torus_pair.geo");
const TORUS_TRIV: &str = include_str!("../examples/torus_pair_trivialization.geo");
const HOPF: &str = include_str!("../examples/hopf_pair.geo");
const TRIVIAL: &str = include_str!("../examples/trivial_dual.geo");

fn run(src: &str, suite: Option<&str>) -> Vec<CheckReport> {
    run_source(src, suite, &ElabOptions::default()).unwrap()
}

#[test]
fn chart_and_form_document() {
    let doc = parse("chart (x,y); form w = dx ^ dy;").unwrap();
    assert_eq!(doc.stmts.len(), 2);
}

#[test]
fn self_wedge_normalizes_to_zero() {
    let env = elaborate(&parse("chart (x,y); form w = dx ^ dx;").unwrap(), &ElabOptions::default()).unwrap();
    assert!(env.form("w").unwrap().is_zero());
}

#[test]
fn undeclared_check_target() {
    let src = "chart (x,y);\ncheck theorem1 on Q;";
    let err = run_source(src, None, &ElabOptions::default()).unwrap_err();
    assert_eq!(err.kind, DiagnosticKind::UndefinedName("Q".into()));
    assert_eq!(err.span.line_col(src), (2, 19));
    assert!(err.render(src).starts_with("2:19: error:"));
}

#[test]
fn syntax_error_lists_expected_tokens() {
    let err = parse("chart (x, y) form").unwrap_err();
    match err.kind {
        DiagnosticKind::SyntaxError { expected } => assert!(expected.iter().any(|e| e.contains(';'))),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn torus_theorem_report_is_in_proof_order() {
    let reports = run(TORUS, Some("theorem1"));
    assert_eq!(reports.len(), 1);
    let labels: Vec<&str> = reports[0].checks.iter().map(|c| c.label.as_str()).collect();
    let stage = |p: &str| labels.iter().position(|l| l.starts_with(p)).unwrap();
    assert!(stage("(0)") < stage("(i)") && stage("(i)") < stage("(ii)") && stage("(ii)") < stage("(iii)"));
    // Every failing entry carries a residual.
    assert!(reports[0].failures().all(|c| c.residual.as_deref().is_some_and(|r| !r.is_empty())));
}

#[test]
fn torus_tduality_and_axioms_pass() {
    assert!(run(TORUS, Some("tduality")).iter().all(CheckReport::passed));
    assert!(run(TORUS, Some("axioms")).iter().all(CheckReport::passed));
}

#[test]
fn trivialization_splitting_passes() {
    assert!(run(TORUS_TRIV, None).iter().all(CheckReport::passed));
}

#[test]
fn hopf_reports_degenerate_pairing() {
    let reports = run(HOPF, None);
    let tduality = reports.iter().find(|r| r.suite.starts_with("tduality")).unwrap();
    assert!(tduality.passed());
    let thm = reports.iter().find(|r| r.suite.starts_with("theorem1")).unwrap();
    assert_eq!(thm.verdict, Status::Fail);
    assert!(thm
        .failures()
        .any(|c| c.residual.as_deref().unwrap().contains("F nondegenerate")));
}

#[test]
fn trivial_dual_passes() {
    assert!(run(TRIVIAL, Some("tduality")).iter().all(CheckReport::passed));
}

#[test]
fn suites_follow_source_order() {
    let reports = run(TORUS, None);
    let suites: Vec<&str> = reports.iter().map(|r| r.suite.split(' ').next().unwrap()).collect();
    assert_eq!(suites, ["axioms", "tduality", "theorem1", "bialgebroid", "courant"]);
}

#[test]
fn unknown_suite_filter_is_a_diagnostic() {
    let err = run_source(TORUS, Some("nope"), &ElabOptions::default()).unwrap_err();
    assert_eq!(err.kind, DiagnosticKind::Semantic);
}

#[test]
fn standard_pair_from_bivector() {
    let src = "chart (x, y);\nopaque f;\npair S = standard(@x ^ @y);\ncheck bialgebroid on S;\ncheck poisson-jacobi on S;\ncheck courant on S;";
    assert!(run(src, None).iter().all(CheckReport::passed));
}

#[test]
fn non_poisson_bivector_fails_without_crashing() {
    let src = "chart (x, y, z);\npair S = standard(@x ^ @y + y * @y ^ @z);\ncheck bialgebroid on S;\ncheck courant on S;";
    let reports = run(src, None);
    assert_eq!(reports.len(), 2);
    assert!(reports.iter().all(|r| r.verdict == Status::Fail));
}

#[test]
fn algebroid_block_with_explicit_pairing() {
    let src = "chart (x, y);
algebroid T = tangent;
algebroid C = cotangent(@x ^ @y);
pair B = bialgebroid(T, C, [[1, 0], [0, 1]]);
check axioms on T;
check bialgebroid on B;";
    assert!(run(src, None).iter().all(CheckReport::passed));
}

#[test]
fn degree_cap_from_options() {
    let src = "chart (x, y, z); form w = dx ^ dy ^ dz;";
    let err = dsl::run_source(src, None, &ElabOptions { max_degree: Some(2) }).unwrap_err();
    assert_eq!(err.kind, DiagnosticKind::DegreeError);
}

#[test]
fn json_verdicts_match_text() {
    for r in run(TORUS, None) {
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let verdict = v["verdict"].as_str().unwrap();
        assert_eq!(verdict == "pass", r.passed());
        assert!(r.to_string().contains(if r.passed() { "PASS" } else { "FAIL" }));
    }
}
