use gliaison::scenario::*;
use gliaison::{Error, Polynomial};

fn parse_err(text: &str) -> (usize, usize, String) {
    match parse_input(text) {
        Err(Error::Parse { line, column, message }) => (line, column, message),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn minimal_document() {
    let doc = parse_input("ring 32003 x0 x1 x2 x3\nideal C\nx0*x2 - x1^2\n").unwrap();
    assert_eq!(doc.ideals.len(), 1);
    assert_eq!(doc.ideals[0].name, "C");
    assert_eq!(doc.ring.nvars(), 4);
    assert!(doc.modulus.is_none());
}

#[test]
fn modulus_sets_hypersurface() {
    let doc = parse_input("ring 32003 x0 x1 x2 x3 x4\nmodulus x0*x3 - x1*x2\n").unwrap();
    let f = doc.modulus.clone().unwrap();
    assert_eq!(f, Polynomial::parse(&doc.ring, "x0*x3 - x1*x2").unwrap());
    assert!(doc.descriptor().is_hypersurface());
}

#[test]
fn inhomogeneous_generator_is_rejected_at_its_line() {
    let (line, _, msg) = parse_err("ring 32003 x0 x1 x2 x3\nideal C\nx0*x2 - x1\n");
    assert_eq!(line, 3);
    assert!(msg.contains("inhomogeneous"), "{msg}");
}

#[test]
fn errors_carry_columns() {
    let (line, column, _) = parse_err("ring 32003 x0 x1\nideal C\n  x0 + y\n");
    assert_eq!((line, column), (3, 8));
    let (line, column, _) = parse_err("ring 32003 x0 x1\nmatrix m 1 2\nx0, x1 +* x0\n");
    assert_eq!(line, 3);
    assert!(column >= 5, "{column}");
    let (line, _, _) = parse_err("# nothing\n\nideal C\n");
    assert_eq!(line, 3);
    let (line, _, _) = parse_err("");
    assert_eq!(line, 1);
}

#[test]
fn comments_blocks_and_matrices() {
    let text = "\
# the Koszul matrix of a quadric
ring 32003 x0 x1 x2 x3 x4   # five variables
modulus x0*x1 + x2*x3

matrix phi 2 2
x2, x0
# a comment between rows
x1, -x3
matrix psi 2 2
x3, x0
x1, -x2
module A twists(-1,-1)
x3, x1
-x2, -x0
ideal Y
x0
x2
";
    let doc = parse_input(text).unwrap();
    let phi = doc.matrix("phi").unwrap();
    assert_eq!((phi.nrows(), phi.ncols()), (2, 2));
    assert!(phi.is_degree_compatible());
    assert_eq!(phi.source().degrees(), &[1, 1]);
    let a = doc.module("A").unwrap();
    assert_eq!(a.generators().degrees(), &[1, 1]);
    // the modulus columns are adjoined
    assert_eq!(a.relations().rank(), 4);
    assert_eq!(doc.ideal("Y").unwrap().generators().len(), 2);
}

#[test]
fn incompatible_matrix_degrees_are_located() {
    let (line, column, msg) = parse_err("ring 32003 x0 x1\nmatrix m 2 2\nx0, x1\nx1, x0^2\n");
    assert_eq!((line, column), (4, 5));
    assert!(msg.contains("degree"), "{msg}");
    let (line, _, msg) = parse_err("ring 32003 x0 x1\nmatrix m 2 2\nx0, x1\n");
    assert_eq!(line, 2);
    assert!(msg.contains("rows"), "{msg}");
    let (line, _, _) = parse_err("ring 32003 x0 x1\nmatrix m 1 2\nx0\n");
    assert_eq!(line, 3);
}

#[test]
fn module_headers() {
    let (line, _, msg) = parse_err("ring 32003 x0 x1\nmodule A twists(a)\n");
    assert_eq!(line, 2);
    assert!(msg.contains("integer"), "{msg}");
    let (line, _, _) = parse_err("ring 32003 x0 x1\nmodule A (0)\n");
    assert_eq!(line, 2);
    let doc = parse_input("ring 32003 x0 x1\nmodule k twists(0)\nx0, x1\n").unwrap();
    let k = doc.module("k").unwrap();
    assert_eq!(k.relations().degrees(), &[1, 1]);
    assert_eq!(k.hilbert_function(0), 1);
    assert_eq!(k.hilbert_function(1), 0);
}

#[test]
fn unknown_scenario_is_a_usage_error() {
    let e = run_scenario("no-such-scenario", &ScenarioOptions::default()).unwrap_err();
    assert!(matches!(e, Error::Usage(_)));
}

#[test]
fn report_schema_and_determinism() {
    let opts = ScenarioOptions::default();
    let r = run_scenario("knoerrer-tower", &opts).unwrap();
    assert!(r.passed());
    assert_eq!(r.verdict, Verdict::Pass);
    assert!(r.steps.iter().all(|s| s.passed()));
    let a = emit_report(&r, ReportFormat::Json);
    let b = emit_report(&run_scenario("knoerrer-tower", &opts).unwrap(), ReportFormat::Json);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["scenario"], "knoerrer-tower");
    assert_eq!(v["verdict"], "pass");
    assert!(v["steps"].as_array().unwrap().len() >= 5);
    for key in ["betti", "hilbert", "certificates"] {
        assert!(v["tables"].get(key).is_some(), "{key}");
    }
    assert_eq!(v["tables"]["certificates"]["mf(4x4,xy)"]["determinant_power"], 2);
    let text = String::from_utf8(emit_report(&r, ReportFormat::Text)).unwrap();
    assert!(text.ends_with("verdict: pass\n"));
}

#[test]
fn parallel_runs_match_sequential() {
    let names: Vec<String> = ["knoerrer-tower", "cone-planes", "twisted-cubic-link"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let opts = ScenarioOptions::default();
    let seq: Vec<Vec<u8>> = run_scenarios(&names, &opts, false)
        .into_iter()
        .map(|r| emit_report(&r.unwrap(), ReportFormat::Json))
        .collect();
    let par: Vec<Vec<u8>> = run_scenarios(&names, &opts, true)
        .into_iter()
        .map(|r| emit_report(&r.unwrap(), ReportFormat::Json))
        .collect();
    assert_eq!(seq, par);
}

#[test]
fn failing_determinant_check_is_located() {
    let text = "\
ring 32003 x0 x1 x2 x3 x4
modulus x0*x1 + x2*x3
matrix phi 2 2
x2, x0
x1, -x3
matrix psi 2 2
x3, x0
x1, x2
";
    let opts = ScenarioOptions {
        input: Some(parse_input(text).unwrap()),
        ..ScenarioOptions::default()
    };
    let r = run_scenario("knoerrer-tower", &opts).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
    let step = &r.steps[0];
    assert!(!step.passed());
    let failed: Vec<&Check> = step.checks.iter().filter(|c| !c.passed).collect();
    assert!(failed.iter().any(|c| c.detail.contains("φψ[")), "{failed:?}");
    // the built-in tower still passes
    assert!(r.steps[1..].iter().all(|s| s.passed()));
}

#[test]
fn user_curve_replaces_built_in_data() {
    let text = "\
ring 32003 x0 x1 x2 x3
ideal C
x0*x2 - x1^2
x1*x3 - x2^2
x0*x3 - x1*x2
";
    let opts = ScenarioOptions {
        input: Some(parse_input(text).unwrap()),
        ..ScenarioOptions::default()
    };
    // the twisted cubic fed to the skew-lines pipeline: links still certify,
    // frozen skew-line values are not asserted
    let r = run_scenario("skew-lines", &opts).unwrap();
    assert!(r.passed(), "{}", String::from_utf8_lossy(&emit_report(&r, ReportFormat::Text)));
    assert!(!r.steps[0].checks.iter().any(|c| c.name.contains("quartic")));
}
