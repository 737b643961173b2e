use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.display().to_string()
}

fn qlin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn temp_json(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn classical_plane_component_dims() {
    let out = qlin(&["object", &data("classical2.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("dim I=1, dim J=3"));
}

#[test]
fn hom_lists_the_six_relations() {
    let out = qlin(&[
        "hom",
        &data("sudbery_a.json"),
        &data("sudbery_b.json"),
        "--form",
        "both",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for rel in [
        "ab - 1/5 ba = 0",
        "ac - 2 ca = 0",
        "ad + 7/9 cb - 5/9 da = 0",
        "bc - 100/9 cb + 2/9 da = 0",
        "bd - 2 db = 0",
        "cd - 1/5 dc = 0",
    ] {
        assert_eq!(text.matches(rel).count(), 2, "{rel} missing in\n{text}");
    }
    assert!(text.contains("spans equal: yes"));
}

#[test]
fn classical_hom_gives_commutators() {
    let out = qlin(&["hom", &data("classical2.json"), &data("classical2.json")]);
    let text = stdout(&out);
    assert!(text.contains("ab - ba = 0"));
    assert!(text.contains("ad - da = 0"));
    assert_eq!(text.matches(" = 0").count(), 6);
}

#[test]
fn pbw_yes_reports_classical_dims() {
    let out = qlin(&[
        "pbw",
        &data("pattern_c2.json"),
        &data("pattern_c2.json"),
        "--oracle",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("PBW: YES, c=2, dims 10/10, 20/20\n"));
}

#[test]
fn pbw_no_reports_the_deficit() {
    let out = qlin(&[
        "pbw",
        &data("pattern_c2.json"),
        &data("pattern_c3.json"),
        "--oracle",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.starts_with("PBW: NO, dims 10/10, 16/20\n"));
    assert!(text.contains("4 unresolved"));
}

#[test]
fn classical_pair_has_constant_one() {
    let out = qlin(&["pbw", &data("classical2.json"), &data("classical2.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("PBW: YES, c=1\n"));
}

#[test]
fn super_pair_passes_with_oracle() {
    let out = qlin(&[
        "pbw",
        &data("super_c2.json"),
        &data("pattern_c2.json"),
        "--oracle",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("dims 19/19, 44/44"));
}

#[test]
fn yb_holds_for_both_operators() {
    for file in ["sudbery_a.json", "super_c2.json"] {
        let out = qlin(&["yb", &data(file)]);
        assert_eq!(out.status.code(), Some(0), "{file}");
        assert_eq!(stdout(&out).matches("braid relation holds").count(), 2);
    }
}

#[test]
fn bialgebra_axioms_on_a_chain() {
    let out = qlin(&[
        "bialgebra",
        &data("normalized_q2.json"),
        &data("normalized_q3.json"),
        &data("normalized_q7.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "comultiplication: yes\ncoassociativity: yes\ncounit: yes\n"
    );
}

#[test]
fn determinant_and_multiplicativity() {
    let out = qlin(&[
        "det",
        &data("normalized_q2.json"),
        &data("normalized_q3.json"),
        &data("normalized_q7.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("det = ad - 10 cb\n"));
    assert!(text.contains("multiplicative: yes"));

    let out = qlin(&[
        "det",
        &data("sudbery_a.json"),
        &data("sudbery_b.json"),
        "--json",
    ]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["det"], "ad - 2 cb");
    assert_eq!(report["forms_agree"], true);
}

#[test]
fn json_output_is_deterministic() {
    let args = [
        "pbw",
        &data("super_c2.json"),
        &data("pattern_c3.json"),
        "--oracle",
        "--json",
    ];
    let first = qlin(&args);
    let second = qlin(&args);
    assert_eq!(first.stdout, second.stdout);
    let report: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(report["criterion_holds"], false);
    assert_eq!(report["constant_source"], "2");
    assert_eq!(report["constant_target"], "3");
}

#[test]
fn complementarity_violation_is_diagnosed() {
    let f = temp_json(
        r#"{"version":1,"name":"x","dim":2,"parities":[0,0],"kind":"sudbery",
            "params":{"q":[["1","2"],["1/2","1"]],"p":[["1","-2"],["-1/2","1"]]}}"#,
    );
    let out = qlin(&["object", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("params.p[0][1]"), "{err}");
    assert!(err.contains("complementarity"), "{err}");
}

#[test]
fn reciprocity_and_diagonal_violations_are_diagnosed() {
    let f = temp_json(
        r#"{"version":1,"name":"x","dim":2,"parities":[0,0],"kind":"sudbery",
            "params":{"q":[["1","2"],["1/3","1"]],"p":[["1","1"],["1","1"]]}}"#,
    );
    let err = stderr(&qlin(&["object", f.path().to_str().unwrap()]));
    assert!(
        err.contains("params.q[1][0]") && err.contains("reciprocity"),
        "{err}"
    );

    let f = temp_json(
        r#"{"version":1,"name":"x","dim":2,"parities":[0,1],"kind":"sudbery",
            "params":{"q":[["1","2"],["1/2","1"]],"p":[["1","1"],["1","-1"]]}}"#,
    );
    let err = stderr(&qlin(&["object", f.path().to_str().unwrap()]));
    assert!(
        err.contains("params.q[1][1]") && err.contains("diagonal"),
        "{err}"
    );
}

#[test]
fn zero_lambda_is_rejected() {
    let f = temp_json(
        r#"{"version":1,"name":"x","dim":2,"parities":[0,0],"kind":"normalized",
            "params":{"q":[["1","2"],["1/2","1"]],"epsilon":1,"lambda":"0"}}"#,
    );
    let out = qlin(&["object", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("params.lambda"));
}

#[test]
fn malformed_fields_carry_paths() {
    let f = temp_json(
        r#"{"version":1,"name":"x","dim":2,"parities":[0,0],"kind":"sudbery","params":{"q":[["1",3]]}}"#,
    );
    let err = stderr(&qlin(&["object", f.path().to_str().unwrap()]));
    assert!(err.contains("params.q[0][1]"), "{err}");

    let f = temp_json(r#"{"version":2,"name":"x","dim":1,"parities":[0],"kind":"classical"}"#);
    let err = stderr(&qlin(&["object", f.path().to_str().unwrap()]));
    assert!(err.contains("version"), "{err}");
}

#[test]
fn component_count_mismatch_is_an_input_error() {
    let v = |i: usize| {
        let mut c = ["\"0\""; 4];
        c[i] = "\"1\"";
        format!("[{}]", c.join(","))
    };
    let text = format!(
        r#"{{"version":1,"name":"three","dim":2,"parities":[0,0],"kind":"general",
            "params":{{"components":[[{}],[{}],[{},{}]]}}}}"#,
        v(0),
        v(3),
        v(1),
        v(2)
    );
    let f = temp_json(&text);
    let out = qlin(&["object", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("component dims 1, 1, 2"));
    let out = qlin(&["hom", f.path().to_str().unwrap(), &data("classical2.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("component count mismatch"));
}

#[test]
fn missing_arguments_are_usage_errors() {
    assert_eq!(qlin(&["pbw"]).status.code(), Some(2));
    let out = qlin(&[
        "pbw",
        &data("classical2.json"),
        &data("classical2.json"),
        "--degree",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
