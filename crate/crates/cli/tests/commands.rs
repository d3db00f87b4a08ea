use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_delsarte"))
        .args(args)
        .output()
        .expect("run delsarte")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const Z6: &str = r#"{"orders":[6],"normalization":"probability"}"#;

#[test]
fn constant_matches_tile_value() {
    let out = run(&[
        "constant",
        "--group",
        Z6,
        "--omega-plus",
        "[5,0,1]",
        "--omega-minus",
        "empty",
        "--kind",
        "two-set",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["value"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-9);
    for key in ["artifact_version", "seed", "tolerances", "warnings"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["omega_plus"], serde_json::json!([[0], [1], [5]]));
}

#[test]
fn interval_shorthand_and_coordinates() {
    let a = run(&[
        "constant",
        "--group",
        Z6,
        "--omega-plus",
        "[-1,1]",
        "--kind",
        "delsarte",
    ]);
    let b = run(&[
        "constant",
        "--group",
        Z6,
        "--omega-plus",
        "[[5],[0],[1]]",
        "--kind",
        "delsarte",
    ]);
    let c = run(&[
        "constant",
        "--group",
        Z6,
        "--omega-plus",
        "-1..1",
        "--kind",
        "delsarte",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn asymmetric_sets_warn() {
    let out = run(&[
        "constant",
        "--group",
        Z6,
        "--omega-plus",
        "[0,1]",
        "--kind",
        "turan",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let w = v["warnings"].as_array().unwrap();
    assert!(w
        .iter()
        .any(|s| s.as_str().unwrap().contains("not symmetric")));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "verify", "main", "--fuzz", "20", "--seed", "7", "--max-n", "40",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["cases"].as_array().unwrap().len(), 20);
}

#[test]
fn malformed_json_reports_position() {
    let out = run(&[
        "constant",
        "--group",
        "{\"orders\":\n[6,",
        "--omega-plus",
        "all",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2, column 3"), "{err}");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(1));
    let missing = run(&[
        "constant",
        "--group",
        Z6,
        "--omega-plus",
        "all",
        "--kind",
        "two-set",
    ]);
    assert_eq!(missing.status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn quadrature_failure_exits_three() {
    let out = run(&[
        "radial", "hankel", "-d", "2", "--stop", "0.1", "--tol", "1e-30",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn radial_csv_has_header_and_rows() {
    let out = run(&[
        "radial", "yudin", "-d", "2", "--stop", "1", "--step", "0.5", "--csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, ["t,y", "0,1", lines[2], lines[3]]);
    assert_eq!(lines.len(), 4);
    let out = run(&[
        "radial",
        "gorbachev-H",
        "-d",
        "1",
        "--stop",
        "5",
        "--step",
        "1",
    ]);
    let v = json(&out);
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
}

#[test]
fn trinomial_commands() {
    let v = json(&run(&["trinomial", "optimize"]));
    assert!((v["z"].as_f64().unwrap() - std::f64::consts::PI / 5.0).abs() < 1e-8);
    assert!((v["value"].as_f64().unwrap() - 5f64.sqrt()).abs() < 1e-12);

    let dir = std::env::temp_dir().join(format!("delsarte-phi-{}.csv", std::process::id()));
    let out = run(&["trinomial", "example51", "--phi-csv", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(
        v["comparison"]["packing_witness"]["residues"],
        serde_json::json!([0, 2])
    );
    let table = std::fs::read_to_string(&dir).unwrap();
    std::fs::remove_file(&dir).ok();
    assert_eq!(table.lines().next(), Some("x,phi"));
    assert_eq!(table.lines().count(), 12002);
}

#[test]
fn density_commands() {
    let v = json(&run(&[
        "density",
        "search",
        "--intervals",
        r#"[{"lo":-5,"hi":-3},{"lo":-2,"hi":2},{"lo":3,"hi":5}]"#,
    ]));
    assert_eq!(v["forbidden"], serde_json::json!([1, 4]));
    assert_eq!(v["density"], serde_json::json!([2, 5]));
    let v = json(&run(&[
        "density",
        "auud",
        "--period",
        "4",
        "--residues",
        "[0,2]",
    ]));
    assert_eq!(v["density"], serde_json::json!([1, 2]));
    let v = json(&run(&[
        "density", "auud", "--group", Z6, "--lambda", "[0,3]",
    ]));
    assert_eq!(v["density"], serde_json::json!([2, 1]));
}
