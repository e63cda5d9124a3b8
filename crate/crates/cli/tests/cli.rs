use std::path::Path;
use std::process::Command as Process;

use nahyp_cli::{parse_problem, render, run, CliError, Command};
use serde_json::{json, Value};

fn problem(dim: usize, divisors: &[(&str, &str)], command: &str, options: Value) -> String {
    let divisors: Vec<Value> = divisors
        .iter()
        .map(|(n, p)| json!({"name": n, "poly": p}))
        .collect();
    json!({"ambient": {"dim": dim}, "field": "Q", "divisors": divisors, "command": command, "options": options}).to_string()
}

fn report(text: &str) -> Value {
    run(&parse_problem(text).unwrap(), None).unwrap()
}

fn binary(args: &[&str]) -> (i32, String, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_nahyp"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn loads_a_minimal_decide_file() {
    let text = problem(
        2,
        &[("C1", "X0^2 + X1^2 - X2^2"), ("C2", "X0*X1 - X2^2")],
        "decide",
        json!({}),
    );
    let p = parse_problem(&text).unwrap();
    assert_eq!(p.dim, 2);
    assert_eq!(p.command, Some(Command::Decide));
    let names: Vec<&str> = p
        .system
        .as_ref()
        .unwrap()
        .divisors()
        .iter()
        .map(|d| d.name.as_str())
        .collect();
    assert_eq!(names, ["C1", "C2"]);
}

#[test]
fn rejects_variables_beyond_the_dimension() {
    let text = problem(2, &[("D1", "X0 + X3")], "decide", json!({}));
    match parse_problem(&text) {
        Err(CliError::Schema(msg)) => {
            assert!(msg.contains("X3") && msg.contains("dimension 2"), "{msg}")
        }
        other => panic!("expected a dimension error, got {other:?}"),
    }
}

#[test]
fn parse_errors_carry_line_and_column() {
    let text = "{\n  \"ambient\": {\"dim\": 2},\n  \"divisors\": [{\"name\": \"D1\", \"poly\": \"X0 + * X1\"}]\n}";
    match parse_problem(text) {
        Err(
            e @ CliError::Parse {
                at: Some((3, _)), ..
            },
        ) => assert!(e.to_string().contains("line 3")),
        other => panic!("expected an anchored parse error, got {other:?}"),
    }
    match parse_problem("{\"ambient\": {\"dim\": 2},\n \"divisors\": 7}") {
        Err(CliError::Json { line: 2, .. }) => {}
        other => panic!("expected a schema error on line 2, got {other:?}"),
    }
}

#[test]
fn reads_witness_blocks() {
    let text = problem(
        2,
        &[("D1", "X0"), ("D2", "X1")],
        "verify",
        json!({"witness": ["1", "1", "z"]}),
    );
    let p = parse_problem(&text).unwrap();
    assert_eq!(
        p.options.witness.as_ref().unwrap().to_strings(),
        ["1", "1", "z"]
    );
    let r = report(&text);
    assert_eq!(r["passed"], json!(true));
    assert_eq!(r["compositions"], json!(["1", "1"]));
}

#[test]
fn decide_two_lines() {
    let r = report(&problem(
        2,
        &[("D1", "X0"), ("D2", "X1")],
        "decide",
        json!({}),
    ));
    assert_eq!(r["status"], "NOT_HYPERBOLIC");
    assert_eq!(r["witness"]["map"], "(1, 1, z)");
}

#[test]
fn inflexion_of_the_cuspidal_family() {
    let r = report(&problem(
        2,
        &[("D", "X0^3 - X1*X2^2")],
        "inflexion",
        json!({"point": ["0", "0", "1"]}),
    ));
    assert_eq!(r["maximal_inflexion"], json!(true));
}

#[test]
fn newton_of_a_root_product() {
    let r = report(&problem(
        1,
        &[],
        "newton",
        json!({"coefficients": ["t^3", "-t - t^2", "1"]}),
    ));
    assert_eq!(r["slopes"], json!(["-2", "-1"]));
    assert_eq!(r["vertices"], json!([[0, "3"], [1, "1"], [2, "0"]]));
}

#[test]
fn newton_reports_uncertified_counts_as_errors() {
    let text = problem(
        1,
        &[],
        "newton",
        json!({"coefficients": ["t^3 + O(t^4)", "O(t)", "1"], "threshold": "1"}),
    );
    let err = run(&parse_problem(&text).unwrap(), None).unwrap_err();
    assert_eq!(err.module(), "series");
}

#[test]
fn degeneracy_with_constants() {
    let r = report(&problem(
        2,
        &[("D1", "X1"), ("D2", "X2")],
        "degeneracy",
        json!({"ratios": ["1"]}),
    ));
    assert_eq!(r["status"], "DEGENERACY_BOUND");
    assert_eq!(r["codim_bound"], json!(1));
    assert_eq!(r["degeneracy"]["codimension"], json!(1));
}

#[test]
fn general_position_names_the_failing_subset() {
    let r = report(&problem(
        2,
        &[("A", "X0"), ("B", "X1"), ("C", "X0 + X1")],
        "check-general-position",
        json!({}),
    ));
    assert_eq!(r["general_position"], json!(false));
    assert_eq!(r["failing_subset"], json!(["A", "B", "C"]));
}

#[test]
fn extension_scalars_serialize_with_their_field() {
    let r = report(&problem(
        2,
        &[("F", "X0^3 + X1^3 + X2^3")],
        "find-inflexions",
        json!({}),
    ));
    assert_eq!(r["count"], json!(9));
    let ext: Vec<&Value> = r["points"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|p| p["point"].is_object())
        .collect();
    assert_eq!(ext.len(), 3);
    assert!(ext
        .iter()
        .all(|p| p["point"]["minpoly"].is_string() && p["class_size"] == json!(2)));
}

/// Every emitted witness passes `verify` when fed back in.
#[test]
fn emitted_witnesses_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let fixtures: Vec<(usize, Vec<(&str, &str)>)> = vec![
        (2, vec![("D1", "X0"), ("D2", "X1")]),
        (2, vec![("D1", "X0"), ("D2", "X0^2 + X1^2 - X2^2")]),
        (2, vec![("D1", "X0"), ("D2", "X0*X2 - X1^2")]),
        (
            2,
            vec![("D1", "X0*X2 - X1^2"), ("D2", "X0*X2 - X1^2 + X0^2")],
        ),
        (
            2,
            vec![("D1", "X0 + X1 + X2"), ("D2", "X0^3 + X1^3 + X2^3")],
        ),
        (
            3,
            vec![
                ("H", "X0"),
                ("Q1", "X0^2 + X1^2 + X2^2 - 2*X3^2"),
                ("Q2", "X0^2 + X1^2 + 2*X2^2 - 3*X3^2"),
            ],
        ),
    ];
    for (i, (dim, divs)) in fixtures.iter().enumerate() {
        let path = write(
            dir.path(),
            &format!("w{i}.json"),
            &problem(*dim, divs, "witness", json!({})),
        );
        let (code, out, err) = binary(&["run", &path]);
        assert_eq!(code, 0, "{err}");
        let emitted: Value = serde_json::from_str(&out).unwrap();
        let w = &emitted["witness"];
        let mut text: Value = serde_json::from_str(&problem(
            *dim,
            divs,
            "verify",
            json!({"witness": w["components"]}),
        ))
        .unwrap();
        if let Some(m) = w.get("field") {
            text["field"] = json!({"minpoly": m});
        }
        let path = write(dir.path(), &format!("v{i}.json"), &text.to_string());
        let (code, out, err) = binary(&["run", &path]);
        assert_eq!(code, 0, "{err}");
        let verified: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(verified["passed"], json!(true), "{out}");
    }
}

#[test]
fn output_is_byte_identical_and_out_flag_writes_it() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "p.json",
        &problem(
            2,
            &[("L", "X0 - 3*X2"), ("Q", "X0^4 + X1^4 + X2^4")],
            "decide",
            json!({}),
        ),
    );
    let (_, first, _) = binary(&["run", &path]);
    let (_, second, _) = binary(&["decide", &path]);
    assert_eq!(first, second);
    let out = dir.path().join("out.json");
    let (code, stdout, _) = binary(&["run", &path, "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    assert_eq!(std::fs::read_to_string(out).unwrap(), first);
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(render(&v), first);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = write(
        dir.path(),
        "u.json",
        &problem(
            2,
            &[("C", "X0*X2 - X1^2"), ("K", "X0*X2^2 - X1^3 + X0^3")],
            "decide",
            json!({}),
        ),
    );
    let (code, out, _) = binary(&["run", &unknown]);
    assert_eq!(code, 0);
    assert!(out.contains("\"UNKNOWN\""));
    let bad = write(
        dir.path(),
        "b.json",
        &problem(
            2,
            &[("L", "X0"), ("C", "X0^3 - X1*X2^2")],
            "check-transversal",
            json!({}),
        ),
    );
    let (code, _, err) = binary(&["run", &bad]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error[position]"), "{err}");
    let (code, _, err) = binary(&["run", "/nonexistent/problem.json"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error[cli]"));
}

#[test]
fn flags_override_file_options() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "n.json",
        &problem(
            1,
            &[],
            "newton",
            json!({"series": [[0, "t^3"], [1, "-t - t^2"], [2, "1"], [9, "t"]]}),
        ),
    );
    let (_, out, _) = binary(&["run", &path, "--precision", "3"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["precision"], json!(3));
    let (_, out, _) = binary(&["run", &path]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["precision"], json!(10));
}
