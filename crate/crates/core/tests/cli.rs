use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fanobound"))
        .args(args)
        .output()
        .unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn result(out: &Output) -> Value {
    report(out)["jobs"][0]["result"].clone()
}

#[test]
fn chern_example() {
    let out = run(&["chern", "--weights", "1,1,1,1,1", "--degree", "3", "--twist", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = result(&out);
    assert_eq!(r["topCoefficient"], "10");
    assert_eq!(r["topNumber"], "30");
    let job = &report(&out)["jobs"][0];
    assert_eq!(job["provenance"]["rule"], "twisted-cotangent-chern-class");
    assert!(job["provenance"]["engine"].as_str().unwrap().starts_with("fanobound "));
}

#[test]
fn bound_example() {
    let out = run(&["bound", "--x", "cubic3fold", "--y", "cubic3fold", "--u", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = result(&out);
    assert_eq!(r["mMax"], 1);
    assert_eq!(r["N"], "1");
}

#[test]
fn quadric_example() {
    let out = run(&["quadric", "--ambient-dim", "5", "--paper-k", "3", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = result(&out);
    assert_eq!(r["admits"], true);
    assert_eq!(r["witness"]["form"], "x0*x1 - x2*x3");
    assert_eq!(r["witness"]["quotient"], "x0*x1 + x2*x3");
}

#[test]
fn hypothesis_errors_exit_two() {
    // a_2 = 2 breaks the standard shape.
    let out = run(&["positivity", "--weights", "3,2,2,1,1", "--degree", "12"]);
    assert_eq!(out.status.code(), Some(2));
    let job = &report(&out)["jobs"][0];
    assert_eq!(job["outcome"], "hypothesis-error");
    assert_eq!(job["error"]["rule"], "wps-hypersurface-shape");
    assert!(String::from_utf8_lossy(&out.stderr).contains("wps-hypersurface-shape"));
    // Degree below a_0 + a_1 + 1.
    let out = run(&["positivity", "--weights", "3,2,1,1,1", "--degree", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["chern", "--weights", "1,1,x"]).status.code(), Some(1));
    assert_eq!(run(&["chern", "--degree", "3", "--twist", "1"]).status.code(), Some(1));
    assert_eq!(run(&["positivity", "--alias", "no-such-thing"]).status.code(), Some(1));
    assert_eq!(run(&["batch"]).status.code(), Some(1));
    assert_eq!(run(&["check-identities", "--max-dim", "99"]).status.code(), Some(1));
}

#[test]
fn unknown_kind_names_index() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("in.json");
    std::fs::write(
        &p,
        r#"{"version":"1","jobs":[{"kind":"chern","alias":"cubic3fold","twist":1},{"kind":"wat"}]}"#,
    )
    .unwrap();
    let out = run(&["batch", "--input", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("jobs[1]"));
    assert!(out.stdout.is_empty());
}

#[test]
fn subcommand_rejects_foreign_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("in.json");
    std::fs::write(
        &p,
        r#"{"version":"1","jobs":[{"kind":"positivity","alias":"cubic3fold"}]}"#,
    )
    .unwrap();
    assert_eq!(run(&["chern", "--input", p.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(
        run(&["positivity", "--input", p.to_str().unwrap()]).status.code(),
        Some(0)
    );
}

#[test]
fn rationals_are_strings() {
    let out = run(&["chern", "--weights", "2,1,1,1,1", "--degree", "3", "--twist", "1"]);
    let r = result(&out);
    assert_eq!(r["hPower"], "3/2");
    assert!(r["series"].as_array().unwrap().iter().all(Value::is_string));
    fn no_floats(v: &Value) -> bool {
        match v {
            Value::Number(n) => !n.is_f64(),
            Value::Array(a) => a.iter().all(no_floats),
            Value::Object(m) => m.values().all(no_floats),
            _ => true,
        }
    }
    assert!(no_floats(&report(&out)));
}

#[test]
fn batch_mixed_outcomes_exit_with_worst() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("in.json");
    std::fs::write(
        &p,
        r#"{"version":"1","jobs":[
            {"kind":"chern","alias":"cubic3fold","twist":"2"},
            {"kind":"bound","x":{"dimension":2,"hPower":"2","chernNumbers":[-6,4]},"y":"quadric-surface","u":1}
        ]}"#,
    )
    .unwrap();
    let out = run(&["batch", "--input", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let rep = report(&out);
    assert_eq!(rep["jobs"][0]["outcome"], "ok");
    assert_eq!(rep["jobs"][1]["outcome"], "hypothesis-error");
    assert_eq!(rep["jobs"][1]["error"]["rule"], "degree-bound-lhs-positive");
}

#[test]
fn output_file_and_text_format() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("out.txt");
    let out = run(&[
        "--format",
        "text",
        "--output",
        p.to_str().unwrap(),
        "quadric",
        "--matrix",
        "1,0,0;0,1,0;0,0,-1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&p).unwrap();
    assert!(text.contains("jobs[0].result.paperK = 2\n"));
    assert!(text.contains("jobs[0].result.admits = true\n"));
    let leftovers: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(leftovers.len(), 1);
}

#[test]
fn echoed_inputs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.json");
    let out = run(&[
        "classify",
        "--subject",
        "mukai",
        "--n",
        "4",
        "--g",
        "7",
        "--output",
        first.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let second = dir.path().join("b.json");
    let out = run(&[
        "batch",
        "--input",
        first.to_str().unwrap(),
        "--output",
        second.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&first).unwrap(), std::fs::read(&second).unwrap());
}

#[test]
fn identity_check_restricted_grid() {
    let out = run(&[
        "check-identities",
        "--max-a0",
        "3",
        "--max-dim",
        "4",
        "--only-degree-equals-twist",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = result(&out);
    assert_eq!(r["points"], r["skippedFormulaInapplicable"]);
    assert_eq!(r["counterexamples"], 0);
}

#[test]
fn thread_knob_does_not_change_output() {
    let a = Command::new(env!("CARGO_BIN_EXE_fanobound"))
        .args(["check-identities", "--max-a0", "3", "--max-dim", "4"])
        .env("FANOBOUND_THREADS", "1")
        .output()
        .unwrap();
    let b = run(&["check-identities", "--max-a0", "3", "--max-dim", "4"]);
    assert_eq!(a.stdout, b.stdout);
}
