//! Report assembly and serialization.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::exec::{run_job, JobResult, Outcome};
use super::instance::Job;
use crate::error::{Error, Result};

pub const REPORT_VERSION: &str = "1";
pub const ENGINE: &str = concat!("fanobound ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub value: Value,
    pub outcome: Outcome,
}

fn entry(index: usize, job: &Job, r: JobResult) -> Value {
    let mut e = json!({
        "index": index,
        "kind": job.kind(),
        "input": job.to_value(),
        "outcome": r.outcome.as_str(),
        "provenance": { "rule": r.rule, "engine": ENGINE },
    });
    match r.outcome {
        Outcome::UsageError | Outcome::HypothesisError => {
            e["error"] = json!({ "message": r.body["error"], "rule": r.rule });
        }
        _ => e["result"] = r.body,
    }
    e
}

/// Runs the jobs concurrently; entries keep input order.
pub fn build_report(jobs: &[Job]) -> Report {
    let results: Vec<JobResult> = jobs.par_iter().map(run_job).collect();
    let outcome = results.iter().map(|r| r.outcome).max().unwrap_or(Outcome::Ok);
    let entries: Vec<Value> = jobs
        .iter()
        .zip(results)
        .enumerate()
        .map(|(i, (j, r))| entry(i, j, r))
        .collect();
    Report {
        value: json!({ "reportVersion": REPORT_VERSION, "jobs": entries }),
        outcome,
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                let p = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) if !a.is_empty() => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix} = {s}\n")),
        other => out.push_str(&format!("{prefix} = {other}\n")),
    }
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            flatten("", v, &mut s);
            s
        }
    }
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| Error::usage(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.flush().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::instance::{parse_instance, HyperSpec};

    #[test]
    fn flatten_paths() {
        let v = json!({ "a": { "b": [1, "x"] }, "c": null, "d": [] });
        assert_eq!(render(&v, Format::Text), "a.b[0] = 1\na.b[1] = x\nc = null\nd = []\n");
    }

    #[test]
    fn report_round_trip_is_byte_identical() {
        let jobs = vec![
            Job::Chern {
                x: HyperSpec::Explicit {
                    weights: vec![3, 2, 1, 1, 1],
                    degree: 6,
                },
                twist: 5,
            },
            Job::Positivity {
                x: HyperSpec::Alias("nonsense".into()),
            },
        ];
        let first = render(&build_report(&jobs).value, Format::Json);
        let again = parse_instance(&first).unwrap();
        assert_eq!(again, jobs);
        assert_eq!(render(&build_report(&again).value, Format::Json), first);
    }

    #[test]
    fn exit_is_worst_outcome() {
        let jobs = vec![
            Job::Chern {
                x: HyperSpec::Alias("cubic3fold".into()),
                twist: 2,
            },
            Job::Positivity {
                x: HyperSpec::Alias("nonsense".into()),
            },
        ];
        let r = build_report(&jobs);
        assert_eq!(r.outcome, Outcome::UsageError);
        assert_eq!(r.value["jobs"][1]["outcome"], "usage-error");
        assert!(r.value["jobs"][1]["error"]["message"]
            .as_str()
            .unwrap()
            .contains("nonsense"));
    }
}
