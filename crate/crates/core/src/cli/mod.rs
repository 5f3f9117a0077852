//! Command-line front end.
//!
//! Every subcommand builds one or more [`Job`]s, either from inline flags or
//! from an instance file given with `--input`, and writes a report. Exit
//! status: 0 success, 1 usage error, 2 hypothesis error, 3 counterexample.
//! `FANOBOUND_THREADS` optionally fixes the worker count.

pub mod exec;
pub mod instance;
pub mod render;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use exec::Outcome;
use instance::{parse_instance, parse_job, Job};
use render::{build_report, render, write_atomic, Format};

pub const THREADS_ENV: &str = "FANOBOUND_THREADS";

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "fanobound",
    version,
    about = "Exact computations for finite morphisms of Fano manifolds"
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: FormatArg,
    /// Report destination; standard output when absent.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Instance file ("-" for standard input).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Chern classes of the twisted cotangent bundle.
    Chern(ChernArgs),
    /// Positivity margin and global generation.
    Positivity(HyperArgs),
    /// Degree bound for finite morphisms.
    Bound(BoundArgs),
    /// Endomorphism decision and witness for a quadric.
    Quadric(QuadricArgs),
    /// Classification lookups and verdicts.
    Classify(ClassifyArgs),
    /// Grid check of the Chern identities.
    CheckIdentities(GridArgs),
    /// Run every job of an instance file.
    Batch,
}

#[derive(Debug, Args)]
struct HyperArgs {
    /// Weights, e.g. 3,2,1,1,1.
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<u64>>,
    #[arg(long)]
    degree: Option<u64>,
    /// Named hypersurface, e.g. cubic3fold or delpezzo:n=3,d=1.
    #[arg(long, conflicts_with_all = ["weights", "degree"])]
    alias: Option<String>,
}

#[derive(Debug, Args)]
struct ChernArgs {
    #[command(flatten)]
    x: HyperArgs,
    #[arg(long, allow_hyphen_values = true)]
    twist: Option<i64>,
}

#[derive(Debug, Args)]
struct BoundArgs {
    /// Source: an alias or "w,w,...:d".
    #[arg(long)]
    x: Option<String>,
    /// Target: an alias or "w,w,...:d".
    #[arg(long)]
    y: Option<String>,
    #[arg(long)]
    u: Option<u64>,
    /// Morphism parameter for the direct inequality check.
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    deg: Option<u64>,
    /// Record that the twisted cotangent bundle is asserted globally generated.
    #[arg(long)]
    gg_asserted: bool,
}

#[derive(Debug, Args)]
struct QuadricArgs {
    #[arg(long)]
    ambient_dim: Option<u64>,
    #[arg(long)]
    paper_k: Option<u64>,
    /// Symmetric matrix, rows separated by ';', entries by ','.
    #[arg(long, allow_hyphen_values = true)]
    matrix: Option<String>,
    /// Distinct pencil parameters, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pencil: Option<String>,
    #[arg(long)]
    index: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    /// verdict, delpezzo-table, wps-consistency, splitting-types,
    /// index-facts, ramification or standard-p.
    #[arg(long)]
    query: Option<String>,
    /// delpezzo, mukai, quadric, fourfold or fano.
    #[arg(long)]
    subject: Option<String>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    g: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    r: Option<u64>,
    #[arg(long)]
    index: Option<u64>,
    #[arg(long)]
    vmrt: Option<u64>,
    #[arg(long)]
    rho: Option<u64>,
    #[arg(long)]
    lambda: Option<u64>,
    #[arg(long)]
    h_dot: Option<u64>,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long)]
    max_a0: Option<u64>,
    #[arg(long)]
    max_dim: Option<u64>,
    #[arg(long)]
    max_degree: Option<u64>,
    #[arg(long)]
    max_extra_twist: Option<i64>,
    #[arg(long)]
    only_degree_equals_twist: bool,
    #[arg(long)]
    g_max_a: Option<i64>,
    #[arg(long)]
    g_max_n: Option<u64>,
    #[arg(long)]
    g_max_x: Option<i64>,
}

/// Object builder that skips absent flags.
struct Obj(Map<String, Value>);

impl Obj {
    fn new(kind: &str) -> Self {
        let mut m = Map::new();
        m.insert("kind".into(), json!(kind));
        Obj(m)
    }

    fn set<T: Into<Value>>(&mut self, key: &str, v: Option<T>) -> &mut Self {
        if let Some(v) = v {
            self.0.insert(key.into(), v.into());
        }
        self
    }

    fn value(&mut self) -> Value {
        Value::Object(std::mem::take(&mut self.0))
    }
}

fn hyper_fields(o: &mut Obj, h: &HyperArgs) {
    o.set("weights", h.weights.clone())
        .set("degree", h.degree)
        .set("alias", h.alias.clone());
}

/// `"3,2,1,1,1:6"` is explicit; anything else is an alias.
fn var_value(s: &str) -> Result<Value> {
    if let Some((w, d)) = s.split_once(':') {
        if w.chars().all(|c| c.is_ascii_digit() || c == ',' || c == ' ') {
            let weights = w
                .split(',')
                .map(|x| x.trim().parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::usage(format!("bad weights in {s:?}")))?;
            let degree: u64 = d
                .trim()
                .parse()
                .map_err(|_| Error::usage(format!("bad degree in {s:?}")))?;
            return Ok(json!({ "weights": weights, "degree": degree }));
        }
    }
    Ok(json!({ "alias": s }))
}

fn split_strings(s: &str, sep: char) -> Vec<Value> {
    s.split(sep).map(|x| json!(x.trim())).collect()
}

fn inline_job(cmd: &Command) -> Result<Value> {
    Ok(match cmd {
        Command::Chern(a) => {
            let mut o = Obj::new("chern");
            hyper_fields(&mut o, &a.x);
            o.set("twist", a.twist).value()
        }
        Command::Positivity(a) => {
            let mut o = Obj::new("positivity");
            hyper_fields(&mut o, a);
            o.value()
        }
        Command::Bound(a) => {
            let mut o = Obj::new("bound");
            o.set("x", a.x.as_deref().map(var_value).transpose()?)
                .set("y", a.y.as_deref().map(var_value).transpose()?)
                .set("u", a.u)
                .set("m", a.m)
                .set("deg", a.deg)
                .set("ggAsserted", a.gg_asserted.then_some(true))
                .value()
        }
        Command::Quadric(a) => {
            let matrix = a.matrix.as_deref().map(|m| {
                m.split(';')
                    .map(|r| Value::Array(split_strings(r, ',')))
                    .collect::<Vec<_>>()
            });
            let lambdas = a.pencil.as_deref().map(|p| split_strings(p, ','));
            Obj::new("quadric")
                .set("ambientDim", a.ambient_dim)
                .set("paperK", a.paper_k)
                .set("matrix", matrix)
                .set("lambdas", lambdas)
                .set("index", a.index)
                .set("q", a.q)
                .value()
        }
        Command::Classify(a) => Obj::new("classify")
            .set("query", a.query.clone())
            .set("subject", a.subject.clone())
            .set("n", a.n)
            .set("d", a.d)
            .set("g", a.g)
            .set("k", a.k)
            .set("r", a.r)
            .set("index", a.index)
            .set("vmrt", a.vmrt)
            .set("rho", a.rho)
            .set("lambda", a.lambda)
            .set("hDot", a.h_dot)
            .value(),
        Command::CheckIdentities(a) => Obj::new("identity-check")
            .set("maxA0", a.max_a0)
            .set("maxDim", a.max_dim)
            .set("maxDegree", a.max_degree)
            .set("maxExtraTwist", a.max_extra_twist)
            .set("onlyDegreeEqualsTwist", a.only_degree_equals_twist.then_some(true))
            .set("gMaxA", a.g_max_a)
            .set("gMaxN", a.g_max_n)
            .set("gMaxX", a.g_max_x)
            .value(),
        Command::Batch => return Err(Error::usage("batch needs --input")),
    })
}

fn command_kind(cmd: &Command) -> Option<&'static str> {
    Some(match cmd {
        Command::Chern(_) => "chern",
        Command::Positivity(_) => "positivity",
        Command::Bound(_) => "bound",
        Command::Quadric(_) => "quadric",
        Command::Classify(_) => "classify",
        Command::CheckIdentities(_) => "identity-check",
        Command::Batch => return None,
    })
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| Error::usage(format!("cannot read standard input: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::usage(format!("cannot read {}: {e}", path.display())))
    }
}

fn collect_jobs(cli: &Cli) -> Result<Vec<Job>> {
    let Some(path) = &cli.input else {
        return Ok(vec![parse_job(&inline_job(&cli.command)?, 0)?]);
    };
    let jobs = parse_instance(&read_input(path)?)?;
    if let Some(kind) = command_kind(&cli.command) {
        if let Some((i, j)) = jobs.iter().enumerate().find(|(_, j)| j.kind() != kind) {
            return Err(Error::usage(format!(
                "jobs[{i}] has kind {:?} but the subcommand runs {kind:?} jobs; use batch",
                j.kind()
            )));
        }
    }
    Ok(jobs)
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let jobs = collect_jobs(cli)?;
    let report = build_report(&jobs);
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    };
    let text = render(&report.value, format);
    match &cli.output {
        Some(path) => write_atomic(path, &text)?,
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Error::usage(format!("cannot write report: {e}")))?;
        }
    }
    for e in report.value["jobs"].as_array().into_iter().flatten() {
        if let Some(err) = e.get("error") {
            eprintln!("jobs[{}]: {}", e["index"], err["message"].as_str().unwrap_or_default());
        }
    }
    Ok(report.outcome)
}

/// Parses `args` (program name first) and runs; returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    match execute(&cli) {
        Ok(o) => o.exit_code(),
        Err(e) => {
            eprintln!("fanobound: {e}");
            Outcome::of_error(&e).exit_code()
        }
    }
}
