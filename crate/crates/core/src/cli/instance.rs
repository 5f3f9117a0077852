//! Instance files: a version tag and a list of jobs. Jobs are parsed into
//! [`Job`] and echoed back in canonical form by [`Job::to_value`].

use std::collections::BTreeSet;

use serde_json::{json, Map, Value};

use crate::classification::Subject;
use crate::error::{Error, Result};
use crate::exact::rational::{parse, to_canonical};
use crate::exact::Rational;
use crate::identities::Grid;

pub const INSTANCE_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HyperSpec {
    Alias(String),
    Explicit { weights: Vec<u64>, degree: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarSpec {
    Hyper(HyperSpec),
    Inline {
        dimension: usize,
        h_power: Rational,
        chern_numbers: Vec<Rational>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuadricSpec {
    Matrix(Vec<Vec<Rational>>),
    Shorthand { ambient_dim: usize, paper_k: usize },
    Pencil { lambdas: Vec<Rational>, index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassifyQuery {
    Verdict(Subject),
    DelPezzoTable { n: usize, d: u64 },
    WpsConsistency { n: usize, d: u64 },
    SplittingTypes { n: usize },
    IndexFacts { n: usize, r: usize },
    Ramification { index: u64, lambda: u64 },
    StandardP { index: u32, h_dot: u32, n: Option<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Job {
    Chern {
        x: HyperSpec,
        twist: i64,
    },
    Positivity {
        x: HyperSpec,
    },
    Bound {
        x: VarSpec,
        y: VarSpec,
        u: u64,
        m: Option<u64>,
        deg: Option<u64>,
        gg_asserted: Option<bool>,
    },
    Quadric {
        form: QuadricSpec,
        q: u32,
    },
    Classify(ClassifyQuery),
    IdentityCheck(Grid),
}

pub const KINDS: &[&str] = &["chern", "positivity", "bound", "quadric", "classify", "identity-check"];

impl Job {
    pub fn kind(&self) -> &'static str {
        match self {
            Job::Chern { .. } => "chern",
            Job::Positivity { .. } => "positivity",
            Job::Bound { .. } => "bound",
            Job::Quadric { .. } => "quadric",
            Job::Classify(_) => "classify",
            Job::IdentityCheck(_) => "identity-check",
        }
    }
}

/// Object view that remembers which keys were read, so leftovers can be
/// reported.
struct Fields<'a> {
    obj: &'a Map<String, Value>,
    used: BTreeSet<&'static str>,
    ctx: String,
}

impl<'a> Fields<'a> {
    fn new(v: &'a Value, ctx: impl Into<String>) -> Result<Self> {
        let ctx = ctx.into();
        let obj = v
            .as_object()
            .ok_or_else(|| Error::usage(format!("{ctx}: expected an object")))?;
        Ok(Fields {
            obj,
            used: BTreeSet::new(),
            ctx,
        })
    }

    fn get(&mut self, key: &'static str) -> Option<&'a Value> {
        self.used.insert(key);
        self.obj.get(key).filter(|v| !v.is_null())
    }

    fn has(&self, key: &str) -> bool {
        self.obj.get(key).is_some_and(|v| !v.is_null())
    }

    fn req(&mut self, key: &'static str) -> Result<&'a Value> {
        let ctx = self.ctx.clone();
        self.get(key)
            .ok_or_else(|| Error::usage(format!("{ctx}: missing field {key:?}")))
    }

    fn finish(self) -> Result<()> {
        let extra: Vec<&String> = self.obj.keys().filter(|k| !self.used.contains(k.as_str())).collect();
        if extra.is_empty() {
            Ok(())
        } else {
            Err(Error::usage(format!("{}: unknown field(s) {:?}", self.ctx, extra)))
        }
    }

    fn int(&mut self, key: &'static str) -> Result<i64> {
        let ctx = format!("{}.{key}", self.ctx);
        value_int(self.req(key)?, &ctx)
    }

    fn opt_int(&mut self, key: &'static str) -> Result<Option<i64>> {
        let ctx = format!("{}.{key}", self.ctx);
        self.get(key).map(|v| value_int(v, &ctx)).transpose()
    }

    fn uint(&mut self, key: &'static str) -> Result<u64> {
        let ctx = format!("{}.{key}", self.ctx);
        nonneg(self.int(key)?, &ctx)
    }

    fn opt_uint(&mut self, key: &'static str) -> Result<Option<u64>> {
        let ctx = format!("{}.{key}", self.ctx);
        self.opt_int(key)?.map(|v| nonneg(v, &ctx)).transpose()
    }

    fn opt_bool(&mut self, key: &'static str) -> Result<Option<bool>> {
        let ctx = format!("{}.{key}", self.ctx);
        self.get(key)
            .map(|v| {
                v.as_bool()
                    .ok_or_else(|| Error::usage(format!("{ctx}: expected a boolean")))
            })
            .transpose()
    }

    fn string(&mut self, key: &'static str) -> Result<&'a str> {
        let ctx = format!("{}.{key}", self.ctx);
        self.req(key)?
            .as_str()
            .ok_or_else(|| Error::usage(format!("{ctx}: expected a string")))
    }
}

fn nonneg(v: i64, ctx: &str) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::usage(format!("{ctx}: expected a non-negative integer, got {v}")))
}

fn small<T: TryFrom<u64>>(v: u64, ctx: &str) -> Result<T> {
    T::try_from(v).map_err(|_| Error::usage(format!("{ctx}: value {v} out of range")))
}

/// Integers may be JSON numbers or decimal strings.
fn value_int(v: &Value, ctx: &str) -> Result<i64> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .ok_or_else(|| Error::usage(format!("{ctx}: expected an integer, got {n}"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::usage(format!("{ctx}: expected an integer, got {s:?}"))),
        _ => Err(Error::usage(format!("{ctx}: expected an integer"))),
    }
}

/// Rationals may be JSON integers or strings `"p"` / `"p/q"`.
fn value_rational(v: &Value, ctx: &str) -> Result<Rational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(crate::exact::rational::int)
            .ok_or_else(|| Error::usage(format!("{ctx}: non-integer numbers must be written as \"p/q\" strings"))),
        Value::String(s) => parse(s).map_err(|e| Error::usage(format!("{ctx}: {e}"))),
        _ => Err(Error::usage(format!("{ctx}: expected a rational"))),
    }
}

fn value_list<'a>(v: &'a Value, ctx: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::usage(format!("{ctx}: expected a list")))
}

fn uint_list(v: &Value, ctx: &str) -> Result<Vec<u64>> {
    value_list(v, ctx)?
        .iter()
        .enumerate()
        .map(|(i, x)| nonneg(value_int(x, &format!("{ctx}[{i}]"))?, ctx))
        .collect()
}

fn rational_list(v: &Value, ctx: &str) -> Result<Vec<Rational>> {
    value_list(v, ctx)?
        .iter()
        .enumerate()
        .map(|(i, x)| value_rational(x, &format!("{ctx}[{i}]")))
        .collect()
}

fn rat(r: &Rational) -> Value {
    Value::String(to_canonical(r))
}

fn rats(rs: &[Rational]) -> Value {
    Value::Array(rs.iter().map(rat).collect())
}

fn parse_hyper(f: &mut Fields) -> Result<HyperSpec> {
    if f.has("alias") {
        return Ok(HyperSpec::Alias(f.string("alias")?.to_string()));
    }
    let ctx = format!("{}.weights", f.ctx);
    let weights = uint_list(f.req("weights")?, &ctx)?;
    let degree = f.uint("degree")?;
    Ok(HyperSpec::Explicit { weights, degree })
}

fn hyper_value(h: &HyperSpec) -> Value {
    match h {
        HyperSpec::Alias(a) => json!({ "alias": a }),
        HyperSpec::Explicit { weights, degree } => json!({ "weights": weights, "degree": degree }),
    }
}

fn parse_var(v: &Value, ctx: &str) -> Result<VarSpec> {
    if let Value::String(s) = v {
        return Ok(VarSpec::Hyper(HyperSpec::Alias(s.clone())));
    }
    let mut f = Fields::new(v, ctx)?;
    let spec = if f.has("dimension") || f.has("hPower") || f.has("chernNumbers") {
        let dimension = small(f.uint("dimension")?, ctx)?;
        let h_power = value_rational(f.req("hPower")?, &format!("{ctx}.hPower"))?;
        let chern_numbers = rational_list(f.req("chernNumbers")?, &format!("{ctx}.chernNumbers"))?;
        VarSpec::Inline {
            dimension,
            h_power,
            chern_numbers,
        }
    } else {
        VarSpec::Hyper(parse_hyper(&mut f)?)
    };
    f.finish()?;
    Ok(spec)
}

fn var_value(v: &VarSpec) -> Value {
    match v {
        VarSpec::Hyper(h) => hyper_value(h),
        VarSpec::Inline {
            dimension,
            h_power,
            chern_numbers,
        } => json!({ "dimension": dimension, "hPower": rat(h_power), "chernNumbers": rats(chern_numbers) }),
    }
}

fn parse_quadric(f: &mut Fields) -> Result<QuadricSpec> {
    let ctx = f.ctx.clone();
    if f.has("matrix") {
        let rows = value_list(f.req("matrix")?, &format!("{ctx}.matrix"))?;
        let m = rows
            .iter()
            .enumerate()
            .map(|(i, r)| rational_list(r, &format!("{ctx}.matrix[{i}]")))
            .collect::<Result<_>>()?;
        return Ok(QuadricSpec::Matrix(m));
    }
    if f.has("lambdas") {
        let lambdas = rational_list(f.req("lambdas")?, &format!("{ctx}.lambdas"))?;
        let index = small(f.uint("index")?, &ctx)?;
        return Ok(QuadricSpec::Pencil { lambdas, index });
    }
    Ok(QuadricSpec::Shorthand {
        ambient_dim: small(f.uint("ambientDim")?, &ctx)?,
        paper_k: small(f.uint("paperK")?, &ctx)?,
    })
}

fn quadric_value(q: &QuadricSpec) -> Value {
    match q {
        QuadricSpec::Matrix(m) => json!({ "matrix": m.iter().map(|r| rats(r)).collect::<Vec<_>>() }),
        QuadricSpec::Shorthand { ambient_dim, paper_k } => json!({ "ambientDim": ambient_dim, "paperK": paper_k }),
        QuadricSpec::Pencil { lambdas, index } => json!({ "lambdas": rats(lambdas), "index": index }),
    }
}

fn parse_subject(f: &mut Fields) -> Result<Subject> {
    let ctx = f.ctx.clone();
    let subject = f.string("subject")?;
    Ok(match subject {
        "delpezzo" => Subject::DelPezzo {
            n: small(f.uint("n")?, &ctx)?,
            d: f.uint("d")?,
        },
        "mukai" => Subject::Mukai {
            n: small(f.uint("n")?, &ctx)?,
            genus: small(f.uint("g")?, &ctx)?,
        },
        "quadric" => Subject::Quadric {
            n: small(f.uint("n")?, &ctx)?,
            k: small(f.uint("k")?, &ctx)?,
        },
        "fourfold" => Subject::FanoFourfold {
            index: small(f.uint("index")?, &ctx)?,
            vmrt_dim: f.opt_uint("vmrt")?.map(|v| small(v, &ctx)).transpose()?,
        },
        "fano" => Subject::Fano {
            n: small(f.uint("n")?, &ctx)?,
            index: small(f.uint("index")?, &ctx)?,
            rho: small(f.uint("rho")?, &ctx)?,
        },
        other => {
            return Err(Error::usage(format!(
                "{ctx}: unsupported subject {other:?}; supported shapes: {}",
                crate::classification::SUPPORTED_SHAPES
            )))
        }
    })
}

pub fn subject_value(s: &Subject) -> Value {
    match s {
        Subject::DelPezzo { n, d } => json!({ "subject": "delpezzo", "n": n, "d": d }),
        Subject::Mukai { n, genus } => json!({ "subject": "mukai", "n": n, "g": genus }),
        Subject::Quadric { n, k } => json!({ "subject": "quadric", "n": n, "k": k }),
        Subject::FanoFourfold { index, vmrt_dim } => {
            json!({ "subject": "fourfold", "index": index, "vmrt": vmrt_dim })
        }
        Subject::Fano { n, index, rho } => json!({ "subject": "fano", "n": n, "index": index, "rho": rho }),
    }
}

fn parse_classify(f: &mut Fields) -> Result<ClassifyQuery> {
    let ctx = f.ctx.clone();
    let query = if f.has("query") { f.string("query")? } else { "verdict" };
    Ok(match query {
        "verdict" => ClassifyQuery::Verdict(parse_subject(f)?),
        "delpezzo-table" => ClassifyQuery::DelPezzoTable {
            n: small(f.uint("n")?, &ctx)?,
            d: f.uint("d")?,
        },
        "wps-consistency" => ClassifyQuery::WpsConsistency {
            n: small(f.uint("n")?, &ctx)?,
            d: f.uint("d")?,
        },
        "splitting-types" => ClassifyQuery::SplittingTypes {
            n: small(f.uint("n")?, &ctx)?,
        },
        "index-facts" => ClassifyQuery::IndexFacts {
            n: small(f.uint("n")?, &ctx)?,
            r: small(f.uint("r")?, &ctx)?,
        },
        "ramification" => ClassifyQuery::Ramification {
            index: f.uint("index")?,
            lambda: f.uint("lambda")?,
        },
        "standard-p" => ClassifyQuery::StandardP {
            index: small(f.uint("index")?, &ctx)?,
            h_dot: small(f.uint("hDot")?, &ctx)?,
            n: f.opt_uint("n")?.map(|v| small(v, &ctx)).transpose()?,
        },
        other => return Err(Error::usage(format!("{ctx}: unknown classify query {other:?}"))),
    })
}

fn classify_value(q: &ClassifyQuery) -> Value {
    let (query, mut body) = match q {
        ClassifyQuery::Verdict(s) => ("verdict", subject_value(s)),
        ClassifyQuery::DelPezzoTable { n, d } => ("delpezzo-table", json!({ "n": n, "d": d })),
        ClassifyQuery::WpsConsistency { n, d } => ("wps-consistency", json!({ "n": n, "d": d })),
        ClassifyQuery::SplittingTypes { n } => ("splitting-types", json!({ "n": n })),
        ClassifyQuery::IndexFacts { n, r } => ("index-facts", json!({ "n": n, "r": r })),
        ClassifyQuery::Ramification { index, lambda } => ("ramification", json!({ "index": index, "lambda": lambda })),
        ClassifyQuery::StandardP { index, h_dot, n } => {
            ("standard-p", json!({ "index": index, "hDot": h_dot, "n": n }))
        }
    };
    body["query"] = json!(query);
    body
}

fn parse_grid(f: &mut Fields) -> Result<Grid> {
    let ctx = f.ctx.clone();
    let d = Grid::default();
    Ok(Grid {
        max_a0: f.opt_uint("maxA0")?.unwrap_or(d.max_a0),
        max_dim: f
            .opt_uint("maxDim")?
            .map(|v| small(v, &ctx))
            .transpose()?
            .unwrap_or(d.max_dim),
        max_degree: f.opt_uint("maxDegree")?.unwrap_or(d.max_degree),
        max_extra_twist: f.opt_int("maxExtraTwist")?.unwrap_or(d.max_extra_twist),
        only_degree_equals_twist: f.opt_bool("onlyDegreeEqualsTwist")?.unwrap_or(false),
        g_max_a: f.opt_int("gMaxA")?.unwrap_or(d.g_max_a),
        g_max_n: f
            .opt_uint("gMaxN")?
            .map(|v| small(v, &ctx))
            .transpose()?
            .unwrap_or(d.g_max_n),
        g_max_x: f.opt_int("gMaxX")?.unwrap_or(d.g_max_x),
    })
}

fn grid_value(g: &Grid) -> Value {
    json!({
        "maxA0": g.max_a0,
        "maxDim": g.max_dim,
        "maxDegree": g.max_degree,
        "maxExtraTwist": g.max_extra_twist,
        "onlyDegreeEqualsTwist": g.only_degree_equals_twist,
        "gMaxA": g.g_max_a,
        "gMaxN": g.g_max_n,
        "gMaxX": g.g_max_x,
    })
}

/// Parses job number `index`; errors name the index.
pub fn parse_job(v: &Value, index: usize) -> Result<Job> {
    let ctx = format!("jobs[{index}]");
    let mut f = Fields::new(v, ctx.clone())?;
    let kind = f.string("kind")?;
    let job = match kind {
        "chern" => {
            let x = parse_hyper(&mut f)?;
            Job::Chern {
                x,
                twist: f.int("twist")?,
            }
        }
        "positivity" => Job::Positivity {
            x: parse_hyper(&mut f)?,
        },
        "bound" => {
            let x = parse_var(f.req("x")?, &format!("{ctx}.x"))?;
            let y = parse_var(f.req("y")?, &format!("{ctx}.y"))?;
            Job::Bound {
                x,
                y,
                u: f.uint("u")?,
                m: f.opt_uint("m")?,
                deg: f.opt_uint("deg")?,
                gg_asserted: f.opt_bool("ggAsserted")?,
            }
        }
        "quadric" => {
            let form = parse_quadric(&mut f)?;
            let q = f.opt_uint("q")?.map(|v| small(v, &ctx)).transpose()?.unwrap_or(2);
            Job::Quadric { form, q }
        }
        "classify" => Job::Classify(parse_classify(&mut f)?),
        "identity-check" => Job::IdentityCheck(parse_grid(&mut f)?),
        other => {
            return Err(Error::usage(format!(
                "{ctx}: unknown job kind {other:?}; expected one of {KINDS:?}"
            )))
        }
    };
    f.finish()?;
    Ok(job)
}

impl Job {
    /// Canonical echo of the job; parsing it back yields an equal job.
    pub fn to_value(&self) -> Value {
        let mut v = match self {
            Job::Chern { x, twist } => {
                let mut v = hyper_value(x);
                v["twist"] = json!(twist);
                v
            }
            Job::Positivity { x } => hyper_value(x),
            Job::Bound {
                x,
                y,
                u,
                m,
                deg,
                gg_asserted,
            } => json!({
                "x": var_value(x),
                "y": var_value(y),
                "u": u,
                "m": m,
                "deg": deg,
                "ggAsserted": gg_asserted,
            }),
            Job::Quadric { form, q } => {
                let mut v = quadric_value(form);
                v["q"] = json!(q);
                v
            }
            Job::Classify(q) => classify_value(q),
            Job::IdentityCheck(g) => grid_value(g),
        };
        v["kind"] = json!(self.kind());
        v
    }
}

/// Accepts either an instance file or a previously written report, whose
/// echoed inputs are re-run.
pub fn parse_instance(text: &str) -> Result<Vec<Job>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::usage(format!("invalid JSON: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::usage("instance must be a JSON object"))?;
    if obj.contains_key("reportVersion") {
        let jobs = obj
            .get("jobs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::usage("report has no jobs list"))?;
        return jobs
            .iter()
            .enumerate()
            .map(|(i, j)| {
                let input = j
                    .get("input")
                    .ok_or_else(|| Error::usage(format!("jobs[{i}]: report entry has no input")))?;
                parse_job(input, i)
            })
            .collect();
    }
    let version = match obj.get("version") {
        Some(Value::String(s)) => s.clone(),
        Some(Value::Number(n)) => n.to_string(),
        _ => return Err(Error::usage("instance is missing its version tag")),
    };
    if version != INSTANCE_VERSION {
        return Err(Error::usage(format!(
            "unsupported instance version {version:?}, expected {INSTANCE_VERSION:?}"
        )));
    }
    let extra: Vec<&String> = obj.keys().filter(|k| *k != "version" && *k != "jobs").collect();
    if !extra.is_empty() {
        return Err(Error::usage(format!("unknown top-level field(s) {extra:?}")));
    }
    let jobs = obj
        .get("jobs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::usage("instance has no jobs list"))?;
    jobs.iter().enumerate().map(|(i, j)| parse_job(j, i)).collect()
}
