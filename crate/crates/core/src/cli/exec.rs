//! Runs one job and renders its result as a JSON tree.

use serde_json::{json, Value};

use crate::bound::{self, arv_inequality_check, degree_bound, implied_degree, BoundStatus, VarietyInvariants};
use crate::chern::{
    self, chern_numbers, chern_report, euler_characteristic, gg_classify, residue_sum_check, validate, wps_positivity,
    GlobalGeneration, WeightedHypersurface,
};
use crate::classification::{self as cls, Subject};
use crate::error::{Error, Result};
use crate::exact::rational::to_canonical;
use crate::exact::{MultiPoly, Rational};
use crate::identities::{check_identities, Summary};
use crate::quadric::{
    self, decide, diagonal_to_normal_form, paper_k, pencil_projection, verify_invariance, QuadricForm,
};

use super::instance::{subject_value, ClassifyQuery, HyperSpec, Job, QuadricSpec, VarSpec};

pub const RULE_CHERN: &str = "twisted-cotangent-chern-class";
pub const RULE_BOUND: &str = "degree-bound-inequality";
pub const RULE_IDENTITIES: &str = "residue-theorem-identities";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Ok,
    UsageError,
    HypothesisError,
    Counterexample,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::UsageError => 1,
            Outcome::HypothesisError => 2,
            Outcome::Counterexample => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Ok => "ok",
            Outcome::UsageError => "usage-error",
            Outcome::HypothesisError => "hypothesis-error",
            Outcome::Counterexample => "counterexample",
        }
    }

    pub fn of_error(e: &Error) -> Outcome {
        if e.is_hypothesis() {
            Outcome::HypothesisError
        } else {
            Outcome::UsageError
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobResult {
    pub outcome: Outcome,
    pub rule: String,
    pub body: Value,
}

fn rat(r: &Rational) -> Value {
    Value::String(to_canonical(r))
}

fn rats(rs: &[Rational]) -> Value {
    Value::Array(rs.iter().map(rat).collect())
}

fn poly(p: &MultiPoly) -> Value {
    Value::String(p.to_string())
}

pub fn resolve_hyper(h: &HyperSpec) -> Result<WeightedHypersurface> {
    match h {
        HyperSpec::Alias(a) => cls::resolve_alias(a),
        HyperSpec::Explicit { weights, degree } => WeightedHypersurface::new(weights.clone(), *degree),
    }
}

fn hyper_json(x: &WeightedHypersurface) -> Value {
    json!({ "weights": x.weights(), "degree": x.degree(), "dimension": x.dimension() })
}

fn gg_name(g: GlobalGeneration) -> &'static str {
    match g {
        GlobalGeneration::GloballyGenerated => "GloballyGenerated",
        GlobalGeneration::GgAwayFromFinitePoints => "GGAwayFromFinitePoints",
    }
}

fn run_chern(h: &HyperSpec, twist: i64) -> Result<JobResult> {
    let x = resolve_hyper(h)?;
    let v = validate(&x);
    let report = chern_report(&x, twist)?;
    let residue = match residue_sum_check(&x, twist) {
        Ok(b) => json!({
            "value": rat(&b.at_origin),
            "agreesWithSeries": b.at_origin == report.top_coefficient,
            "atInfinity": rat(&b.at_infinity),
            "atTwistPole": rat(&b.at_twist_pole),
            "atPlainPole": rat(&b.at_plain_pole),
            "atOrigin": rat(&b.at_origin),
            "sum": rat(&b.sum),
        }),
        Err(e) if e.is_hypothesis() || matches!(e, Error::FormulaInapplicable(_)) => {
            json!({ "inapplicable": e.to_string() })
        }
        Err(e) => return Err(e),
    };
    Ok(JobResult {
        outcome: Outcome::Ok,
        rule: RULE_CHERN.into(),
        body: json!({
            "hypersurface": hyper_json(&x),
            "validation": {
                "dimensionAtLeastTwo": v.dimension_at_least_two,
                "wellFormed": v.well_formed,
                "paperMode": v.paper_mode,
                "paperModeViolation": v.paper_mode_violation,
                "positivityDegreeOk": v.positivity_degree_ok,
                "positivityDegreeBoundary": v.positivity_degree_boundary,
            },
            "twist": twist,
            "series": rats(report.series.coeffs()),
            "seriesText": report.series.to_string(),
            "topCoefficient": rat(&report.top_coefficient),
            "hPower": rat(&report.h_power),
            "topNumber": rat(&report.top_number),
            "chernNumbers": rats(&chern_numbers(&x)?),
            "eulerCharacteristic": rat(&euler_characteristic(&x)?),
            "residue": residue,
        }),
    })
}

fn run_positivity(h: &HyperSpec) -> Result<JobResult> {
    let x = resolve_hyper(h)?;
    let p = wps_positivity(&x)?;
    let gg = gg_classify(&x)?;
    Ok(JobResult {
        outcome: Outcome::Ok,
        rule: chern::RULE_POSITIVITY.into(),
        body: json!({
            "hypersurface": hyper_json(&x),
            "twist": p.twist,
            "topCoefficient": rat(&p.top_coefficient),
            "threshold": rat(&p.threshold),
            "margin": rat(&p.margin),
            "holds": p.holds,
            "globalGeneration": gg_name(gg),
        }),
    })
}

/// Invariants plus the global-generation status filled from the
/// hypersurface when one is given.
fn resolve_var(v: &VarSpec) -> Result<(VarietyInvariants, Option<GlobalGeneration>)> {
    match v {
        VarSpec::Hyper(h) => {
            let x = resolve_hyper(h)?;
            let gg = if x.is_paper_mode() && x.is_well_formed() {
                Some(gg_classify(&x)?)
            } else {
                None
            };
            Ok((VarietyInvariants::from_hypersurface(&x)?, gg))
        }
        VarSpec::Inline {
            dimension,
            h_power,
            chern_numbers,
        } => Ok((
            VarietyInvariants::new(*dimension, h_power.clone(), chern_numbers.clone())?,
            None,
        )),
    }
}

fn invariants_json(v: &VarietyInvariants) -> Value {
    json!({ "dimension": v.dimension(), "hPower": rat(v.h_power()), "chernNumbers": rats(v.chern_numbers()) })
}

fn run_bound(
    xs: &VarSpec,
    ys: &VarSpec,
    u: u64,
    m: Option<u64>,
    deg: Option<u64>,
    gg_asserted: Option<bool>,
) -> Result<JobResult> {
    let (x, gg) = resolve_var(xs)?;
    let (y, _) = resolve_var(ys)?;
    let r = degree_bound(&x, &y, u)?;
    let global_generation = match (gg_asserted, gg) {
        (Some(true), _) => "asserted".to_string(),
        (Some(false), _) => "not-asserted".to_string(),
        (None, Some(g)) => gg_name(g).to_string(),
        (None, None) => "unknown".to_string(),
    };
    let arv = match (m, deg) {
        (None, None) => Value::Null,
        (None, Some(_)) => return Err(Error::usage("deg given without m")),
        (Some(m), deg) => {
            let deg = match deg {
                Some(d) => d,
                None => implied_degree(&x, &y, m)
                    .ok_or_else(|| Error::usage(format!("m = {m} does not give an integral degree")))?,
            };
            json!({ "m": m, "deg": deg, "holds": arv_inequality_check(&x, &y, u, m, deg)? })
        }
    };
    Ok(JobResult {
        outcome: Outcome::Ok,
        rule: RULE_BOUND.into(),
        body: json!({
            "x": invariants_json(&x),
            "y": invariants_json(&y),
            "u": r.u,
            "status": match r.status {
                BoundStatus::Bounded => "Bounded",
                BoundStatus::NoCompatibleMorphism => "NoCompatibleMorphism",
            },
            "lhsConstant": rat(&r.lhs_constant),
            "differencePoly": rats(&r.difference_poly),
            "cap": r.cap,
            "feasible": r.feasible,
            "mMax": r.m_max,
            "N": r.degree_bound.as_ref().map(|n| n.to_string()),
            "evaluations": r.evaluations.iter().map(|e| json!({
                "m": e.m, "lhs": rat(&e.lhs), "rhs": rat(&e.rhs), "feasible": e.feasible,
            })).collect::<Vec<_>>(),
            "globalGeneration": global_generation,
            "arvCheck": arv,
        }),
    })
}

fn run_quadric(spec: &QuadricSpec, q: u32) -> Result<JobResult> {
    let mut pencil = Value::Null;
    let form = match spec {
        QuadricSpec::Matrix(m) => QuadricForm::new(m.clone())?,
        QuadricSpec::Shorthand { ambient_dim, paper_k } => QuadricForm::shorthand(*ambient_dim, *paper_k)?,
        QuadricSpec::Pencil { lambdas, index } => {
            let f = pencil_projection(lambdas, *index)?;
            let diag: Vec<Rational> = (0..=f.ambient_dim()).map(|i| f.matrix()[i][i].clone()).collect();
            pencil = json!({ "diagonal": rats(&diag), "fullRank": f.rank() == f.ambient_dim() + 1 });
            f
        }
    };
    let k = paper_k(&form)?;
    let verdict = decide(&form, q)?;
    let witness = match &verdict.witness {
        Some(w) => {
            let inv = verify_invariance(&w.form, &w.map)?;
            let certified = match &inv.quotient {
                Some(qt) => qt.mul(&w.form)? == inv.pulled_back,
                None => false,
            };
            json!({
                "k": w.k,
                "form": poly(&w.form),
                "map": { "exponent": w.map.exponent, "arity": w.map.arity },
                "degree": w.degree.value(),
                "degreeKind": match w.degree {
                    quadric::WitnessDegree::Irreducible(_) => "irreducible",
                    quadric::WitnessDegree::PerComponent(_) => "per-component",
                },
                "reducible": w.reducible,
                "pulledBack": poly(&inv.pulled_back),
                "quotient": inv.quotient.as_ref().map(poly),
                "certified": certified,
            })
        }
        None => Value::Null,
    };
    let own = form.to_poly();
    let own_inv = verify_invariance(&own, &quadric::MonomialMap::new(q, form.ambient_dim() + 1)?)?;
    let normal_form = if (1..=3).contains(&k) {
        let s = diagonal_to_normal_form(k)?;
        json!({ "target": s.target, "rules": s.rules, "verified": s.verified })
    } else {
        Value::Null
    };
    Ok(JobResult {
        outcome: Outcome::Ok,
        rule: verdict.rule.into(),
        body: json!({
            "ambientDim": form.ambient_dim(),
            "rank": k + 1,
            "paperK": k,
            "admits": verdict.admits,
            "outsideTheoremRange": verdict.outside_theorem_range,
            "witness": witness,
            "powerMap": {
                "form": poly(&own),
                "exponent": q,
                "invariant": own_inv.invariant,
                "quotient": own_inv.quotient.as_ref().map(poly),
                "remainder": if own_inv.remainder.is_zero() { Value::Null } else { poly(&own_inv.remainder) },
            },
            "normalForm": normal_form,
            "pencil": pencil,
        }),
    })
}

fn run_classify(q: &ClassifyQuery) -> Result<JobResult> {
    let ok = |rule: &str, body: Value| JobResult {
        outcome: Outcome::Ok,
        rule: rule.to_string(),
        body,
    };
    Ok(match q {
        ClassifyQuery::Verdict(s) => {
            let v = cls::verdict(s)?;
            let mut body = json!({
                "subject": subject_value(&v.subject),
                "status": v.status.as_str(),
                "citation": { "rule": v.rule.id, "statement": v.rule.statement },
                "basis": if v.rule.computed { "computed" } else { "cited, not computed" },
            });
            if let Subject::Quadric { n, k } = *s {
                if k <= 3 {
                    body["witnessPointer"] = json!({ "kind": "quadric", "ambientDim": n, "paperK": k });
                }
            }
            ok(v.rule.id, body)
        }
        ClassifyQuery::DelPezzoTable { n, d } => {
            let e = cls::del_pezzo_lookup(*n, *d)?;
            ok(
                "del-pezzo-table",
                json!({
                    "n": e.n,
                    "d": e.d,
                    "description": e.description,
                    "wpsModel": e.wps_model.as_ref().map(hyper_json),
                    "ciModel": e.ci_model,
                    "picardOne": e.picard_one,
                    "veryAmpleH": e.very_ample_h,
                }),
            )
        }
        ClassifyQuery::WpsConsistency { n, d } => {
            let c = cls::del_pezzo_wps_consistency(*n, *d)?;
            ok(
                chern::RULE_POSITIVITY,
                json!({
                    "model": hyper_json(&c.model),
                    "coprime": c.coprime,
                    "degreeOk": c.degree_ok,
                    "degreeBoundary": c.degree_boundary,
                    "margin": rat(&c.positivity.margin),
                    "holds": c.positivity.holds,
                }),
            )
        }
        ClassifyQuery::SplittingTypes { n } => {
            let t = cls::splitting_types_del_pezzo(*n)?;
            ok("del-pezzo-line-normal-bundles", json!({ "n": n, "types": t }))
        }
        ClassifyQuery::IndexFacts { n, r } => {
            let f = cls::index_facts(*n, *r)?;
            ok(
                "index-classification",
                json!({
                    "n": f.n,
                    "r": f.r,
                    "kobayashiOchiai": f.kobayashi_ochiai,
                    "forcesPicardOne": f.forces_picard_one,
                    "higherPicardCandidates": f.higher_picard_candidates,
                    "middleIndex": f.middle_index.map(|m| json!({
                        "productCase": m.product_case,
                        "bundleCases": m.bundle_cases,
                        "quadricBundle": m.quadric_bundle,
                        "reflexiveCases": m.reflexive_cases,
                    })),
                }),
            )
        }
        ClassifyQuery::Ramification { index, lambda } => {
            let r = cls::ramification_contradiction(*index, *lambda)?;
            ok(
                "ramification-divisor-comparison",
                json!({
                    "contradictionForAllQ": r.contradiction_for_all_q,
                    "lhsAtTwo": r.lhs_at_two,
                    "rhsAtTwo": r.rhs_at_two,
                    "firstEscape": r.first_escape,
                }),
            )
        }
        ClassifyQuery::StandardP { index, h_dot, n } => {
            let s = cls::standard_p(*index, *h_dot, *n)?;
            ok("standard-curve-splitting", json!({ "p": s.p, "valid": s.valid }))
        }
    })
}

fn summary_json(s: &Summary) -> Value {
    let count = |c: &crate::identities::SuiteCount| json!({ "checked": c.checked, "failed": c.failed });
    json!({
        "hypersurfaces": s.hypersurfaces,
        "points": s.points,
        "skippedFormulaInapplicable": s.skipped_formula_inapplicable,
        "oracle": count(&s.oracle),
        "residueSum": count(&s.residue_sum),
        "whitney": count(&s.whitney),
        "positivity": count(&s.positivity),
        "gFunction": count(&s.g_function),
        "counterexamples": s.counterexamples(),
        "firstCounterexample": s.first_counterexample.as_ref().map(|c| json!({
            "suite": c.suite,
            "weights": c.weights,
            "degree": c.degree,
            "twist": c.twist,
            "detail": c.detail,
        })),
    })
}

fn run_inner(job: &Job) -> Result<JobResult> {
    match job {
        Job::Chern { x, twist } => run_chern(x, *twist),
        Job::Positivity { x } => run_positivity(x),
        Job::Bound {
            x,
            y,
            u,
            m,
            deg,
            gg_asserted,
        } => run_bound(x, y, *u, *m, *deg, *gg_asserted),
        Job::Quadric { form, q } => run_quadric(form, *q),
        Job::Classify(q) => run_classify(q),
        Job::IdentityCheck(g) => {
            let s = check_identities(g)?;
            Ok(JobResult {
                outcome: if s.counterexamples() == 0 {
                    Outcome::Ok
                } else {
                    Outcome::Counterexample
                },
                rule: RULE_IDENTITIES.into(),
                body: summary_json(&s),
            })
        }
    }
}

fn error_rule(job: &Job, e: &Error) -> String {
    match e {
        Error::Hypothesis { rule, .. } => rule.to_string(),
        _ => match job {
            Job::Bound { .. } => bound::RULE_LHS_POSITIVE.into(),
            _ => "input-validation".into(),
        },
    }
}

/// Never fails: engine errors become usage or hypothesis outcomes.
pub fn run_job(job: &Job) -> JobResult {
    match run_inner(job) {
        Ok(r) => r,
        Err(e) => JobResult {
            outcome: Outcome::of_error(&e),
            rule: error_rule(job, &e),
            body: json!({ "error": e.to_string() }),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::instance::HyperSpec;

    #[test]
    fn chern_example() {
        let r = run_job(&Job::Chern {
            x: HyperSpec::Explicit {
                weights: vec![1; 5],
                degree: 3,
            },
            twist: 2,
        });
        assert_eq!(r.outcome, Outcome::Ok);
        assert_eq!(r.body["topCoefficient"], "10");
        assert_eq!(r.body["topNumber"], "30");
        assert_eq!(r.body["residue"]["sum"], "0");
    }

    #[test]
    fn bound_example() {
        let a = || VarSpec::Hyper(HyperSpec::Alias("cubic3fold".into()));
        let r = run_job(&Job::Bound {
            x: a(),
            y: a(),
            u: 2,
            m: Some(2),
            deg: None,
            gg_asserted: None,
        });
        assert_eq!(r.outcome, Outcome::Ok);
        assert_eq!(r.body["mMax"], 1);
        assert_eq!(r.body["N"], "1");
        assert_eq!(r.body["arvCheck"]["holds"], false);
        assert_eq!(r.body["globalGeneration"], "GloballyGenerated");
    }

    #[test]
    fn quadric_example() {
        let r = run_job(&Job::Quadric {
            form: QuadricSpec::Shorthand {
                ambient_dim: 5,
                paper_k: 3,
            },
            q: 2,
        });
        assert_eq!(r.body["admits"], true);
        assert_eq!(r.body["witness"]["form"], "x0*x1 - x2*x3");
        assert_eq!(r.body["witness"]["quotient"], "x0*x1 + x2*x3");
        assert_eq!(r.body["witness"]["certified"], true);
        let r = run_job(&Job::Quadric {
            form: QuadricSpec::Shorthand {
                ambient_dim: 5,
                paper_k: 5,
            },
            q: 2,
        });
        assert_eq!(r.body["admits"], false);
        assert_eq!(r.body["powerMap"]["invariant"], false);
        assert!(r.body["powerMap"]["remainder"].is_string());
    }

    #[test]
    fn exit_codes_follow_severity() {
        let all = [
            Outcome::Ok,
            Outcome::UsageError,
            Outcome::HypothesisError,
            Outcome::Counterexample,
        ];
        assert_eq!(all.map(Outcome::exit_code), [0, 1, 2, 3]);
        assert_eq!(all.iter().max(), Some(&Outcome::Counterexample));
        assert_eq!(Outcome::Counterexample.as_str(), "counterexample");
    }

    #[test]
    fn hypothesis_outcome() {
        let r = run_job(&Job::Positivity {
            x: HyperSpec::Explicit {
                weights: vec![2, 2, 1, 1, 1],
                degree: 6,
            },
        });
        assert_eq!(r.outcome, Outcome::HypothesisError);
        let r = run_job(&Job::Positivity {
            x: HyperSpec::Explicit {
                weights: vec![3, 2, 1, 1, 1],
                degree: 5,
            },
        });
        assert_eq!(r.outcome, Outcome::HypothesisError);
    }
}
