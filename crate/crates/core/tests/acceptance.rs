//! Acceptance criteria AC1-AC9. Prints one PASS/FAIL line per criterion and
//! exits non-zero when any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use fanobound::bound::{degree_bound, VarietyInvariants};
use fanobound::chern::{
    euler_characteristic, g_value, top_chern_residue, total_chern_series, wps_positivity, WeightedHypersurface,
};
use fanobound::classification::{
    del_pezzo_lookup, del_pezzo_wps_consistency, lookup_rule, resolve_alias, splitting_types_del_pezzo, verdict,
    MukaiEntry, Subject, RULES,
};
use fanobound::exact::rational::int;
use fanobound::exact::{MultiPoly, Rational};
use fanobound::identities::{check_identities, Grid};
use fanobound::quadric::{decide, pencil_projection, verify_invariance, witness_for_k, MonomialMap, QuadricForm};

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Coefficients of `Π(1 + (t - a_i) h) / ((1 + t h)(1 + (t - d) h))` up to
/// `h^n`, in plain integers.
fn twisted_series(weights: &[u64], d: u64, t: i64) -> Vec<i128> {
    let n = weights.len() - 2;
    let mut c = vec![0i128; n + 1];
    c[0] = 1;
    let mul_linear = |c: &mut Vec<i128>, b: i128| {
        for j in (1..c.len()).rev() {
            c[j] += b * c[j - 1];
        }
    };
    let div_linear = |c: &mut Vec<i128>, b: i128| {
        for j in 1..c.len() {
            c[j] -= b * c[j - 1];
        }
    };
    for &a in weights {
        mul_linear(&mut c, (t - a as i64) as i128);
    }
    div_linear(&mut c, t as i128);
    div_linear(&mut c, (t - d as i64) as i128);
    c
}

fn wide(v: i128) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn oracle_top(x: &WeightedHypersurface, t: i64) -> Rational {
    wide(*twisted_series(x.weights(), x.degree(), t).last().unwrap())
}

fn hyper(w: &[u64], d: u64) -> WeightedHypersurface {
    WeightedHypersurface::new(w.to_vec(), d).unwrap()
}

fn ac1() -> Check {
    let grid = Grid::default();
    let start = Instant::now();
    let s = check_identities(&grid).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(s.oracle.failed == 0, || {
        format!("{} oracle mismatches: {:?}", s.oracle.failed, s.first_counterexample)
    })?;
    ensure(s.oracle.checked > 0, || "no oracle points".into())?;
    ensure(elapsed < Duration::from_secs(10), || format!("suite took {elapsed:?}"))?;
    // Independent integer expansion on the grid of the criterion.
    let mut checked = 0u64;
    for x in grid.hypersurfaces() {
        let n = x.dimension();
        let mut twists: Vec<i64> = (1..=grid.max_extra_twist).collect();
        twists.push(x.leading_twist() as i64);
        for a in twists {
            if a == x.degree() as i64 {
                continue;
            }
            let want = oracle_top(&x, a);
            let series = total_chern_series(&x, a).coeff(n);
            let residue = top_chern_residue(&x, a).map_err(|e| e.to_string())?;
            ensure(series == want && residue == want, || {
                format!(
                    "{:?} d={} a={a}: series {series}, residue {residue}, oracle {want}",
                    x.weights(),
                    x.degree()
                )
            })?;
            checked += 1;
        }
    }
    println!("  AC1 detail: {checked} points, engine suite {:?}", elapsed);
    Ok(())
}

fn ac2() -> Check {
    let s = check_identities(&Grid::default()).map_err(|e| e.to_string())?;
    ensure(s.residue_sum.checked > 0 && s.residue_sum.failed == 0, || {
        format!("residue sum: {:?}, first {:?}", s.residue_sum, s.first_counterexample)
    })?;
    ensure(s.whitney.failed == 0, || format!("whitney: {:?}", s.whitney))
}

fn ac3() -> Check {
    let s = check_identities(&Grid::default()).map_err(|e| e.to_string())?;
    ensure(s.positivity.checked > 0 && s.positivity.failed == 0, || {
        format!("positivity: {:?}", s.positivity)
    })?;
    let models: [(&[u64], u64, i64); 3] = [
        (&[1, 1, 1, 1, 1], 3, 2),
        (&[2, 1, 1, 1, 1], 4, 8),
        (&[3, 2, 1, 1, 1], 6, 48),
    ];
    for (w, d, margin) in models {
        let x = hyper(w, d);
        let a = (w[0] + w[1]) as i64;
        let oracle = oracle_top(&x, a) - int(a.pow(3));
        let got = wps_positivity(&x).map_err(|e| e.to_string())?.margin;
        ensure(got == oracle && got == int(margin), || {
            format!("{w:?} deg {d}: margin {got}, oracle {oracle}")
        })?;
    }
    Ok(())
}

fn ac4() -> Check {
    let s = check_identities(&Grid::default()).map_err(|e| e.to_string())?;
    ensure(s.g_function.failed == 0, || format!("g suite: {:?}", s.g_function))?;
    let g = |a: i128, n: u32, x: i128| a * (x - 1).pow(n) - x * (a - 1).pow(n) - (x - a);
    for a in 2..=20i64 {
        for n in 2..=10u32 {
            let (ai, start) = (a as i128, g(a as i128, n, a as i128 + 1));
            let closed = ai.pow(n + 1) - (ai + 1) * (ai - 1).pow(n) - 1;
            ensure(start == closed && start > 0, || {
                format!("g(a+1) at a={a} n={n}: {start} vs {closed}")
            })?;
            ensure(g_value(a, n, a + 1) == wide(start), || {
                format!("engine g(a+1) at a={a} n={n}")
            })?;
            for x in a + 1..50 {
                ensure(g(ai, n, x as i128 + 1) > g(ai, n, x as i128), || {
                    format!("g not increasing at a={a} n={n} x={x}")
                })?;
                ensure(g_value(a, n, x + 1) > g_value(a, n, x), || {
                    format!("engine g at a={a} n={n} x={x}")
                })?;
            }
        }
    }
    Ok(())
}

fn ac5() -> Check {
    let x = VarietyInvariants::from_hypersurface(&resolve_alias("cubic3fold").map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let r = degree_bound(&x, &x, 2).map_err(|e| e.to_string())?;
    // Untwisted series (1-h)^5/(1-3h), scaled by H^3 = 3.
    let c = twisted_series(&[1; 5], 3, 0);
    let direct: Vec<Rational> = c[1..].iter().map(|&v| int(3 * v as i64)).collect();
    ensure(x.chern_numbers() == direct.as_slice(), || {
        format!("chern numbers {:?}", x.chern_numbers())
    })?;
    ensure(r.m_max == Some(1), || format!("mMax {:?}", r.m_max))?;
    ensure(r.degree_bound == Some(1.into()), || format!("N {:?}", r.degree_bound))
}

fn ac6() -> Check {
    let cases: [(&str, i64); 4] = [
        ("quadric-surface", 4),
        ("cubic-surface", 9),
        ("quartic-surface", 24),
        ("quintic3fold", -200),
    ];
    for (alias, chi) in cases {
        let x = resolve_alias(alias).map_err(|e| e.to_string())?;
        let n = x.dimension();
        let top = *twisted_series(x.weights(), x.degree(), 0).last().unwrap();
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let oracle = sign * top * x.degree() as i128;
        let got = euler_characteristic(&x).map_err(|e| e.to_string())?;
        ensure(got == int(chi) && oracle == chi as i128, || {
            format!("{alias}: engine {got}, oracle {oracle}, want {chi}")
        })?;
    }
    Ok(())
}

/// `f(x^q) == quotient(x) * f(x)` at a handful of integer points.
fn pointwise_certificate(form: &MultiPoly, quotient: &MultiPoly, q: u32) -> bool {
    let nv = form.nvars();
    (0..6i64).all(|s| {
        let p: Vec<Rational> = (0..nv).map(|i| int((s * 7 + i as i64 * 3) % 5 - 2)).collect();
        let pq: Vec<Rational> = p.iter().map(|v| num_traits::pow(v.clone(), q as usize)).collect();
        form.eval(&pq) == quotient.eval(&p) * form.eval(&p)
    })
}

fn ac7() -> Check {
    for n in 1..=8usize {
        for k in 1..=n {
            let form = QuadricForm::shorthand(n, k).map_err(|e| e.to_string())?;
            let nonzero = form
                .matrix()
                .iter()
                .enumerate()
                .filter(|(i, r)| r[*i] != int(0))
                .count();
            ensure(nonzero == k + 1, || {
                format!("shorthand n={n} k={k} has {nonzero} nonzero entries")
            })?;
            for q in [2u32, 3] {
                let v = decide(&form, q).map_err(|e| e.to_string())?;
                ensure(v.admits == (k <= 3), || {
                    format!("decide n={n} k={k} q={q}: {}", v.admits)
                })?;
                if k >= 4 {
                    let inv = verify_invariance(&form.to_poly(), &MonomialMap::new(q, n + 1).unwrap())
                        .map_err(|e| e.to_string())?;
                    ensure(!inv.invariant && !inv.remainder.is_zero(), || {
                        format!("n={n} k={k} q={q} invariant")
                    })?;
                }
            }
        }
    }
    for k in 1..=3usize {
        for q in [2u32, 3, 5] {
            for n in k.max(3)..=6 {
                let w = witness_for_k(k, n, q).map_err(|e| e.to_string())?;
                let inv = verify_invariance(&w.form, &w.map).map_err(|e| e.to_string())?;
                let quotient = inv
                    .quotient
                    .clone()
                    .ok_or_else(|| format!("k={k} q={q}: no quotient"))?;
                let back = quotient.mul(&w.form).map_err(|e| e.to_string())?;
                ensure(back == inv.pulled_back, || {
                    format!("k={k} q={q}: back-multiplied quotient differs")
                })?;
                ensure(pointwise_certificate(&w.form, &quotient, q), || {
                    format!("k={k} q={q}: pointwise check")
                })?;
            }
        }
    }
    let mut state: u64 = 0x2545_f491_4f6c_dd1d;
    let mut next = |m: u64| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state % m
    };
    for trial in 0..20 {
        let len = 3 + next(6) as usize;
        let mut lambdas: Vec<Rational> = Vec::new();
        while lambdas.len() < len {
            let l = Rational::new((next(201) as i64 - 100).into(), (1 + next(9) as i64).into());
            if !lambdas.contains(&l) {
                lambdas.push(l);
            }
        }
        let i = next(len as u64) as usize;
        let p = pencil_projection(&lambdas, i).map_err(|e| format!("trial {trial}: {e}"))?;
        let diag_ok = (0..len - 1).all(|j| p.matrix()[j][j] != int(0));
        ensure(p.rank() == len - 1 && diag_ok, || {
            format!("trial {trial}: rank {}", p.rank())
        })?;
    }
    Ok(())
}

fn ac8() -> Check {
    for d in 1..=3u64 {
        for n in 3..=6usize {
            let c = del_pezzo_wps_consistency(n, d).map_err(|e| e.to_string())?;
            ensure(c.coprime && c.degree_ok && c.positivity.holds, || {
                format!("del Pezzo n={n} d={d}: {c:?}")
            })?;
            del_pezzo_lookup(n, d).map_err(|e| e.to_string())?;
        }
    }
    for n in 3..=12usize {
        let first: Vec<i64> = std::iter::repeat_n(1, n - 3).chain([0, 0]).collect();
        let second: Vec<i64> = std::iter::repeat_n(1, n - 2).chain([-1]).collect();
        let got = splitting_types_del_pezzo(n).map_err(|e| e.to_string())?;
        ensure(got == vec![first, second], || format!("n={n}: {got:?}"))?;
    }
    ensure(MukaiEntry::new(11).is_err(), || "genus 11 accepted".into())?;
    let mut subjects = Vec::new();
    for index in 1..=5u32 {
        for vmrt in [None, Some(0), Some(1)] {
            subjects.push(Subject::FanoFourfold { index, vmrt_dim: vmrt });
        }
    }
    for n in 3..=8usize {
        for d in 1..=8u64 {
            subjects.push(Subject::DelPezzo { n, d });
        }
        for genus in (2..=12u32).filter(|g| *g != 11) {
            subjects.push(Subject::Mukai { n, genus });
        }
        for k in 0..=n {
            subjects.push(Subject::Quadric { n, k });
        }
        for index in 1..=n + 1 {
            for rho in 1..=3u32 {
                subjects.push(Subject::Fano { n, index, rho });
            }
        }
    }
    let mut resolved = 0;
    for s in &subjects {
        if let Ok(v) = verdict(s) {
            let r = lookup_rule(v.rule.id).ok_or_else(|| format!("{s:?}: rule {} not in table", v.rule.id))?;
            ensure(!r.statement.is_empty(), || format!("{s:?}: empty citation"))?;
            resolved += 1;
        }
    }
    ensure(resolved > 0, || "no verdict resolved".into())?;
    let mut ids: Vec<&str> = RULES.iter().map(|r| r.id).collect();
    ids.sort();
    ids.dedup();
    ensure(ids.len() == RULES.len(), || "duplicate rule ids".into())
}

const SUITE: &str = r#"{
  "version": "1",
  "jobs": [
    {"kind": "chern", "weights": [1, 1, 1, 1, 1], "degree": 3, "twist": 2},
    {"kind": "chern", "weights": [3, 2, 1, 1, 1], "degree": 6, "twist": 5},
    {"kind": "positivity", "alias": "delpezzo:n=3,d=2"},
    {"kind": "bound", "x": "cubic3fold", "y": "cubic3fold", "u": 2, "m": 1},
    {"kind": "quadric", "ambientDim": 5, "paperK": 3, "q": 2},
    {"kind": "quadric", "ambientDim": 6, "paperK": 5, "q": 3},
    {"kind": "quadric", "lambdas": ["1/2", "-3", "7", "2"], "index": 1},
    {"kind": "classify", "subject": "delpezzo", "n": 4, "d": 5},
    {"kind": "classify", "query": "splitting-types", "n": 6},
    {"kind": "classify", "query": "wps-consistency", "n": 3, "d": 1},
    {"kind": "identity-check"}
  ]
}
"#;

fn run_batch(input: &std::path::Path, output: &std::path::Path) -> std::result::Result<(i32, Vec<u8>), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_fanobound"))
        .args(["batch", "--input"])
        .arg(input)
        .arg("--output")
        .arg(output)
        .status()
        .map_err(|e| e.to_string())?;
    let bytes = std::fs::read(output).map_err(|e| e.to_string())?;
    Ok((status.code().unwrap_or(-1), bytes))
}

fn ac9() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let input = dir.path().join("suite.json");
    std::fs::write(&input, SUITE).map_err(|e| e.to_string())?;
    let (c1, r1) = run_batch(&input, &dir.path().join("a.json"))?;
    let (c2, r2) = run_batch(&input, &dir.path().join("b.json"))?;
    ensure(c1 == 0 && c2 == 0, || format!("exit codes {c1}, {c2}"))?;
    ensure(r1 == r2, || "re-run differs".into())?;
    // Re-running the report's echoed inputs reproduces it.
    let (c3, r3) = run_batch(&dir.path().join("a.json"), &dir.path().join("c.json"))?;
    ensure(c3 == 0 && r3 == r1, || "report round trip differs".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("AC1 residue-series oracle agreement", ac1),
        ("AC2 residue sum vanishes", ac2),
        ("AC3 positivity margins", ac3),
        ("AC4 g-function properties", ac4),
        ("AC5 cubic threefold degree bound", ac5),
        ("AC6 Euler characteristics", ac6),
        ("AC7 quadric decision and certificates", ac7),
        ("AC8 classification consistency", ac8),
        ("AC9 deterministic batch reports", ac9),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(()) => println!("PASS {name}"),
            Err(e) => {
                failed += 1;
                println!("FAIL {name}: {e}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
