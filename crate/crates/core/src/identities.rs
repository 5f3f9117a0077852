//! Exhaustive desk-scale checks of the Chern identities over a grid of
//! weighted hypersurfaces of standard shape.

use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use crate::chern::{
    g_value, residue_sum_check, top_chern_residue, total_chern_series, wps_positivity, WeightedHypersurface,
};
use crate::error::{Error, Result};
use crate::exact::rational::{int, pow};
use crate::exact::Rational;

pub const MAX_A0: u64 = 12;
pub const MAX_DIM: usize = 16;
pub const MAX_DEGREE: u64 = 24;
pub const MAX_EXTRA_TWIST: i64 = 12;
pub const MAX_G_PARAM: i64 = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub max_a0: u64,
    pub max_dim: usize,
    pub max_degree: u64,
    /// Twists `1..=max_extra_twist` are checked besides `a_0 + a_1`.
    pub max_extra_twist: i64,
    /// Keep only points with `d == a`.
    pub only_degree_equals_twist: bool,
    pub g_max_a: i64,
    pub g_max_n: u32,
    pub g_max_x: i64,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            max_a0: 6,
            max_dim: 10,
            max_degree: 12,
            max_extra_twist: 6,
            only_degree_equals_twist: false,
            g_max_a: 20,
            g_max_n: 10,
            g_max_x: 50,
        }
    }
}

impl Grid {
    pub fn check_caps(&self) -> Result<()> {
        let bad = |what: &str, v: i64, cap: i64| Err(Error::usage(format!("{what} = {v} outside 1..={cap}")));
        if !(1..=MAX_A0).contains(&self.max_a0) {
            return bad("max_a0", self.max_a0 as i64, MAX_A0 as i64);
        }
        if !(2..=MAX_DIM).contains(&self.max_dim) {
            return bad("max_dim", self.max_dim as i64, MAX_DIM as i64);
        }
        if !(1..=MAX_DEGREE).contains(&self.max_degree) {
            return bad("max_degree", self.max_degree as i64, MAX_DEGREE as i64);
        }
        if !(0..=MAX_EXTRA_TWIST).contains(&self.max_extra_twist) {
            return bad("max_extra_twist", self.max_extra_twist, MAX_EXTRA_TWIST);
        }
        if !(2..=MAX_G_PARAM).contains(&self.g_max_a)
            || !(2..=MAX_G_PARAM as u32).contains(&self.g_max_n)
            || !(1..=MAX_G_PARAM).contains(&self.g_max_x)
        {
            return Err(Error::usage(format!("g-function bounds must lie in 2..={MAX_G_PARAM}")));
        }
        Ok(())
    }

    /// Standard-shape hypersurfaces of the grid, in a fixed order.
    pub fn hypersurfaces(&self) -> Vec<WeightedHypersurface> {
        let mut out = Vec::new();
        for a0 in 1..=self.max_a0 {
            for a1 in (1..=a0).filter(|a1| a0.gcd(a1) == 1) {
                for n in 2..=self.max_dim {
                    for d in 1..=self.max_degree {
                        let mut w = vec![a0, a1];
                        w.extend(std::iter::repeat_n(1, n));
                        out.push(WeightedHypersurface::new(w, d).expect("grid weights are positive"));
                    }
                }
            }
        }
        out
    }

    fn twists(&self, x: &WeightedHypersurface) -> Vec<i64> {
        let mut t: Vec<i64> = (1..=self.max_extra_twist).collect();
        let lead = x.leading_twist() as i64;
        if !t.contains(&lead) {
            t.push(lead);
        }
        t
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub suite: &'static str,
    pub weights: Vec<u64>,
    pub degree: u64,
    pub twist: i64,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteCount {
    pub checked: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Summary {
    pub hypersurfaces: u64,
    pub points: u64,
    /// Points with `d == a`, where the residue form does not apply.
    pub skipped_formula_inapplicable: u64,
    pub oracle: SuiteCount,
    pub residue_sum: SuiteCount,
    pub whitney: SuiteCount,
    pub positivity: SuiteCount,
    pub g_function: SuiteCount,
    pub first_counterexample: Option<Counterexample>,
}

impl Summary {
    pub fn counterexamples(&self) -> u64 {
        self.oracle.failed
            + self.residue_sum.failed
            + self.whitney.failed
            + self.positivity.failed
            + self.g_function.failed
    }

    fn absorb(&mut self, other: Summary) {
        self.hypersurfaces += other.hypersurfaces;
        self.points += other.points;
        self.skipped_formula_inapplicable += other.skipped_formula_inapplicable;
        for (a, b) in [
            (&mut self.oracle, other.oracle),
            (&mut self.residue_sum, other.residue_sum),
            (&mut self.whitney, other.whitney),
            (&mut self.positivity, other.positivity),
            (&mut self.g_function, other.g_function),
        ] {
            a.checked += b.checked;
            a.failed += b.failed;
        }
        if self.first_counterexample.is_none() {
            self.first_counterexample = other.first_counterexample;
        }
    }

    fn record(&mut self, suite: &'static str, ok: bool, cx: impl FnOnce() -> Counterexample) {
        let count = match suite {
            "oracle" => &mut self.oracle,
            "residue-sum" => &mut self.residue_sum,
            "whitney" => &mut self.whitney,
            "positivity" => &mut self.positivity,
            _ => &mut self.g_function,
        };
        count.checked += 1;
        if !ok {
            count.failed += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(cx());
            }
        }
    }
}

fn check_hypersurface(grid: &Grid, x: &WeightedHypersurface) -> Summary {
    let mut s = Summary {
        hypersurfaces: 1,
        ..Summary::default()
    };
    let n = x.dimension();
    let d = x.degree() as i64;
    let base = total_chern_series(x, 0);
    let cx = |suite, twist, detail: String| Counterexample {
        suite,
        weights: x.weights().to_vec(),
        degree: x.degree(),
        twist,
        detail,
    };
    for a in grid.twists(x) {
        if grid.only_degree_equals_twist && a != d {
            continue;
        }
        s.points += 1;
        if a == d {
            s.skipped_formula_inapplicable += 1;
            continue;
        }
        let series = total_chern_series(x, a);
        let top = series.coeff(n);
        match top_chern_residue(x, a) {
            Ok(r) => s.record("oracle", r == top, || {
                cx("oracle", a, format!("residue {r} != series {top}"))
            }),
            Err(e) => s.record("oracle", false, || cx("oracle", a, e.to_string())),
        }
        match residue_sum_check(x, a) {
            Ok(b) => s.record("residue-sum", b.sum.is_zero(), || {
                cx("residue-sum", a, format!("sum {}", b.sum))
            }),
            Err(e) => s.record("residue-sum", false, || cx("residue-sum", a, e.to_string())),
        }
        let u = int(a);
        let whitney = (0..=n).fold(Rational::zero(), |acc, i| acc + base.coeff(n - i) * pow(&u, i as u32));
        s.record("whitney", whitney == top, || {
            cx("whitney", a, format!("twist sum {whitney} != series {top}"))
        });
    }
    if !grid.only_degree_equals_twist && x.degree() > x.leading_twist() {
        let a = x.leading_twist() as i64;
        match wps_positivity(x) {
            Ok(p) => s.record("positivity", p.holds, || {
                cx("positivity", a, format!("margin {}", p.margin))
            }),
            Err(e) => s.record("positivity", false, || cx("positivity", a, e.to_string())),
        }
    }
    s
}

fn check_g(grid: &Grid) -> Summary {
    let mut s = Summary::default();
    let cx = |detail: String| Counterexample {
        suite: "g-function",
        weights: Vec::new(),
        degree: 0,
        twist: 0,
        detail,
    };
    for a in 2..=grid.g_max_a {
        for n in 2..=grid.g_max_n {
            let at = g_value(a, n, a + 1);
            let closed = pow(&int(a), n + 1) - int(a + 1) * pow(&int(a - 1), n) - int(1);
            let ok = at == closed && at > Rational::zero();
            s.record("g-function", ok, || cx(format!("g(a+1) = {at} at a = {a}, n = {n}")));
            let mut prev = at;
            for x in a + 1..=grid.g_max_x {
                let next = g_value(a, n, x + 1);
                let ok = next > prev;
                s.record("g-function", ok, || {
                    cx(format!("g not increasing at a = {a}, n = {n}, x = {x}"))
                });
                prev = next;
            }
        }
    }
    s
}

pub fn check_identities(grid: &Grid) -> Result<Summary> {
    grid.check_caps()?;
    let parts: Vec<Summary> = grid
        .hypersurfaces()
        .par_iter()
        .map(|x| check_hypersurface(grid, x))
        .collect();
    let mut total = Summary::default();
    for p in parts {
        total.absorb(p);
    }
    if !grid.only_degree_equals_twist {
        total.absorb(check_g(grid));
    }
    Ok(total)
}
