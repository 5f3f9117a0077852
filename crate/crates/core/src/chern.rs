//! Chern classes of twisted cotangent bundles of weighted hypersurfaces.
//!
//! For a smooth hypersurface `X` of degree `d` in `P(a_0, ..., a_{n+1})` the
//! total Chern class of `Ω_X(a)` is
//!
//! ```text
//!     ∏_i (1 + (a - a_i) h)  /  ((1 + (a - d) h) (1 + a h))
//! ```
//!
//! in the hyperplane class `h`. [`total_chern_series`] expands this as a
//! truncated series; [`top_chern_residue`] evaluates the coefficient of `h^n`
//! in closed form from the residues of the corresponding rational 1-form.
//! The two routes are independent and are cross-checked by the test suite
//! and by the `check-identities` command.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact::rational::{big, int, pow};
use crate::exact::{Rational, TruncSeries};

pub const RULE_PAPER_MODE: &str = "wps-hypersurface-shape";
pub const RULE_POSITIVITY: &str = "wps-positivity";
pub const RULE_GG: &str = "wps-global-generation";

/// Hypersurface of degree `degree` in the weighted projective space with the
/// given weights, stored in descending order. Smoothness is assumed, not
/// checked.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedHypersurface {
    weights: Vec<u64>,
    degree: u64,
}

impl WeightedHypersurface {
    /// Weights may be given in any order; at least three are required.
    pub fn new(mut weights: Vec<u64>, degree: u64) -> Result<Self> {
        if weights.len() < 3 {
            return Err(Error::usage(format!("need at least 3 weights, got {}", weights.len())));
        }
        if weights.contains(&0) {
            return Err(Error::usage("weights must be positive"));
        }
        if degree == 0 {
            return Err(Error::usage("degree must be positive"));
        }
        weights.sort_unstable_by(|a, b| b.cmp(a));
        Ok(WeightedHypersurface { weights, degree })
    }

    /// Ordinary hypersurface of degree `degree` in `P^(n+1)`.
    pub fn projective(n: usize, degree: u64) -> Result<Self> {
        Self::new(vec![1; n + 2], degree)
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn dimension(&self) -> usize {
        self.weights.len() - 2
    }

    /// Every subset of all-but-one weights has gcd 1.
    pub fn is_well_formed(&self) -> bool {
        (0..self.weights.len()).all(|skip| {
            self.weights
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .fold(0u64, |g, (_, &w)| g.gcd(&w))
                == 1
        })
    }

    /// Standard shape: `a_i = 1` for `i ≥ 2`, `gcd(a_0, a_1) = 1` and `n ≥ 2`.
    pub fn is_paper_mode(&self) -> bool {
        self.paper_mode_violation().is_none()
    }

    fn paper_mode_violation(&self) -> Option<String> {
        if self.dimension() < 2 {
            return Some(format!("dimension {} < 2", self.dimension()));
        }
        if let Some((i, w)) = self.weights.iter().enumerate().skip(2).find(|(_, &w)| w != 1) {
            return Some(format!(
                "weight a_{i} = {w} but all weights after the first two must be 1"
            ));
        }
        let (a0, a1) = (self.weights[0], self.weights[1]);
        if a0.gcd(&a1) != 1 {
            return Some(format!("a_0 = {a0} and a_1 = {a1} are not coprime"));
        }
        None
    }

    fn require_paper_mode(&self) -> Result<()> {
        match self.paper_mode_violation() {
            Some(msg) => Err(Error::hypothesis(RULE_PAPER_MODE, msg)),
            None => Ok(()),
        }
    }

    /// `a_0 + a_1`.
    pub fn leading_twist(&self) -> u64 {
        self.weights[0] + self.weights[1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub dimension: usize,
    pub dimension_at_least_two: bool,
    pub well_formed: bool,
    pub paper_mode: bool,
    /// Reason the standard shape fails, if it does.
    pub paper_mode_violation: Option<String>,
    /// `d ≥ a_0 + a_1 + 1`; only meaningful for the standard shape.
    pub positivity_degree_ok: bool,
    /// `d == a_0 + a_1 + 1`.
    pub positivity_degree_boundary: bool,
}

impl ValidationReport {
    pub fn ok(&self, strict_paper_mode: bool) -> bool {
        let base = self.well_formed && self.dimension_at_least_two;
        if strict_paper_mode {
            base && self.paper_mode && self.positivity_degree_ok
        } else {
            base
        }
    }
}

pub fn validate(x: &WeightedHypersurface) -> ValidationReport {
    let violation = x.paper_mode_violation();
    let bound = x.leading_twist() + 1;
    ValidationReport {
        dimension: x.dimension(),
        dimension_at_least_two: x.dimension() >= 2,
        well_formed: x.is_well_formed(),
        paper_mode: violation.is_none(),
        paper_mode_violation: violation,
        positivity_degree_ok: x.degree >= bound,
        positivity_degree_boundary: x.degree == bound,
    }
}

/// Total Chern class of `Ω_X(a)` as a series in `h` modulo `h^(n+1)`.
pub fn total_chern_series(x: &WeightedHypersurface, a: i64) -> TruncSeries {
    let n = x.dimension();
    let numerator = x
        .weights
        .iter()
        .map(|&w| TruncSeries::linear(n, int(a - w as i64)))
        .fold(TruncSeries::one(n), |acc, f| acc.mul(&f).expect("same order"));
    let pole_twist = TruncSeries::linear(n, int(a - x.degree as i64));
    let pole_plain = TruncSeries::linear(n, int(a));
    // Linear factors have constant term 1, so both inverses exist.
    let inv = pole_twist
        .mul(&pole_plain)
        .and_then(|den| den.inv())
        .expect("constant term 1");
    numerator.mul(&inv).expect("same order")
}

fn check_residue_applicable(x: &WeightedHypersurface, a: i64) -> Result<()> {
    x.require_paper_mode()?;
    if a == 0 {
        return Err(Error::FormulaInapplicable("twist a = 0".into()));
    }
    if a == x.degree as i64 {
        return Err(Error::FormulaInapplicable(format!(
            "twist a equals degree d = {}",
            x.degree
        )));
    }
    Ok(())
}

fn prod_shifted(weights: &[u64], base: i64) -> BigInt {
    weights
        .iter()
        .map(|&w| BigInt::from(base - w as i64))
        .fold(BigInt::one(), |acc, v| acc * v)
}

fn prod_weights(weights: &[u64]) -> BigInt {
    weights.iter().fold(BigInt::one(), |acc, &w| acc * BigInt::from(w))
}

/// Coefficient of `h^n` in `c(Ω_X(a))` from the residue closed form
///
/// ```text
///     [d ∏(a - a_i) - a ∏(d - a_i) + (-1)^(n+1) (d - a) ∏ a_i] / [a d (a - d)]
/// ```
///
/// Requires standard-shape weights, `a ≠ 0` and `a ≠ d`.
pub fn top_chern_residue(x: &WeightedHypersurface, a: i64) -> Result<Rational> {
    check_residue_applicable(x, a)?;
    let n = x.dimension();
    let d = x.degree as i64;
    let sign = if (n + 1).is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let num = BigInt::from(d) * prod_shifted(&x.weights, a) - BigInt::from(a) * prod_shifted(&x.weights, d)
        + sign * BigInt::from(d - a) * prod_weights(&x.weights);
    let den = BigInt::from(a) * BigInt::from(d) * BigInt::from(a - d);
    Ok(Rational::new(num, den))
}

/// The four residues of `ω = c(Ω_X(a))(x) dx / x^(n+1)` on the Riemann sphere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueBreakdown {
    pub at_infinity: Rational,
    /// Residue at `x = 1/(d - a)`.
    pub at_twist_pole: Rational,
    /// Residue at `x = -1/a`.
    pub at_plain_pole: Rational,
    /// Residue at the origin, read off the series expansion.
    pub at_origin: Rational,
    pub sum: Rational,
}

/// Evaluates the three closed-form residues and takes the residue at the
/// origin from [`total_chern_series`]; `sum` must be exactly zero.
pub fn residue_sum_check(x: &WeightedHypersurface, a: i64) -> Result<ResidueBreakdown> {
    check_residue_applicable(x, a)?;
    let n = x.dimension();
    let d = x.degree as i64;
    let at_infinity = Rational::new(prod_shifted(&x.weights, a), BigInt::from((d - a) * a));
    let at_twist_pole = Rational::new(prod_shifted(&x.weights, d), BigInt::from((a - d) * d));
    let sign = if (n + 1).is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let at_plain_pole = Rational::new(sign * prod_weights(&x.weights), BigInt::from(a * d));
    let at_origin = total_chern_series(x, a).coeff(n);
    let sum = &at_infinity + &at_twist_pole + &at_plain_pole + &at_origin;
    Ok(ResidueBreakdown {
        at_infinity,
        at_twist_pole,
        at_plain_pole,
        at_origin,
        sum,
    })
}

/// `H^n = d / ∏ a_i`.
pub fn hyperplane_power(x: &WeightedHypersurface) -> Result<Rational> {
    if !x.is_well_formed() {
        return Err(Error::hypothesis(
            "wps-well-formed",
            format!("weights {:?} are not well-formed", x.weights),
        ));
    }
    Ok(Rational::new(BigInt::from(x.degree), prod_weights(&x.weights)))
}

/// `c_j(Ω_X) · H^(n-j)` for `j = 1..=n`.
pub fn chern_numbers(x: &WeightedHypersurface) -> Result<Vec<Rational>> {
    let hn = hyperplane_power(x)?;
    let series = total_chern_series(x, 0);
    Ok(series.coeffs()[1..].iter().map(|c| c * &hn).collect())
}

/// Topological Euler characteristic `c_n(T_X) = (-1)^n c_n(Ω_X)`.
pub fn euler_characteristic(x: &WeightedHypersurface) -> Result<Rational> {
    let top = chern_numbers(x)?.pop().expect("dimension ≥ 1");
    Ok(if x.dimension().is_multiple_of(2) { top } else { -top })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernReport {
    pub twist: i64,
    pub series: TruncSeries,
    pub top_coefficient: Rational,
    pub h_power: Rational,
    pub top_number: Rational,
}

pub fn chern_report(x: &WeightedHypersurface, a: i64) -> Result<ChernReport> {
    let series = total_chern_series(x, a);
    let top_coefficient = series.coeff(x.dimension());
    let h_power = hyperplane_power(x)?;
    let top_number = &top_coefficient * &h_power;
    Ok(ChernReport {
        twist: a,
        series,
        top_coefficient,
        h_power,
        top_number,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Positivity {
    pub twist: u64,
    pub top_coefficient: Rational,
    pub threshold: Rational,
    pub margin: Rational,
    pub holds: bool,
}

/// `c_n(Ω_X(a_0+a_1)) - (a_0+a_1)^n` as a multiple of `H^n`. Requires the
/// standard shape and `d ≥ a_0 + a_1 + 1`; under those hypotheses the margin is
/// positive.
pub fn wps_positivity(x: &WeightedHypersurface) -> Result<Positivity> {
    x.require_paper_mode()?;
    let a = x.leading_twist();
    if x.degree < a + 1 {
        return Err(Error::hypothesis(
            RULE_POSITIVITY,
            format!("degree d = {} < a_0 + a_1 + 1 = {}", x.degree, a + 1),
        ));
    }
    let top_coefficient = top_chern_residue(x, a as i64)?;
    let threshold = pow(&int(a as i64), x.dimension() as u32);
    let margin = &top_coefficient - &threshold;
    Ok(Positivity {
        twist: a,
        holds: margin.is_positive(),
        top_coefficient,
        threshold,
        margin,
    })
}

/// `g(x) = a (x-1)^n - x (a-1)^n - (x - a)`; increasing for `x ≥ a + 1`.
pub fn g_value(a: i64, n: u32, x: i64) -> Rational {
    let a_b = BigInt::from(a);
    let x_b = BigInt::from(x);
    let v = &a_b * num_traits::pow(&x_b - 1, n as usize) - &x_b * num_traits::pow(&a_b - 1, n as usize) - (&x_b - &a_b);
    big(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlobalGeneration {
    GloballyGenerated,
    GgAwayFromFinitePoints,
}

/// Global generation of `Ω_X(a_0 + a_1)`: everywhere when `a_1 = 1`, away
/// from finitely many points when `a_1 > 1`.
pub fn gg_classify(x: &WeightedHypersurface) -> Result<GlobalGeneration> {
    x.require_paper_mode()?;
    if !x.is_well_formed() {
        return Err(Error::hypothesis(RULE_GG, "hypersurface is not well-formed"));
    }
    Ok(if x.weights[1] == 1 {
        GlobalGeneration::GloballyGenerated
    } else {
        GlobalGeneration::GgAwayFromFinitePoints
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::frac;
    use num_traits::Zero;

    fn wh(w: &[u64], d: u64) -> WeightedHypersurface {
        WeightedHypersurface::new(w.to_vec(), d).unwrap()
    }

    /// Series coefficients by integer polynomial expansion followed by the
    /// division recurrence `b_j = a_j - c·b_(j-1)` for each pole factor.
    fn oracle_series(w: &[u64], d: u64, a: i64) -> Vec<Rational> {
        let n = w.len() - 2;
        let mut num = vec![int(0); n + 1];
        num[0] = int(1);
        for &wi in w {
            let c = int(a - wi as i64);
            for j in (1..=n).rev() {
                let prev = num[j - 1].clone();
                num[j] += &c * prev;
            }
        }
        for c in [a - d as i64, a] {
            let c = int(c);
            let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
            for j in 0..=n {
                let v = if j == 0 {
                    num[0].clone()
                } else {
                    &num[j] - &c * &out[j - 1]
                };
                out.push(v);
            }
            num = out;
        }
        num
    }

    #[test]
    fn validation_examples() {
        let cubic = validate(&wh(&[1, 1, 1, 1, 1], 3));
        assert!(cubic.well_formed && cubic.paper_mode && cubic.ok(true));
        let sextic = validate(&wh(&[3, 2, 1, 1, 1], 6));
        assert!(sextic.well_formed && sextic.paper_mode && sextic.positivity_degree_boundary);
        let curve = validate(&wh(&[2, 2, 1], 4));
        assert!(!curve.well_formed);
        assert!(!curve.dimension_at_least_two);
        let not_coprime = validate(&wh(&[4, 2, 1, 1, 1], 8));
        assert!(not_coprime.well_formed && !not_coprime.paper_mode);
    }

    #[test]
    fn weights_are_sorted_descending() {
        assert_eq!(wh(&[1, 3, 1, 2, 1], 6).weights(), &[3, 2, 1, 1, 1]);
        assert!(WeightedHypersurface::new(vec![1, 0, 1], 2).is_err());
        assert!(WeightedHypersurface::new(vec![1, 1], 2).is_err());
    }

    #[test]
    fn series_examples() {
        let cubic = wh(&[1, 1, 1, 1, 1], 3);
        assert_eq!(total_chern_series(&cubic, 2).coeff(3), int(10));
        assert_eq!(
            total_chern_series(&cubic, 0),
            TruncSeries::from_coeffs(3, [int(1), int(-2), int(4), int(2)])
        );
        assert_eq!(total_chern_series(&cubic, 3).coeff(0), int(1));
        for (w, d, a) in [
            (&[1u64, 1, 1, 1, 1][..], 3u64, 2i64),
            (&[2, 1, 1, 1, 1], 4, 3),
            (&[3, 2, 1, 1, 1], 6, 5),
            (&[7, 3, 1, 1], 2, -4),
        ] {
            assert_eq!(total_chern_series(&wh(w, d), a).coeffs(), oracle_series(w, d, a));
        }
    }

    #[test]
    fn residue_examples() {
        assert_eq!(top_chern_residue(&wh(&[1, 1, 1, 1, 1], 3), 2).unwrap(), int(10));
        assert_eq!(top_chern_residue(&wh(&[2, 1, 1, 1, 1], 4), 3).unwrap(), int(35));
        assert_eq!(top_chern_residue(&wh(&[3, 2, 1, 1, 1], 6), 5).unwrap(), int(173));
        assert_eq!(oracle_series(&[2, 1, 1, 1, 1], 4, 3)[3], int(35));
        assert_eq!(oracle_series(&[3, 2, 1, 1, 1], 6, 5)[3], int(173));
    }

    #[test]
    fn residue_inapplicable() {
        let cubic = wh(&[1, 1, 1, 1, 1], 3);
        assert!(matches!(
            top_chern_residue(&cubic, 3),
            Err(Error::FormulaInapplicable(_))
        ));
        assert!(matches!(
            top_chern_residue(&cubic, 0),
            Err(Error::FormulaInapplicable(_))
        ));
        assert!(matches!(
            top_chern_residue(&wh(&[2, 2, 1, 1, 1], 5), 4),
            Err(Error::Hypothesis { .. })
        ));
    }

    #[test]
    fn residue_breakdown_for_cubic() {
        let r = residue_sum_check(&wh(&[1, 1, 1, 1, 1], 3), 2).unwrap();
        assert_eq!(r.at_infinity, frac(1, 2));
        assert_eq!(r.at_twist_pole, frac(-32, 3));
        assert_eq!(r.at_plain_pole, frac(1, 6));
        assert_eq!(r.at_origin, int(10));
        assert!(r.sum.is_zero());
        assert!(residue_sum_check(&wh(&[2, 1, 1, 1, 1], 4), 3).unwrap().sum.is_zero());
    }

    #[test]
    fn hyperplane_powers() {
        assert_eq!(hyperplane_power(&wh(&[1, 1, 1, 1, 1], 3)).unwrap(), int(3));
        assert_eq!(hyperplane_power(&wh(&[3, 2, 1, 1, 1], 6)).unwrap(), int(1));
        assert_eq!(hyperplane_power(&wh(&[2, 1, 1, 1, 1], 4)).unwrap(), int(2));
        assert!(hyperplane_power(&wh(&[2, 2, 1], 4)).is_err());
    }

    #[test]
    fn chern_number_examples() {
        let cubic = chern_numbers(&wh(&[1, 1, 1, 1, 1], 3)).unwrap();
        assert_eq!(cubic, vec![int(-6), int(12), int(6)]);
        let quintic = wh(&[1, 1, 1, 1, 1], 5);
        assert_eq!(chern_numbers(&quintic).unwrap()[2], int(200));
        assert_eq!(euler_characteristic(&quintic).unwrap(), int(-200));
        assert_eq!(chern_numbers(&wh(&[1, 1, 1, 1], 4)).unwrap()[1], int(24));
    }

    #[test]
    fn positivity_examples() {
        for (w, d, margin) in [
            (&[1u64, 1, 1, 1, 1][..], 3u64, 2i64),
            (&[2, 1, 1, 1, 1], 4, 8),
            (&[3, 2, 1, 1, 1], 6, 48),
        ] {
            let p = wps_positivity(&wh(w, d)).unwrap();
            assert_eq!(p.margin, int(margin));
            assert!(p.holds);
        }
        let err = wps_positivity(&wh(&[1, 1, 1, 1, 1], 2)).unwrap_err();
        assert!(err.is_hypothesis());
        assert!(wps_positivity(&wh(&[2, 2, 1, 1, 1], 9)).unwrap_err().is_hypothesis());
    }

    #[test]
    fn g_examples() {
        assert_eq!(g_value(2, 2, 3), int(4));
        assert_eq!(g_value(2, 3, 3), int(16 - 3 - 1));
        for a in 2..8 {
            assert!(g_value(a, 4, a).is_zero());
        }
    }

    #[test]
    fn gg_examples() {
        use GlobalGeneration::*;
        assert_eq!(gg_classify(&wh(&[2, 1, 1, 1, 1], 4)).unwrap(), GloballyGenerated);
        assert_eq!(gg_classify(&wh(&[3, 2, 1, 1, 1], 6)).unwrap(), GgAwayFromFinitePoints);
        assert_eq!(gg_classify(&wh(&[1, 1, 1, 1, 1], 3)).unwrap(), GloballyGenerated);
        assert!(gg_classify(&wh(&[2, 2, 2, 1], 4)).is_err());
    }
}
