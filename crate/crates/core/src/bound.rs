//! Degree bound for finite morphisms `Y → X` between Picard-number-one
//! varieties.
//!
//! If `f^*H_X ≡ m H_Y`, pulling back a twisted cotangent bundle gives
//!
//! ```text
//!     m^n H_Y^n L_X(u)  ≤  H_X^n Σ_{i<n} c_{n-i}(Ω_Y) H_Y^i u^i m^i
//! ```
//!
//! where `L_X(u) = Σ_{i<n} c_{n-i}(Ω_X) H_X^i u^i`. When `L_X(u) > 0` the left
//! side has higher degree in `m`, so only finitely many `m` satisfy it; the
//! degree of `f` is then at most `floor(m_max^n H_Y^n / H_X^n)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::chern::{self, WeightedHypersurface};
use crate::error::{Error, Result};
use crate::exact::rational::{ceil, floor, int, pow};
use crate::exact::Rational;

pub const RULE_LHS_POSITIVE: &str = "degree-bound-lhs-positive";

/// Guard against pathological inputs whose root bound is astronomically large.
pub const MAX_SCAN: u64 = 1_000_000;

/// Intersection data of a Picard-number-one variety with ample generator `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyInvariants {
    dimension: usize,
    h_power: Rational,
    /// `chern[j-1] = c_j(Ω) · H^(n-j)` for `j = 1..=n`.
    chern: Vec<Rational>,
}

impl VarietyInvariants {
    pub fn new(dimension: usize, h_power: Rational, chern_numbers: Vec<Rational>) -> Result<Self> {
        if dimension < 2 {
            return Err(Error::usage(format!("dimension must be at least 2, got {dimension}")));
        }
        if !h_power.is_positive() {
            return Err(Error::usage("H^n must be positive"));
        }
        if chern_numbers.len() != dimension {
            return Err(Error::usage(format!(
                "expected {dimension} Chern numbers, got {}",
                chern_numbers.len()
            )));
        }
        Ok(VarietyInvariants {
            dimension,
            h_power,
            chern: chern_numbers,
        })
    }

    pub fn from_hypersurface(x: &WeightedHypersurface) -> Result<Self> {
        Self::new(x.dimension(), chern::hyperplane_power(x)?, chern::chern_numbers(x)?)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn h_power(&self) -> &Rational {
        &self.h_power
    }

    pub fn chern_numbers(&self) -> &[Rational] {
        &self.chern
    }

    /// `c_j(Ω)·H^(n-j)`, with `c_0` giving `H^n`.
    pub fn c(&self, j: usize) -> Rational {
        if j == 0 {
            self.h_power.clone()
        } else {
            self.chern[j - 1].clone()
        }
    }

    /// `c_n(Ω(tH)) = Σ_{i=0}^{n} c_{n-i}(Ω) H^i t^i`.
    pub fn twisted_top_chern(&self, t: &Rational) -> Rational {
        (0..=self.dimension)
            .map(|i| self.c(self.dimension - i) * pow(t, i as u32))
            .fold(Rational::zero(), |a, b| a + b)
    }
}

/// `Σ_{i=0}^{n-1} c_{n-i}(Ω_X) H^i u^i`, i.e. `c_n(Ω_X(uH)) - u^n H^n`.
pub fn lhs_constant(x: &VarietyInvariants, u: u64) -> Rational {
    let n = x.dimension;
    let u = int(u as i64);
    (0..n)
        .map(|i| x.c(n - i) * pow(&u, i as u32))
        .fold(Rational::zero(), |a, b| a + b)
}

/// Both sides of the pulled-back inequality at one value of `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub m: u64,
    pub lhs: Rational,
    pub rhs: Rational,
    pub feasible: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundStatus {
    Bounded,
    /// No `m ≥ 1` satisfies the inequality.
    NoCompatibleMorphism,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundResult {
    pub status: BoundStatus,
    pub u: u64,
    pub lhs_constant: Rational,
    /// Coefficients of `LHS(m) - RHS(m)`, constant term first.
    pub difference_poly: Vec<Rational>,
    /// Scan ceiling; every `m > cap` is infeasible.
    pub cap: u64,
    pub feasible: Vec<u64>,
    pub m_max: Option<u64>,
    pub degree_bound: Option<BigInt>,
    /// Evaluations at every feasible `m` and at `m_max + 1`.
    pub evaluations: Vec<Evaluation>,
}

struct Inequality {
    /// `m^n H_Y^n L_X(u)`: only the leading coefficient.
    lead: Rational,
    /// `H_X^n c_{n-i}(Ω_Y) H_Y^i u^i`, index `i`.
    rhs: Vec<Rational>,
    n: usize,
}

impl Inequality {
    fn new(x: &VarietyInvariants, y: &VarietyInvariants, u: u64, lhs: &Rational) -> Self {
        let n = x.dimension;
        let uu = int(u as i64);
        let rhs = (0..n).map(|i| x.h_power() * y.c(n - i) * pow(&uu, i as u32)).collect();
        Inequality {
            lead: y.h_power() * lhs,
            rhs,
            n,
        }
    }

    fn eval(&self, m: u64) -> Evaluation {
        let mm = int(m as i64);
        let lhs = &self.lead * pow(&mm, self.n as u32);
        let rhs = self
            .rhs
            .iter()
            .enumerate()
            .map(|(i, c)| c * pow(&mm, i as u32))
            .fold(Rational::zero(), |a, b| a + b);
        Evaluation {
            m,
            feasible: lhs <= rhs,
            lhs,
            rhs,
        }
    }

    fn difference(&self) -> Vec<Rational> {
        let mut p: Vec<Rational> = self.rhs.iter().map(|c| -c.clone()).collect();
        p.push(self.lead.clone());
        p
    }
}

/// `1 + max_i |p_i / p_n|`, a bound on the absolute value of every root.
pub fn cauchy_root_bound(coeffs: &[Rational]) -> Rational {
    let (lead, rest) = coeffs.split_last().expect("nonempty polynomial");
    let max = rest
        .iter()
        .map(|c| (c / lead).abs())
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    Rational::one() + max
}

fn check_dims(x: &VarietyInvariants, y: &VarietyInvariants) -> Result<()> {
    if x.dimension != y.dimension {
        return Err(Error::usage(format!(
            "dimensions differ: X has {}, Y has {}",
            x.dimension, y.dimension
        )));
    }
    Ok(())
}

/// Scans every `m` in `1..=cap` and reports the feasible set, its maximum
/// and the resulting degree bound.
pub fn degree_bound(x: &VarietyInvariants, y: &VarietyInvariants, u: u64) -> Result<BoundResult> {
    check_dims(x, y)?;
    if u == 0 {
        return Err(Error::usage("twist u must be positive"));
    }
    let lhs = lhs_constant(x, u);
    if !lhs.is_positive() {
        return Err(Error::hypothesis(
            RULE_LHS_POSITIVE,
            format!("c_n(Ω_X(uH)) - u^n H^n = {lhs} is not positive for u = {u}"),
        ));
    }
    let ineq = Inequality::new(x, y, u, &lhs);
    let difference_poly = ineq.difference();
    let bound = cauchy_root_bound(&difference_poly);
    let cap_r = Rational::one()
        + if bound > Rational::one() {
            bound
        } else {
            Rational::one()
        };
    let cap_big = ceil(&cap_r);
    let cap: u64 = u64::try_from(&cap_big)
        .ok()
        .filter(|&c| c <= MAX_SCAN)
        .ok_or_else(|| Error::usage(format!("root bound {cap_big} exceeds scan limit {MAX_SCAN}")))?;

    let scanned: Vec<Evaluation> = (1..=cap).map(|m| ineq.eval(m)).collect();
    let feasible: Vec<u64> = scanned.iter().filter(|e| e.feasible).map(|e| e.m).collect();
    let m_max = feasible.last().copied();
    let mut evaluations: Vec<Evaluation> = scanned.iter().filter(|e| e.feasible).cloned().collect();
    let (status, degree_bound) = match m_max {
        Some(m) => {
            evaluations.push(ineq.eval(m + 1));
            let deg = pow(&int(m as i64), x.dimension as u32) * y.h_power() / x.h_power();
            (BoundStatus::Bounded, Some(floor(&deg)))
        }
        None => (BoundStatus::NoCompatibleMorphism, None),
    };
    Ok(BoundResult {
        status,
        u,
        lhs_constant: lhs,
        difference_poly,
        cap,
        feasible,
        m_max,
        degree_bound,
        evaluations,
    })
}

/// Evaluates `deg · c_n(Ω_X(uH_X)) ≤ c_n(Ω_Y(u m H_Y))` for a hypothetical
/// morphism of degree `deg` with `f^*H_X ≡ m H_Y`.
pub fn arv_inequality_check(x: &VarietyInvariants, y: &VarietyInvariants, u: u64, m: u64, deg: u64) -> Result<bool> {
    check_dims(x, y)?;
    let n = x.dimension as u32;
    let lhs_deg = int(deg as i64) * x.h_power();
    let rhs_deg = pow(&int(m as i64), n) * y.h_power();
    if lhs_deg != rhs_deg {
        return Err(Error::usage(format!(
            "degree {deg} is incompatible with pullback multiple {m}: deg·H_X^n = {lhs_deg}, m^n·H_Y^n = {rhs_deg}"
        )));
    }
    let left = int(deg as i64) * x.twisted_top_chern(&int(u as i64));
    let right = y.twisted_top_chern(&int((u * m) as i64));
    Ok(left <= right)
}

/// Degree implied by a pullback multiple: `m^n H_Y^n / H_X^n` when integral.
pub fn implied_degree(x: &VarietyInvariants, y: &VarietyInvariants, m: u64) -> Option<u64> {
    let deg = pow(&int(m as i64), x.dimension as u32) * y.h_power() / x.h_power();
    deg.is_integer().then(|| u64::try_from(deg.to_integer()).ok()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic() -> VarietyInvariants {
        VarietyInvariants::new(3, int(3), vec![int(-6), int(12), int(6)]).unwrap()
    }

    fn k3() -> VarietyInvariants {
        VarietyInvariants::new(2, int(4), vec![int(0), int(24)]).unwrap()
    }

    #[test]
    fn lhs_examples() {
        assert_eq!(lhs_constant(&cubic(), 2), int(6));
        assert_eq!(lhs_constant(&cubic(), 1), int(12));
        assert_eq!(lhs_constant(&cubic(), 0), int(6));
        // c_3(Ω(2H)) - 8 H^3 = 30 - 24.
        assert_eq!(cubic().twisted_top_chern(&int(2)), int(30));
    }

    #[test]
    fn cubic_self_bound() {
        let r = degree_bound(&cubic(), &cubic(), 2).unwrap();
        assert_eq!(r.status, BoundStatus::Bounded);
        assert_eq!(r.m_max, Some(1));
        assert_eq!(r.degree_bound, Some(BigInt::from(1)));
        assert_eq!(r.evaluations[0].lhs, int(18));
        assert_eq!(r.evaluations[0].rhs, int(18));
        assert_eq!(r.evaluations[1].lhs, int(144));
        assert_eq!(r.evaluations[1].rhs, int(-126));
    }

    #[test]
    fn k3_fixture() {
        let r = degree_bound(&k3(), &k3(), 2).unwrap();
        assert_eq!(r.lhs_constant, int(24));
        assert_eq!(r.feasible, vec![1]);
        assert_eq!(r.degree_bound, Some(BigInt::from(1)));
        assert_eq!(r.cap, 3);
    }

    #[test]
    fn nonpositive_lhs_is_hypothesis_error() {
        // c_1 large and negative makes L(u) negative.
        let x = VarietyInvariants::new(2, int(1), vec![int(-10), int(1)]).unwrap();
        assert!(degree_bound(&x, &x, 1).unwrap_err().is_hypothesis());
    }

    #[test]
    fn arv_examples() {
        assert!(arv_inequality_check(&cubic(), &cubic(), 2, 1, 1).unwrap());
        assert!(!arv_inequality_check(&cubic(), &cubic(), 2, 2, 8).unwrap());
        assert!(matches!(
            arv_inequality_check(&cubic(), &cubic(), 2, 2, 7),
            Err(Error::Usage(_))
        ));
        assert_eq!(cubic().twisted_top_chern(&int(4)), int(150));
    }

    #[test]
    fn invariants_validation() {
        assert!(VarietyInvariants::new(1, int(1), vec![int(0)]).is_err());
        assert!(VarietyInvariants::new(2, int(0), vec![int(0), int(1)]).is_err());
        assert!(VarietyInvariants::new(2, int(1), vec![int(0)]).is_err());
    }

    #[test]
    fn cauchy_bound() {
        // 2m^2 - 8: roots ±2, bound 1 + 4 = 5.
        assert_eq!(cauchy_root_bound(&[int(-8), int(0), int(2)]), int(5));
    }
}
