//! Sparse multivariate polynomials with rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is the
//! graded lexicographic order with `x0 > x1 > ...`. The last key is the
//! leading monomial, and iteration order is the canonical serialization
//! order (reversed, so output starts with the leading term).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::rational::{int, to_canonical, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn scale_exponents(&self, q: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * q).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Polynomial in `nvars` variables `x0, x1, ...`. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

/// Result of dividing by a single polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Division {
    pub quotient: MultiPoly,
    pub remainder: MultiPoly,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(Monomial(e), Rational::one());
        p
    }

    /// Builds from `(coefficient, exponent vector)` pairs; like terms are
    /// combined.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Rational, Vec<u32>)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (c, e) in terms {
            if e.len() != nvars {
                return Err(Error::usage(format!(
                    "exponent vector of length {} in a polynomial of {nvars} variables",
                    e.len()
                )));
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    /// Integer-coefficient shorthand used by tests and normal forms.
    pub fn from_int_terms(nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(nvars, terms.iter().map(|(c, e)| (int(*c), e.to_vec())))
            .expect("exponent vectors must match nvars")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order: leading (largest graded-lex) term first.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.0.len(), self.nvars);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::usage(format!(
                "polynomials in {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        if k.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (mm, cc) in &self.terms {
            out.terms.insert(mm.mul(m), cc * c);
        }
        out
    }

    /// Multivariate division by the single divisor `f` using its graded-lex
    /// leading term. Since `{f}` is a Gröbner basis of the principal ideal
    /// `(f)`, the remainder is zero exactly when `f` divides `self`.
    pub fn divide(&self, f: &Self) -> Result<Division> {
        self.check_vars(f)?;
        let (lm, lc) = f
            .leading_term()
            .ok_or_else(|| Error::usage("division by the zero polynomial"))?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut p = self.clone();
        let mut quotient = Self::zero(self.nvars);
        let mut remainder = Self::zero(self.nvars);
        while let Some((pm, pc)) = p.leading_term() {
            let (pm, pc) = (pm.clone(), pc.clone());
            match pm.div(&lm) {
                Some(t) => {
                    let c = pc / &lc;
                    p = p.sub(&f.mul_term(&t, &c))?;
                    quotient.add_term(t, c);
                }
                None => {
                    p.terms.remove(&pm);
                    remainder.add_term(pm, pc);
                }
            }
        }
        Ok(Division { quotient, remainder })
    }

    /// Exact quotient `self / f` if `f` divides `self`.
    pub fn exact_quotient(&self, f: &Self) -> Result<Option<Self>> {
        let d = self.divide(f)?;
        Ok(d.remainder.is_zero().then_some(d.quotient))
    }

    /// Substitutes `x_i -> x_i^q` for every variable.
    pub fn power_substitute(&self, q: u32) -> Result<Self> {
        if q == 0 {
            return Err(Error::usage("power substitution exponent must be at least 1"));
        }
        Ok(MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.scale_exponents(q), c.clone()))
                .collect(),
        })
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&e, x)| acc * num_traits::pow(x.clone(), e as usize))
            })
            .fold(Rational::zero(), |a, b| a + b)
    }
}

/// Returns the quotient `g / f` when `f` divides `g` exactly, `None`
/// otherwise. Fails when `f` is zero.
pub fn poly_divides(f: &MultiPoly, g: &MultiPoly) -> Result<Option<MultiPoly>> {
    if f.is_zero() {
        return Err(Error::usage("divisor must be nonzero"));
    }
    g.exact_quotient(f)
}

pub fn poly_power_substitute(f: &MultiPoly, q: u32) -> Result<MultiPoly> {
    f.power_substitute(q)
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_const = m.degree() == 0;
            if abs.is_one() && !is_const {
                write!(f, "{m}")?;
            } else if is_const {
                f.write_str(&to_canonical(&abs))?;
            } else {
                write!(f, "{}*{m}", to_canonical(&abs))?;
            }
        }
        Ok(())
    }
}
