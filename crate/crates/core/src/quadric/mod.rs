//! Quadric hypersurfaces: rank, the endomorphism decision, power-map
//! witnesses with divisibility certificates, and pencil projections.

pub mod matrix;
pub mod normal_form;

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::int;
use crate::exact::{poly_power_substitute, MultiPoly, Rational};

pub use normal_form::{diagonal_to_normal_form, GaussRat, NormalFormSubstitution};

pub const RULE_NO_ENDO: &str = "quadric-rank-at-least-four";
pub const RULE_WITNESS: &str = "quadric-power-map-witness";
pub const RULE_LOW_DIM: &str = "quadric-low-dimension";
pub const RULE_PENCIL: &str = "pencil-projection";

/// Symmetric form `xᵀ A x` on projective `ambient_dim`-space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadricForm {
    ambient_dim: usize,
    matrix: Vec<Vec<Rational>>,
}

impl QuadricForm {
    pub fn new(matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let size = matrix.len();
        if size < 2 {
            return Err(Error::usage("a quadric needs at least two coordinates"));
        }
        if matrix.iter().any(|row| row.len() != size) {
            return Err(Error::usage("quadric matrix must be square"));
        }
        if let Some((i, j)) = (0..size)
            .flat_map(|i| (i + 1..size).map(move |j| (i, j)))
            .find(|&(i, j)| matrix[i][j] != matrix[j][i])
        {
            return Err(Error::usage(format!("quadric matrix is not symmetric at ({i}, {j})")));
        }
        Ok(QuadricForm {
            ambient_dim: size - 1,
            matrix,
        })
    }

    pub fn diagonal(entries: Vec<Rational>) -> Result<Self> {
        let n = entries.len();
        let matrix = entries
            .into_iter()
            .enumerate()
            .map(|(i, e)| {
                let mut row = vec![Rational::zero(); n];
                row[i] = e;
                row
            })
            .collect();
        Self::new(matrix)
    }

    /// `x_0^2 + ... + x_k^2` in projective `ambient_dim`-space.
    pub fn shorthand(ambient_dim: usize, paper_k: usize) -> Result<Self> {
        if paper_k > ambient_dim {
            return Err(Error::usage(format!(
                "paperK = {paper_k} exceeds ambient dimension {ambient_dim}"
            )));
        }
        Self::diagonal(
            (0..=ambient_dim)
                .map(|i| {
                    if i <= paper_k {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
        )
    }

    /// Gram matrix of a quadratic polynomial in `x_0..x_n`.
    pub fn from_poly(f: &MultiPoly) -> Result<Self> {
        let n = f.nvars();
        let mut m = vec![vec![Rational::zero(); n]; n];
        let half = Rational::new(1.into(), 2.into());
        for (mono, c) in f.terms() {
            let e = mono.exponents();
            if mono.degree() != 2 {
                return Err(Error::usage(format!("term {mono} is not quadratic")));
            }
            let vars: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
            match vars.as_slice() {
                [i] => m[*i][*i] += c.clone(),
                [i, j] => {
                    m[*i][*j] += c * &half;
                    m[*j][*i] += c * &half;
                }
                _ => unreachable!(),
            }
        }
        Self::new(m)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        matrix::rank(&self.matrix)
    }

    pub fn to_poly(&self) -> MultiPoly {
        let n = self.ambient_dim + 1;
        let mut p = MultiPoly::zero(n);
        for i in 0..n {
            for j in i..n {
                let c = &self.matrix[i][j];
                if c.is_zero() {
                    continue;
                }
                let mut e = vec![0u32; n];
                e[i] += 1;
                e[j] += 1;
                let coeff = if i == j { c.clone() } else { c * int(2) };
                p.add_term(crate::exact::Monomial::new(e), coeff);
            }
        }
        p
    }
}

pub fn paper_k(q: &QuadricForm) -> Result<usize> {
    match q.rank() {
        0 => Err(Error::Degenerate("quadric matrix is zero".into())),
        r => Ok(r - 1),
    }
}

/// `[x_0 : ... : x_{arity-1}] ↦ [x_0^q : ... : x_{arity-1}^q]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonomialMap {
    pub exponent: u32,
    pub arity: usize,
}

impl MonomialMap {
    pub fn new(exponent: u32, arity: usize) -> Result<Self> {
        if exponent < 2 {
            return Err(Error::usage(format!(
                "power map exponent must be at least 2, got {exponent}"
            )));
        }
        Ok(MonomialMap { exponent, arity })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessDegree {
    Irreducible(u64),
    /// Reducible quadric; degree on each hyperplane component.
    PerComponent(u64),
}

impl WitnessDegree {
    pub fn value(&self) -> u64 {
        match self {
            WitnessDegree::Irreducible(d) | WitnessDegree::PerComponent(d) => *d,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub k: usize,
    pub form: MultiPoly,
    pub map: MonomialMap,
    pub degree: WitnessDegree,
    pub reducible: bool,
}

fn build_witness(k: usize, n: usize, q: u32) -> Result<Witness> {
    let map = MonomialMap::new(q, n + 1)?;
    let nv = n + 1;
    let e = |idx: &[(usize, u32)]| {
        let mut v = vec![0u32; nv];
        for &(i, p) in idx {
            v[i] = p;
        }
        v
    };
    let terms: Vec<(Rational, Vec<u32>)> = match k {
        0 => vec![(int(1), e(&[(0, 2)]))],
        1 => vec![(int(1), e(&[(0, 1), (1, 1)]))],
        2 => vec![(int(1), e(&[(1, 2)])), (int(-1), e(&[(0, 1), (2, 1)]))],
        3 => vec![(int(1), e(&[(0, 1), (1, 1)])), (int(-1), e(&[(2, 1), (3, 1)]))],
        _ => unreachable!(),
    };
    let form = MultiPoly::from_terms(nv, terms)?;
    let deg = (q as u64)
        .checked_pow((n - 1) as u32)
        .ok_or_else(|| Error::usage("witness degree overflows 64 bits"))?;
    let degree = if k == 1 {
        WitnessDegree::PerComponent(deg)
    } else {
        WitnessDegree::Irreducible(deg)
    };
    Ok(Witness {
        k,
        form,
        map,
        degree,
        reducible: k <= 1,
    })
}

/// Normal form and power map for `k ∈ {1, 2, 3}`: `x0*x1 - x2*x3`,
/// `x1^2 - x0*x2`, `x0*x1`. Forms print in graded-lex order, so the second
/// one displays as `-x0*x2 + x1^2`.
pub fn witness_for_k(k: usize, n: usize, q: u32) -> Result<Witness> {
    if !(1..=3).contains(&k) {
        return Err(Error::usage(format!("witness is defined for k in 1..=3, got {k}")));
    }
    if k > n {
        return Err(Error::usage(format!("k = {k} exceeds ambient dimension {n}")));
    }
    build_witness(k, n, q)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariance {
    pub invariant: bool,
    pub pulled_back: MultiPoly,
    pub quotient: Option<MultiPoly>,
    /// Nonzero exactly when the form does not divide its pullback.
    pub remainder: MultiPoly,
}

pub fn verify_invariance(form: &MultiPoly, map: &MonomialMap) -> Result<Invariance> {
    if form.is_zero() {
        return Err(Error::Degenerate("form is zero".into()));
    }
    if form.nvars() != map.arity {
        return Err(Error::usage(format!(
            "form in {} variables, map on {} coordinates",
            form.nvars(),
            map.arity
        )));
    }
    let pulled_back = poly_power_substitute(form, map.exponent)?;
    let div = pulled_back.divide(form)?;
    let invariant = div.remainder.is_zero();
    Ok(Invariance {
        invariant,
        pulled_back,
        quotient: invariant.then_some(div.quotient),
        remainder: div.remainder,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoVerdict {
    pub admits: bool,
    pub paper_k: usize,
    pub ambient_dim: usize,
    pub witness: Option<Witness>,
    pub rule: &'static str,
    pub outside_theorem_range: bool,
}

/// `q` is the exponent of the witness power map.
pub fn decide(form: &QuadricForm, q: u32) -> Result<EndoVerdict> {
    let k = paper_k(form)?;
    let n = form.ambient_dim();
    let admits = k <= 3;
    let witness = if admits { Some(build_witness(k, n, q)?) } else { None };
    let outside = n < 3;
    let rule = match (admits, outside) {
        (_, true) => RULE_LOW_DIM,
        (true, false) => RULE_WITNESS,
        (false, false) => RULE_NO_ENDO,
    };
    Ok(EndoVerdict {
        admits,
        paper_k: k,
        ambient_dim: n,
        witness,
        rule,
        outside_theorem_range: outside,
    })
}

/// Diagonal form `Σ_{j≠i} (λ_j − λ_i) x_j^2` on the remaining coordinates.
pub fn pencil_projection(lambdas: &[Rational], i: usize) -> Result<QuadricForm> {
    if lambdas.len() < 3 {
        return Err(Error::usage("pencil projection needs at least three values"));
    }
    if i >= lambdas.len() {
        return Err(Error::usage(format!(
            "index {i} out of range for {} values",
            lambdas.len()
        )));
    }
    let distinct: BTreeSet<&Rational> = lambdas.iter().collect();
    if distinct.len() != lambdas.len() {
        return Err(Error::usage("pencil values must be pairwise distinct"));
    }
    let li = &lambdas[i];
    let q = QuadricForm::diagonal(
        lambdas
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, l)| l - li)
            .collect(),
    )?;
    if q.rank() != q.ambient_dim() + 1 {
        return Err(Error::Degenerate("pencil projection is not of full rank".into()));
    }
    Ok(q)
}
