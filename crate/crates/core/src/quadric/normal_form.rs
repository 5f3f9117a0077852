//! Change of coordinates over `Q(i)` carrying `x_0^2 + ... + x_k^2` to the
//! split normal forms used by the witness endomorphisms.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{int, to_canonical};
use crate::exact::Rational;

/// Gaussian rational `re + im·i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRat {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussRat::new(re, Rational::zero())
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussRat::new(int(re), int(im))
    }

    pub fn i() -> Self {
        GaussRat::from_ints(0, 1)
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat::from_ints(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat::from_ints(1, 0)
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, o: GaussRat) -> GaussRat {
        GaussRat::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, o: GaussRat) -> GaussRat {
        GaussRat::new(self.re - o.re, self.im - o.im)
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re, -self.im)
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, o: GaussRat) -> GaussRat {
        GaussRat::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        self.clone() * o.clone()
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => f.write_str(&to_canonical(&self.re)),
            (true, false) => f.write_str(&imag_part(&self.im)),
            (false, false) => {
                let im = imag_part(&self.im);
                match im.strip_prefix('-') {
                    Some(rest) => write!(f, "{}-{rest}", to_canonical(&self.re)),
                    None => write!(f, "{}+{im}", to_canonical(&self.re)),
                }
            }
        }
    }
}

fn imag_part(im: &Rational) -> String {
    if im.is_one() {
        "i".into()
    } else if *im == -Rational::one() {
        "-i".into()
    } else {
        format!("{}i", to_canonical(im))
    }
}

pub type GaussMatrix = Vec<Vec<GaussRat>>;

/// `u = T x` with `N(T x) = x_0^2 + ... + x_k^2`, where `N` is the normal
/// form with symmetric Gram matrix `target_gram`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFormSubstitution {
    pub k: usize,
    /// Row `j` expresses `u_j` as a linear form in `x_0..x_k`.
    pub transform: GaussMatrix,
    /// Gram matrix of the normal form in the `u` coordinates.
    pub target_gram: Vec<Vec<Rational>>,
    pub target: String,
    pub rules: Vec<String>,
    /// `Tᵀ B T == I`, computed exactly.
    pub verified: bool,
}

fn linear_form(row: &[GaussRat]) -> String {
    let mut out = String::new();
    for (j, c) in row.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = if c.is_one() {
            format!("x{j}")
        } else if *c == -GaussRat::one() {
            format!("-x{j}")
        } else if c.re.is_zero() || c.im.is_zero() {
            format!("{c}*x{j}")
        } else {
            format!("({c})*x{j}")
        };
        if out.is_empty() {
            out = term;
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    out
}

/// Emits the substitution for `k ∈ {1, 2, 3}`:
///
/// * `k = 1`: `u0 = x0 + i x1`, `u1 = x0 - i x1`, target `u0 u1`;
/// * `k = 2`: `u0 = x0 + i x2`, `u1 = x1`, `u2 = -x0 + i x2`, target `u1^2 - u0 u2`;
/// * `k = 3`: `u0 = x0 + i x1`, `u1 = x0 - i x1`, `u2 = i x2 - x3`, `u3 = i x2 + x3`,
///   target `u0 u1 - u2 u3`.
pub fn diagonal_to_normal_form(k: usize) -> Result<NormalFormSubstitution> {
    let g = GaussRat::from_ints;
    let h = Rational::new(1.into(), 2.into());
    let z = Rational::zero;
    let (transform, target_gram, target): (GaussMatrix, Vec<Vec<Rational>>, &str) = match k {
        1 => (
            vec![vec![g(1, 0), g(0, 1)], vec![g(1, 0), g(0, -1)]],
            vec![vec![z(), h.clone()], vec![h.clone(), z()]],
            "u0*u1",
        ),
        2 => (
            vec![
                vec![g(1, 0), g(0, 0), g(0, 1)],
                vec![g(0, 0), g(1, 0), g(0, 0)],
                vec![g(-1, 0), g(0, 0), g(0, 1)],
            ],
            vec![
                vec![z(), z(), -h.clone()],
                vec![z(), int(1), z()],
                vec![-h.clone(), z(), z()],
            ],
            "u1^2 - u0*u2",
        ),
        3 => (
            vec![
                vec![g(1, 0), g(0, 1), g(0, 0), g(0, 0)],
                vec![g(1, 0), g(0, -1), g(0, 0), g(0, 0)],
                vec![g(0, 0), g(0, 0), g(0, 1), g(-1, 0)],
                vec![g(0, 0), g(0, 0), g(0, 1), g(1, 0)],
            ],
            vec![
                vec![z(), h.clone(), z(), z()],
                vec![h.clone(), z(), z(), z()],
                vec![z(), z(), z(), -h.clone()],
                vec![z(), z(), -h.clone(), z()],
            ],
            "u0*u1 - u2*u3",
        ),
        _ => {
            return Err(Error::usage(format!(
                "normal-form substitution is defined for k in 1..=3, got {k}"
            )))
        }
    };
    let rules = transform
        .iter()
        .enumerate()
        .map(|(j, row)| format!("u{j} = {}", linear_form(row)))
        .collect();
    let verified = pullback_gram(&transform, &target_gram) == identity(k + 1);
    Ok(NormalFormSubstitution {
        k,
        transform,
        target_gram,
        target: target.to_string(),
        rules,
        verified,
    })
}

fn identity(n: usize) -> GaussMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { GaussRat::one() } else { GaussRat::zero() })
                .collect()
        })
        .collect()
}

/// `Tᵀ B T`: Gram matrix of `x ↦ N(T x)` where `N` has Gram matrix `B`.
pub fn pullback_gram(t: &GaussMatrix, b: &[Vec<Rational>]) -> GaussMatrix {
    let n = t.first().map_or(0, Vec::len);
    let rows = t.len();
    (0..n)
        .map(|p| {
            (0..n)
                .map(|q| {
                    let mut acc = GaussRat::zero();
                    for j in 0..rows {
                        for l in 0..rows {
                            if b[j][l].is_zero() {
                                continue;
                            }
                            acc = acc + &(&t[j][p] * &GaussRat::real(b[j][l].clone())) * &t[l][q];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}
