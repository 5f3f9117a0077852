//! Arithmetic content of the line, index and ramification lemmas.

use crate::error::{Error, Result};

/// Non-increasing integer vectors of length `len` with entries in
/// `[min, max]` summing to `sum`, in lexicographically decreasing order.
pub fn enumerate_splitting_types(len: usize, sum: i64, max: i64, min: i64) -> Vec<Vec<i64>> {
    fn go(rest: usize, sum: i64, cap: i64, min: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if rest == 0 {
            if sum == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let r = rest as i64;
        for v in (min..=cap).rev() {
            // Remaining entries lie in [min, v].
            if sum - v > (r - 1) * v || sum - v < (r - 1) * min {
                continue;
            }
            cur.push(v);
            go(rest - 1, sum - v, v, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if min <= max {
        go(len, sum, max, min, &mut Vec::with_capacity(len), &mut out);
    }
    out
}

/// Normal-bundle splitting types of a line on a del Pezzo manifold of
/// dimension `n`: length `n - 1`, entries in `[-1, 1]`, sum `n - 3`. The
/// first kind `(1^(n-3), 0, 0)` is listed before the second `(1^(n-2), -1)`.
pub fn splitting_types_del_pezzo(n: usize) -> Result<Vec<Vec<i64>>> {
    if n < 3 {
        return Err(Error::usage(format!("splitting types need n >= 3, got {n}")));
    }
    let mut types = enumerate_splitting_types(n - 1, n as i64 - 3, 1, -1);
    types.sort_by_key(|t| std::cmp::Reverse(t[t.len() - 1]));
    Ok(types)
}

/// Line-normal-bundle types on an index-one manifold of dimension `n`:
/// entries at most 1 and at least `-n`, summing to `-1`.
pub fn splitting_types_index_one(n: usize) -> Result<Vec<Vec<i64>>> {
    if n < 2 {
        return Err(Error::usage(format!("splitting types need n >= 2, got {n}")));
    }
    Ok(enumerate_splitting_types(n - 1, -1, 1, -(n as i64)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StandardCurve {
    pub p: i64,
    pub valid: bool,
}

/// `p = i·(H·C) - 2` for a standard rational curve; valid when
/// `0 ≤ p ≤ n - 1` (only `p ≥ 0` is checked without a dimension).
pub fn standard_p(index: u32, h_dot: u32, n: Option<usize>) -> Result<StandardCurve> {
    if index == 0 || h_dot == 0 {
        return Err(Error::usage("index and H·C must be at least 1"));
    }
    let p = index as i64 * h_dot as i64 - 2;
    let valid = p >= 0 && n.is_none_or(|n| p < n as i64);
    Ok(StandardCurve { p, valid })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiddleIndexCases {
    /// `P2×P2×P2`, present only for `r = 3`.
    pub product_case: Option<String>,
    /// Projective bundles over a base of dimension `r + 1`.
    pub bundle_cases: Vec<String>,
    pub quadric_bundle: String,
    pub reflexive_cases: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexFacts {
    pub n: usize,
    pub r: usize,
    /// `P^n` for `r = n + 1`, smooth quadric for `r = n`.
    pub kobayashi_ochiai: Option<String>,
    pub forces_picard_one: bool,
    /// Candidates with Picard number at least 2.
    pub higher_picard_candidates: Vec<String>,
    pub middle_index: Option<MiddleIndexCases>,
}

pub fn index_facts(n: usize, r: usize) -> Result<IndexFacts> {
    if r == 0 || n == 0 {
        return Err(Error::usage("dimension and index must be at least 1"));
    }
    if r > n + 1 {
        return Err(Error::Table(format!("index {r} exceeds dim + 1 = {}", n + 1)));
    }
    let kobayashi_ochiai = if r == n + 1 {
        Some(format!("P^{n}"))
    } else if r == n {
        Some(format!("smooth quadric Q^{n}"))
    } else {
        None
    };
    let big_range = n >= 3;
    // r > n/2 + 1  <=>  2r > n + 2
    let forces_picard_one = big_range && 2 * r > n + 2;
    let mut higher_picard_candidates = Vec::new();
    if big_range && 2 * r == n + 2 {
        higher_picard_candidates.push(format!("P^{0}×P^{0}", r - 1));
    }
    if big_range && 2 * r == n + 1 {
        higher_picard_candidates.extend([
            format!("P_(P^{r})(O(2)+O(1)^{})", r - 1),
            format!("P_(P^{r})(T_P^{r})"),
            format!("P^{}×Q^{r}", r - 1),
        ]);
    }
    let middle_index = (n == 2 * r && n >= 6).then(|| MiddleIndexCases {
        product_case: (r == 3).then(|| "P2×P2×P2".to_string()),
        bundle_cases: vec![
            format!("V_d×P^{}", r - 1),
            format!("P_(P^{})(O(2)^2+O(1)^{})", r + 1, r - 2),
            format!("P_(P^{})(O(3)+O(1)^{})", r + 1, r - 1),
            format!("P_(Q^{})(O(2)+O(1)^{})", r + 1, r - 1),
            "P_(Q^4)(E(1)+O(1)), E a spinor bundle".to_string(),
        ],
        quadric_bundle: format!(
            "quadric bundle over a base of dimension {r}, a relative-degree-2 divisor in a P^{}-bundle",
            r + 1
        ),
        reflexive_cases: vec![
            format!("blow-up of Q^{n} along a linear P^{}", r - 1),
            format!("intersection of two (1,1) divisors in P^{0}×P^{0}", r + 1),
        ],
    });
    Ok(IndexFacts {
        n,
        r,
        kobayashi_ochiai,
        forces_picard_one,
        higher_picard_candidates,
        middle_index,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ramification {
    /// `(q-1)·i < q·λ/2` for every `q ≥ 2`.
    pub contradiction_for_all_q: bool,
    /// `(q-1)·i` at `q = 2`.
    pub lhs_at_two: u64,
    /// `q·λ/2` at `q = 2`.
    pub rhs_at_two: u64,
    /// Smallest `q ≥ 2` with `(q-1)·i ≥ q·λ/2`, when the contradiction fails.
    pub first_escape: Option<u64>,
}

pub fn ramification_contradiction(index: u64, lambda: u64) -> Result<Ramification> {
    if index == 0 || lambda == 0 {
        return Err(Error::usage("index and lambda must be at least 1"));
    }
    // (q-1) i >= q λ / 2  <=>  q (2i - λ) >= 2i
    let fires = lambda >= 2 * index;
    let first_escape = (!fires).then(|| {
        let gap = 2 * index - lambda;
        (2 * index).div_ceil(gap).max(2)
    });
    Ok(Ramification {
        contradiction_for_all_q: fires,
        lhs_at_two: index,
        rhs_at_two: lambda,
        first_escape,
    })
}
