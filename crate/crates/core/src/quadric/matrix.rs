//! Exact rank of rational matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::Rational;

/// Rank over `Q` by fraction-free (Bareiss) elimination. Rows are scaled to
/// integers first, which does not change the rank.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            row.iter().map(|c| c.numer() * (&l / c.denom())).collect()
        })
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

pub fn transpose(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.first().map_or(0, Vec::len);
    (0..n).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn matmul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner)
                        .map(|k| &row[k] * &b[k][j])
                        .fold(Rational::zero(), |x, y| x + y)
                })
                .collect()
        })
        .collect()
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::exact::rational::int;
    use proptest::prelude::*;

    fn square(n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
        prop::collection::vec(prop::collection::vec((-3i64..=3).prop_map(int), n), n)
    }

    /// Unit lower triangular times unit upper triangular: always invertible.
    fn invertible(n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
        (square(n), square(n)).prop_map(move |(a, b)| {
            let l: Vec<Vec<Rational>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                int(1)
                            } else if j < i {
                                a[i][j].clone()
                            } else {
                                int(0)
                            }
                        })
                        .collect()
                })
                .collect();
            let u: Vec<Vec<Rational>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                int(1)
                            } else if j > i {
                                b[i][j].clone()
                            } else {
                                int(0)
                            }
                        })
                        .collect()
                })
                .collect();
            matmul(&l, &u)
        })
    }

    proptest! {
        #[test]
        fn rank_is_congruence_invariant((m, t) in (2usize..=5).prop_flat_map(|n| (square(n), invertible(n)))) {
            let sym: Vec<Vec<Rational>> = (0..m.len())
                .map(|i| (0..m.len()).map(|j| &m[i][j] + &m[j][i]).collect())
                .collect();
            let congruent = matmul(&matmul(&transpose(&t), &sym), &t);
            prop_assert_eq!(rank(&congruent), rank(&sym));
            prop_assert_eq!(rank(&t), t.len());
        }

        #[test]
        fn rank_of_transpose(m in (1usize..=5).prop_flat_map(square)) {
            prop_assert_eq!(rank(&m), rank(&transpose(&m)));
        }
    }
}
