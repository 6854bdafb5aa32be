//! Hermite normal form over the integers, with the unimodular transform.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Row-style Hermite normal form `H = U·M` with `U` unimodular: nonzero rows
/// first, positive pivots with strictly increasing columns, entries above a
/// pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Replaces rows `(i, j)` by `(a·row_i + b·row_j, c·row_i + d·row_j)`.
fn combine(m: &mut IntMatrix, i: usize, j: usize, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) {
    for k in 0..m[i].len() {
        let (x, y) = (m[i][k].clone(), m[j][k].clone());
        m[i][k] = a * &x + b * &y;
        m[j][k] = c * &x + d * &y;
    }
}

pub fn hermite_normal_form(m: &IntMatrix) -> Hnf {
    let n = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut h = m.clone();
    let mut u = identity(n);
    let mut row = 0;
    for c in 0..cols {
        if row == n {
            break;
        }
        // eliminate below the pivot with extended-gcd row operations
        for i in row + 1..n {
            if h[i][c].is_zero() {
                continue;
            }
            let (p, q) = (h[row][c].clone(), h[i][c].clone());
            let e = p.extended_gcd(&q);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let (pg, qg) = (&p / &g, &q / &g);
            let neg_qg = -qg;
            combine(&mut h, row, i, &x, &y, &neg_qg, &pg);
            combine(&mut u, row, i, &x, &y, &neg_qg, &pg);
        }
        if h[row][c].is_zero() {
            continue;
        }
        if h[row][c].is_negative() {
            for k in 0..cols {
                h[row][k] = -&h[row][k];
            }
            for k in 0..n {
                u[row][k] = -&u[row][k];
            }
        }
        let pivot = h[row][c].clone();
        for i in 0..row {
            let f = h[i][c].div_floor(&pivot);
            if f.is_zero() {
                continue;
            }
            for k in 0..cols {
                let v = &f * &h[row][k];
                h[i][k] -= v;
            }
            for k in 0..n {
                let v = &f * &u[row][k];
                u[i][k] -= v;
            }
        }
        row += 1;
    }
    Hnf { h, u, rank: row }
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|r| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &r[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Determinant by Bareiss fraction-free elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn hnf_of_reflection_minus_identity() {
        let hnf = hermite_normal_form(&int(&[&[0, 0], &[0, -2]]));
        assert_eq!(hnf.rank, 1);
        assert_eq!(hnf.h, int(&[&[0, 2], &[0, 0]]));
        assert_eq!(mat_mul(&hnf.u, &int(&[&[0, 0], &[0, -2]])), hnf.h);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&int(&[&[2, 1], &[7, 4]])), BigInt::from(1));
        assert_eq!(determinant(&int(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&int(&[&[1, 2], &[2, 4]])), BigInt::from(0));
        assert_eq!(determinant(&int(&[&[3, 0, 0], &[0, -1, 0], &[5, 5, 2]])), BigInt::from(-6));
    }

    proptest! {
        #[test]
        fn transform_is_unimodular_and_reproduces_h(
            entries in proptest::collection::vec(-6i64..=6, 12)
        ) {
            let m: IntMatrix = entries.chunks(3).map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
            let hnf = hermite_normal_form(&m);
            prop_assert_eq!(mat_mul(&hnf.u, &m), hnf.h.clone());
            prop_assert_eq!(determinant(&hnf.u).abs(), BigInt::one());
            for r in hnf.rank..m.len() {
                prop_assert!(hnf.h[r].iter().all(Zero::is_zero));
            }
        }
    }
}
