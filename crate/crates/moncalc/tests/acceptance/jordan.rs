//! Brute-force Jordan types of Kronecker products of unipotent blocks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

type Matrix = Vec<Vec<BigRational>>;

fn unipotent(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j || j == i + 1 { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect()
}

fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (m, n) = (a.len(), b.len());
    let mut out = vec![vec![BigRational::zero(); m * n]; m * n];
    for i in 0..m {
        for j in 0..m {
            for k in 0..n {
                for l in 0..n {
                    out[i * n + k][j * n + l] = &a[i][j] * &b[k][l];
                }
            }
        }
    }
    out
}

fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &pivot;
                for j in c..cols {
                    let v = &f * &a[r][j];
                    a[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Jordan block sizes (ascending) of `J_m (x) J_n` for unipotent blocks.
pub fn tensor_type(m: usize, n: usize) -> Vec<u64> {
    let mut x = kron(&unipotent(m), &unipotent(n));
    let dim = x.len();
    for (i, row) in x.iter_mut().enumerate() {
        row[i] -= BigRational::from_integer(BigInt::one());
    }
    // ranks[k] = rank of N^k
    let mut ranks = vec![dim];
    let mut power = x.clone();
    while *ranks.last().unwrap() > 0 {
        ranks.push(rank(&power));
        power = mul(&power, &x);
    }
    let mut sizes = Vec::new();
    for k in 1..ranks.len() {
        let at_least_k = ranks[k - 1] - ranks[k];
        let at_least_next = if k + 1 < ranks.len() { ranks[k] - ranks[k + 1] } else { 0 };
        sizes.extend(std::iter::repeat_n(k as u64, at_least_k - at_least_next));
    }
    sizes.sort_unstable();
    sizes
}
