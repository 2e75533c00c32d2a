//! Independent reference implementations used only to cross-check the
//! library: straightforward Gaussian elimination for rank and Laplace
//! expansion for determinants, sharing no code with the Bareiss path.
#![allow(dead_code)] // each test binary uses a subset

use multidrop_core::field::GaussianRational;
use multidrop_core::linalg::ExactMatrix;
use num_traits::Zero;

/// Rank via plain row reduction over Q(i) with exact division.
pub fn naive_rank(m: &ExactMatrix) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<GaussianRational>> = (0..rows)
        .map(|r| (0..cols).map(|c| m.get(r, c).clone()).collect())
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| !a[r][col].is_zero());
        let Some(p) = pivot else { continue };
        a.swap(rank, p);
        let inv = a[rank][col].checked_inv().unwrap();
        for c in col..cols {
            a[rank][c] = &a[rank][c] * &inv;
        }
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..cols {
                    let sub = &a[rank][c] * &factor;
                    a[r][c] = &a[r][c] - &sub;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Determinant by Laplace expansion along the first row; only for small
/// matrices.
pub fn laplace_det(m: &ExactMatrix) -> GaussianRational {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    if n == 0 {
        return "1".parse().unwrap();
    }
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = GaussianRational::zero();
    for c in 0..n {
        if m.get(0, c).is_zero() {
            continue;
        }
        let minor = ExactMatrix::from_fn(n - 1, n - 1, |i, j| {
            m.get(i + 1, if j < c { j } else { j + 1 }).clone()
        });
        let mut term = m.get(0, c) * &laplace_det(&minor);
        if c % 2 == 1 {
            term = -term;
        }
        acc += &term;
    }
    acc
}
