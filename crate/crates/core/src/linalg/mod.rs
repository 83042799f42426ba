//! Exact integer linear algebra: Smith normal form, saturated kernels and
//! integral solvability.

mod matrix;
pub mod modp;
mod snf;
pub mod sparse;

pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithForm};
pub use sparse::{SparseVec, UnitEchelon};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use snf::{snf_dense, Track};

pub(crate) fn mod_floor(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

/// Smith divisors only; cheaper than [`smith_normal_form`] on large sparse input.
pub fn smith_divisors(a: &IntMatrix) -> Vec<BigInt> {
    if a.rows() * a.cols() > 4096 {
        let rows: Vec<SparseVec> = (0..a.rows()).map(|i| sparse::sparse_from_dense(a.row(i))).collect();
        return sparse::sparse_smith_divisors(a.cols(), &rows);
    }
    snf_dense(
        a.clone(),
        Track {
            left: false,
            right: false,
        },
    )
    .diag
}

pub fn rank(a: &IntMatrix) -> usize {
    smith_divisors(a).len()
}

/// Basis of the saturated integer kernel `{x : a x = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = smith_normal_form(a);
    (s.rank()..a.cols()).map(|j| s.right.column(j)).collect()
}

/// Some integer `x` with `a x = b`, or `None` when `b` is not in the integral image.
pub fn solve_in_image(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    if b.len() != a.rows() {
        return None;
    }
    let s = smith_normal_form(a);
    solve_with(&s, b)
}

/// Solves `a x = b` given a precomputed Smith form of `a`.
pub fn solve_with(s: &SmithForm, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let lb = s.left.mul_vec(b).ok()?;
    let mut y = vec![BigInt::zero(); s.right.rows()];
    for (i, v) in lb.iter().enumerate() {
        if i < s.diag.len() {
            let (q, r) = v.div_rem(&s.diag[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !v.is_zero() {
            return None;
        }
    }
    s.right.mul_vec(&y).ok()
}

/// Determinant via fraction-free (Bareiss) elimination.
pub fn determinant(a: &IntMatrix) -> Option<BigInt> {
    if a.rows() != a.cols() {
        return None;
    }
    let n = a.rows();
    if n == 0 {
        return Some(BigInt::from(1));
    }
    let mut m = a.clone();
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return Some(BigInt::zero());
            };
            m.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                m[(i, j)] = v / &prev;
            }
        }
        prev = m[(k, k)].clone();
    }
    let d = m[(n - 1, n - 1)].clone();
    Some(if sign < 0 { -d } else { d })
}

/// True when the lattice spanned by the columns of `a` is saturated in `Z^rows`.
pub fn is_saturated_columns(a: &IntMatrix) -> bool {
    smith_divisors(a).iter().all(|d| d == &BigInt::from(1))
}
