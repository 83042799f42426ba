//! Sparse integer rows and unit-pivot elimination.
//!
//! Relation matrices coming from free Lie algebras are very sparse and almost
//! always admit a pivot of absolute value 1. Eliminating such a pivot is a
//! unimodular operation that splits off a Smith divisor equal to 1, so large
//! systems are reduced this way first and only the (usually empty) residue
//! goes through the dense Smith normal form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::snf::{snf_dense, Track};
use super::IntMatrix;

/// Sorted `(index, nonzero value)` pairs.
pub type SparseVec = Vec<(usize, BigInt)>;

pub fn sparse_from_dense(v: &[BigInt]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn sparse_get(v: &SparseVec, idx: usize) -> Option<&BigInt> {
    v.binary_search_by_key(&idx, |(i, _)| *i).ok().map(|k| &v[k].1)
}

/// `a + c * b`
pub fn sparse_axpy(a: &SparseVec, c: &BigInt, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduced lattice basis where every row has a pivot entry equal to 1 and
/// vanishes at the pivots of all other rows.
#[derive(Clone, Debug, Default)]
pub struct UnitEchelon {
    pub ncols: usize,
    /// `(pivot column, row)`, in insertion order.
    pub rows: Vec<(usize, SparseVec)>,
    /// For each row, its expression in terms of the input generators.
    pub combos: Vec<SparseVec>,
    /// Nonzero remainders that never acquired a unit entry.
    pub residual: Vec<SparseVec>,
}

impl UnitEchelon {
    /// Builds the echelon from generator rows. Among unit entries of a new row
    /// the largest column index is chosen as pivot.
    pub fn build(ncols: usize, generators: &[SparseVec]) -> UnitEchelon {
        let mut e = UnitEchelon {
            ncols,
            ..Default::default()
        };
        let mut pending: Vec<(SparseVec, SparseVec)> = generators
            .iter()
            .enumerate()
            .map(|(k, g)| (g.clone(), vec![(k, BigInt::one())]))
            .collect();
        loop {
            let mut progress = false;
            let mut stuck = Vec::new();
            for (row, combo) in pending {
                let (row, combo) = e.reduce_with_combo(&row, &combo);
                if row.is_empty() {
                    continue;
                }
                match row.iter().rev().find(|(_, v)| v.magnitude().is_one()) {
                    Some((col, v)) => {
                        let col = *col;
                        let (row, combo) = if v.is_negative() {
                            (negate(&row), negate(&combo))
                        } else {
                            (row, combo)
                        };
                        e.insert_pivot(col, row, combo);
                        progress = true;
                    }
                    None => stuck.push((row, combo)),
                }
            }
            pending = stuck;
            if !progress || pending.is_empty() {
                break;
            }
        }
        e.residual = pending
            .into_iter()
            .map(|(r, c)| e.reduce_with_combo(&r, &c).0)
            .filter(|r| !r.is_empty())
            .collect();
        e
    }

    fn insert_pivot(&mut self, col: usize, row: SparseVec, combo: SparseVec) {
        for k in 0..self.rows.len() {
            if let Some(c) = sparse_get(&self.rows[k].1, col).cloned() {
                let neg = -c;
                self.rows[k].1 = sparse_axpy(&self.rows[k].1, &neg, &row);
                self.combos[k] = sparse_axpy(&self.combos[k], &neg, &combo);
            }
        }
        self.rows.push((col, row));
        self.combos.push(combo);
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|(c, _)| *c).collect()
    }

    /// Subtracts pivot rows so that the result vanishes on every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (col, row) in &self.rows {
            if let Some(c) = sparse_get(&out, *col).cloned() {
                out = sparse_axpy(&out, &-c, row);
            }
        }
        out
    }

    fn reduce_with_combo(&self, v: &SparseVec, combo: &SparseVec) -> (SparseVec, SparseVec) {
        let mut out = v.clone();
        let mut cmb = combo.clone();
        for (k, (col, row)) in self.rows.iter().enumerate() {
            if let Some(c) = sparse_get(&out, *col).cloned() {
                let neg = -c;
                out = sparse_axpy(&out, &neg, row);
                cmb = sparse_axpy(&cmb, &neg, &self.combos[k]);
            }
        }
        (out, cmb)
    }

    /// Smith divisors of the original generator matrix: one `1` per pivot,
    /// followed by the divisors of the residual block.
    pub fn divisors(&self) -> Vec<BigInt> {
        let mut d = vec![BigInt::one(); self.rows.len()];
        if !self.residual.is_empty() {
            d.extend(residual_divisors(self.ncols, &self.residual));
        }
        d
    }
}

fn negate(v: &SparseVec) -> SparseVec {
    v.iter().map(|(i, x)| (*i, -x)).collect()
}

fn residual_divisors(ncols: usize, residual: &[SparseVec]) -> Vec<BigInt> {
    let mut used: Vec<usize> = residual.iter().flat_map(|r| r.iter().map(|(i, _)| *i)).collect();
    used.sort_unstable();
    used.dedup();
    debug_assert!(used.iter().all(|&c| c < ncols));
    let mut m = IntMatrix::zeros(residual.len(), used.len());
    for (i, r) in residual.iter().enumerate() {
        for (c, v) in r {
            let j = used.binary_search(c).expect("column present");
            m[(i, j)] = v.clone();
        }
    }
    snf_dense(
        m,
        Track {
            left: false,
            right: false,
        },
    )
    .diag
}

/// Smith divisors of the matrix whose rows are `rows` (no transforms).
pub fn sparse_smith_divisors(ncols: usize, rows: &[SparseVec]) -> Vec<BigInt> {
    UnitEchelon::build(ncols, rows).divisors()
}
