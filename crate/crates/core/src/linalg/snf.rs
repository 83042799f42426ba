use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Result of a Smith normal form computation.
///
/// `left * a * right` is the diagonal matrix with entries `diag` (followed by
/// zeros); both transforms are unimodular and come with their inverses.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub left_inv: IntMatrix,
    pub right: IntMatrix,
    pub right_inv: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Divisors different from 1 (the torsion part of the cokernel).
    pub fn nontrivial_divisors(&self) -> Vec<BigInt> {
        self.diag.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn is_unimodular_chain(&self) -> bool {
        self.diag.iter().all(One::is_one)
    }
}

#[derive(Clone, Copy)]
pub(crate) struct Track {
    pub left: bool,
    pub right: bool,
}

pub(crate) struct SnfRun {
    pub diag: Vec<BigInt>,
    pub left: Option<(IntMatrix, IntMatrix)>,
    pub right: Option<(IntMatrix, IntMatrix)>,
}

/// Full Smith normal form with both unimodular transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let run = snf_dense(
        a.clone(),
        Track {
            left: true,
            right: true,
        },
    );
    let (left, left_inv) = run.left.expect("left transform tracked");
    let (right, right_inv) = run.right.expect("right transform tracked");
    SmithForm {
        diag: run.diag,
        left,
        left_inv,
        right,
        right_inv,
    }
}

struct Engine {
    a: IntMatrix,
    left: Option<(IntMatrix, IntMatrix)>,
    right: Option<(IntMatrix, IntMatrix)>,
}

impl Engine {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some((l, li)) = &mut self.left {
            l.swap_rows(i, j);
            li.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some((r, ri)) = &mut self.right {
            r.swap_cols(i, j);
            ri.swap_rows(i, j);
        }
    }

    /// row[dst] += q * row[src]
    fn row_op(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_row_multiple(dst, src, q);
        if let Some((l, li)) = &mut self.left {
            l.add_row_multiple(dst, src, q);
            li.add_col_multiple(src, dst, &-q);
        }
    }

    /// col[dst] += q * col[src]
    fn col_op(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_col_multiple(dst, src, q);
        if let Some((r, ri)) = &mut self.right {
            r.add_col_multiple(dst, src, q);
            ri.add_row_multiple(src, dst, &-q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some((l, li)) = &mut self.left {
            l.negate_row(i);
            li.negate_col(i);
        }
    }

    /// Smallest nonzero |entry| in the trailing block, ties broken by (row, col).
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = &self.a[(i, j)];
                if v.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => v.magnitude() < self.a[(bi, bj)].magnitude(),
                };
                if better {
                    best = Some((i, j));
                    if v.magnitude().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    /// Smallest nonzero |entry| in row t / column t beyond the pivot, if smaller than the pivot.
    fn smaller_in_cross(&self, t: usize) -> Option<(usize, usize)> {
        let p = self.a[(t, t)].magnitude().clone();
        let mut best: Option<((usize, usize), BigInt)> = None;
        let mut consider = |i: usize, j: usize, v: &BigInt| {
            if v.is_zero() || v.magnitude() >= &p {
                return;
            }
            let m = v.abs();
            if best.as_ref().is_none_or(|(_, b)| &m < b) {
                best = Some(((i, j), m));
            }
        };
        for i in t + 1..self.a.rows() {
            consider(i, t, &self.a[(i, t)]);
        }
        for j in t + 1..self.a.cols() {
            consider(t, j, &self.a[(t, j)]);
        }
        best.map(|(pos, _)| pos)
    }

    fn run(&mut self) -> Vec<BigInt> {
        let n = self.a.rows().min(self.a.cols());
        let mut diag = Vec::new();
        for t in 0..n {
            let Some((pi, pj)) = self.find_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.a[(t, t)].clone();
                for i in t + 1..self.a.rows() {
                    if !self.a[(i, t)].is_zero() {
                        let q = self.a[(i, t)].div_floor(&p);
                        self.row_op(i, t, &-q);
                    }
                }
                for j in t + 1..self.a.cols() {
                    if !self.a[(t, j)].is_zero() {
                        let q = self.a[(t, j)].div_floor(&p);
                        self.col_op(j, t, &-q);
                    }
                }
                if let Some((i, j)) = self.smaller_in_cross(t) {
                    if j == t {
                        self.swap_rows(t, i);
                    } else {
                        self.swap_cols(t, j);
                    }
                    continue;
                }
                // Cross is clear; enforce divisibility of the trailing block.
                let mut offender = None;
                'scan: for i in t + 1..self.a.rows() {
                    for j in t + 1..self.a.cols() {
                        if !self.a[(i, j)].is_multiple_of(&p) {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => self.row_op(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
            diag.push(self.a[(t, t)].clone());
        }
        diag
    }
}

pub(crate) fn snf_dense(a: IntMatrix, track: Track) -> SnfRun {
    let (m, n) = (a.rows(), a.cols());
    let mut e = Engine {
        a,
        left: track.left.then(|| (IntMatrix::identity(m), IntMatrix::identity(m))),
        right: track.right.then(|| (IntMatrix::identity(n), IntMatrix::identity(n))),
    };
    let diag = e.run();
    SnfRun {
        diag,
        left: e.left,
        right: e.right,
    }
}
