use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::group::FiniteGroupTable;
use crate::error::{Error, Result};
use crate::linalg::{determinant, IntMatrix};

/// `(Z/modulus)^rank` with one action matrix per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModule {
    modulus: u64,
    rank: usize,
    action: Vec<IntMatrix>,
}

/// Residue in `(-m/2, m/2]`, so that `-1` stays `-1` when lifted.
pub(crate) fn symmetric(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn sym_matrix(a: &IntMatrix, m: &BigInt) -> IntMatrix {
    let mut out = a.clone();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out[(i, j)] = symmetric(&a[(i, j)], m);
        }
    }
    out
}

fn is_unit_mod(a: &IntMatrix, m: &BigInt) -> bool {
    determinant(a).is_some_and(|d| d.gcd(m).is_one())
}

impl FiniteModule {
    /// Full-group mode: `action[x]` for every element `x` of `group`.
    pub fn new(group: &FiniteGroupTable, modulus: u64, rank: usize, action: Vec<IntMatrix>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        if action.len() != group.order() {
            return Err(Error::Dimension(format!(
                "{} action matrices for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        let m = BigInt::from(modulus);
        let mut reduced = Vec::with_capacity(action.len());
        for a in &action {
            if a.rows() != rank || a.cols() != rank {
                return Err(Error::Dimension(format!("action matrices must be {rank} x {rank}")));
            }
            if !is_unit_mod(a, &m) {
                return Err(Error::Dimension(format!(
                    "action matrix not invertible modulo {modulus}"
                )));
            }
            reduced.push(sym_matrix(a, &m));
        }
        let module = FiniteModule {
            modulus,
            rank,
            action: reduced,
        };
        module.check_action(group, modulus)?;
        Ok(module)
    }

    /// Extends matrices given on some elements (which must generate) to the
    /// whole group.
    pub fn from_generators(
        group: &FiniteGroupTable,
        modulus: u64,
        rank: usize,
        assignments: &[(usize, IntMatrix)],
    ) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        let m = BigInt::from(modulus);
        let gens: Vec<usize> = assignments.iter().map(|(x, _)| *x).collect();
        if gens.iter().any(|&x| x >= group.order()) {
            return Err(Error::Dimension("assignment to an element outside the group".into()));
        }
        let (parent, order) = group.spanning_tree(&gens)?;
        let mut action = vec![IntMatrix::identity(rank); group.order()];
        for &x in order.iter().skip(1) {
            let (p, k) = parent[x].expect("tree edge");
            let a = &assignments[k].1;
            if a.rows() != rank || a.cols() != rank {
                return Err(Error::Dimension(format!("action matrices must be {rank} x {rank}")));
            }
            action[x] = action[p].mul(a)?.reduce_mod(&m);
        }
        Self::new(group, modulus, rank, action)
    }

    /// Trivial action.
    pub fn trivial(group: &FiniteGroupTable, modulus: u64, rank: usize) -> Result<Self> {
        Self::new(group, modulus, rank, vec![IntMatrix::identity(rank); group.order()])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Action matrix of element `x`, entries in `(-n/2, n/2]`.
    pub fn action(&self, x: usize) -> &IntMatrix {
        &self.action[x]
    }

    pub fn actions(&self) -> &[IntMatrix] {
        &self.action
    }

    /// `A_e = I` and `A_x A_y = A_xy` modulo `modulus`.
    pub fn check_action(&self, group: &FiniteGroupTable, modulus: u64) -> Result<()> {
        let m = BigInt::from(modulus);
        let id = IntMatrix::identity(self.rank);
        if self.action[group.identity()].reduce_mod(&m) != id.reduce_mod(&m) {
            return Err(Error::IdentityFailed("identity does not act trivially".into()));
        }
        // products with a generating set suffice
        let gens = group.generators();
        for x in 0..group.order() {
            for &s in &gens {
                let lhs = self.action[x].mul(&self.action[s])?.reduce_mod(&m);
                if lhs != self.action[group.mul(x, s)].reduce_mod(&m) {
                    return Err(Error::IdentityFailed(format!(
                        "action is not a homomorphism modulo {modulus} at ({x}, {s})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Same matrices read modulo a divisor of the modulus.
    pub fn reduce(&self, group: &FiniteGroupTable, modulus: u64) -> Result<Self> {
        if modulus < 2 || !self.modulus.is_multiple_of(modulus) {
            return Err(Error::InvalidModulus(modulus));
        }
        Self::new(group, modulus, self.rank, self.action.clone())
    }

    /// `x -> -x` for the elements selected by `negate`, identity otherwise;
    /// `negate` must define a homomorphism to `{±1}`.
    pub fn sign_character(
        group: &FiniteGroupTable,
        modulus: u64,
        rank: usize,
        negate: impl Fn(usize) -> bool,
    ) -> Result<Self> {
        let action = (0..group.order())
            .map(|x| {
                let s = if negate(x) { -1 } else { 1 };
                IntMatrix::scalar(rank, s)
            })
            .collect();
        Self::new(group, modulus, rank, action)
    }

    /// Text form: `modulus n`, `rank r`, then blocks `element x` followed by
    /// `r` matrix rows. Listed elements must generate the group.
    pub fn parse(group: &FiniteGroupTable, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let mut header = |key: &str| -> Result<u64> {
            let l = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing '{key}' line")))?;
            l.strip_prefix(key)
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| Error::Parse(format!("expected '{key} N', got {l:?}")))
        };
        let modulus = header("modulus")?;
        let rank = header("rank")? as usize;
        let mut assignments = Vec::new();
        while let Some(l) = lines.next() {
            let x: usize = l
                .strip_prefix("element")
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| Error::Parse(format!("expected 'element X', got {l:?}")))?;
            let mut rows = Vec::with_capacity(rank);
            for _ in 0..rank {
                let row = lines
                    .next()
                    .ok_or_else(|| Error::Parse(format!("matrix for element {x} is short")))?;
                let vals = row
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<BigInt>()
                            .map_err(|_| Error::Parse(format!("bad entry {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if vals.len() != rank {
                    return Err(Error::Parse(format!(
                        "row of length {} in a rank {rank} module",
                        vals.len()
                    )));
                }
                rows.push(vals);
            }
            assignments.push((x, IntMatrix::from_rows(rows)?));
        }
        if rank == 0 || assignments.is_empty() {
            return Self::trivial(group, modulus, rank);
        }
        Self::from_generators(group, modulus, rank, &assignments)
    }

    /// True if element `z` acts as `-1`.
    pub fn acts_as_minus_one(&self, z: usize) -> bool {
        let m = BigInt::from(self.modulus);
        self.action[z].reduce_mod(&m) == IntMatrix::scalar(self.rank, -1).reduce_mod(&m)
    }
}
