use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// A finite group by its full multiplication table on `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    mult: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
}

/// Parent `(element, generator slot)` per element, and the visiting order.
pub type SpanningTree = (Vec<Option<(usize, usize)>>, Vec<usize>);

/// Largest order for which associativity is checked exhaustively.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 512;

impl FiniteGroupTable {
    pub fn new(mult: Vec<Vec<usize>>) -> Result<Self> {
        let n = mult.len();
        if n == 0 {
            return Err(Error::Parse("empty group table".into()));
        }
        if mult.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Parse(format!("table must be {n} x {n} with entries below {n}")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mult[e][x] == x && mult[x][e] == x))
            .ok_or_else(|| Error::Parse("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for (x, row) in mult.iter().enumerate() {
            let y = (0..n)
                .find(|&y| row[y] == identity && mult[y][x] == identity)
                .ok_or_else(|| Error::Parse(format!("element {x} has no inverse")))?;
            inverse.push(y);
        }
        if n <= ASSOCIATIVITY_CHECK_LIMIT {
            for x in 0..n {
                for y in 0..n {
                    let xy = mult[x][y];
                    for z in 0..n {
                        if mult[xy][z] != mult[x][mult[y][z]] {
                            return Err(Error::Parse(format!("not associative at ({x}, {y}, {z})")));
                        }
                    }
                }
            }
        }
        Ok(FiniteGroupTable {
            mult,
            inverse,
            identity,
        })
    }

    pub fn order(&self) -> usize {
        self.mult.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mult[x][y]
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn is_central(&self, z: usize) -> bool {
        (0..self.order()).all(|x| self.mult[x][z] == self.mult[z][x])
    }

    /// Subgroup generated by `gens`, as a membership mask.
    pub fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mult[x][s];
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Greedy generating set: scan elements in order, keeping each one not yet
    /// generated.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = self.closure(&gens);
        for x in 0..self.order() {
            if !inside[x] {
                gens.push(x);
                inside = self.closure(&gens);
            }
        }
        gens
    }

    /// Breadth-first spanning tree from the identity along right
    /// multiplication by `gens`: `(parent, generator slot)` per element, with
    /// the elements in visiting order.
    pub fn spanning_tree(&self, gens: &[usize]) -> Result<SpanningTree> {
        let mut parent = vec![None; self.order()];
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut order = vec![self.identity];
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (k, &s) in gens.iter().enumerate() {
                let y = self.mult[x][s];
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, k));
                    order.push(y);
                    queue.push_back(y);
                }
            }
        }
        if order.len() != self.order() {
            return Err(Error::Dimension("elements do not generate the group".into()));
        }
        Ok((parent, order))
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new((0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect())
    }

    /// Symmetries of a regular `n`-gon, order `2n`: element `k` is rotation
    /// `r^k`, element `n + k` is `s r^k`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension("dihedral group needs n >= 1".into()));
        }
        let decode = |x: usize| (x >= n, x % n);
        let encode = |f: bool, k: usize| if f { n + k } else { k };
        let mult = (0..2 * n)
            .map(|x| {
                (0..2 * n)
                    .map(|y| {
                        let (fx, kx) = decode(x);
                        let (fy, ky) = decode(y);
                        // r^k s = s r^-k
                        let k = if fy { (n - kx % n + ky) % n } else { (kx + ky) % n };
                        encode(fx ^ fy, k)
                    })
                    .collect()
            })
            .collect();
        Self::new(mult)
    }

    /// Text form: a line `order n`, then `n` rows of the table.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let head = lines.next().ok_or_else(|| Error::Parse("empty group file".into()))?;
        let n: usize = head
            .strip_prefix("order")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("expected 'order N', got {head:?}")))?;
        let mult = lines
            .map(|l| {
                l.split_whitespace()
                    .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad table entry {t:?}"))))
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if mult.len() != n {
            return Err(Error::Parse(format!("expected {n} table rows, got {}", mult.len())));
        }
        Self::new(mult)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("order {}\n", self.order());
        for row in &self.mult {
            let r: Vec<String> = row.iter().map(ToString::to_string).collect();
            s.push_str(&r.join(" "));
            s.push('\n');
        }
        s
    }
}

/// The group generated by integer matrices acting modulo `modulus`, with its
/// elements (entries in `0..modulus`) in table order. The identity is element 0.
pub fn matrix_group(gens: &[IntMatrix], modulus: u64) -> Result<(FiniteGroupTable, Vec<IntMatrix>)> {
    if modulus < 2 {
        return Err(Error::InvalidModulus(modulus));
    }
    let n = gens.first().map_or(0, IntMatrix::rows);
    if gens.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(Error::Dimension("generators must be square of equal size".into()));
    }
    let m = BigInt::from(modulus);
    let gens: Vec<IntMatrix> = gens.iter().map(|g| g.reduce_mod(&m)).collect();
    let id = IntMatrix::identity(n);
    let mut elems = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut k = 0;
    while k < elems.len() {
        for g in &gens {
            let y = elems[k].mul(g)?.reduce_mod(&m);
            if !index.contains_key(&y) {
                if elems.len() >= 1 << 16 {
                    return Err(Error::TooLarge("matrix group has more than 65536 elements".into()));
                }
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
        k += 1;
    }
    let mult = elems
        .iter()
        .map(|x| {
            elems
                .iter()
                .map(|y| Ok(index[&x.mul(y)?.reduce_mod(&m)]))
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((FiniteGroupTable::new(mult)?, elems))
}

/// `SL_2(Z/n)` on its natural module, generated by the two elementary matrices.
pub fn special_linear_2(n: u64) -> Result<(FiniteGroupTable, Vec<IntMatrix>)> {
    matrix_group(
        &[
            IntMatrix::from_i64(&[&[1, 1], &[0, 1]]),
            IntMatrix::from_i64(&[&[1, 0], &[1, 1]]),
        ],
        n,
    )
}
