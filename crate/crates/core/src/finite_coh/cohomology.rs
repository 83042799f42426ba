use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::group::FiniteGroupTable;
use super::module::FiniteModule;
use crate::error::{Error, Result};
use crate::linalg::modp::{is_prime, nullspace_mod_p};
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::report::{int_list, Report};

/// Dense cocycle systems are refused past `order * rank` of this size.
pub const H1_SIZE_LIMIT: usize = 4096;

const MODULUS_LIMIT: u64 = 1 << 31;

/// Common fixed vectors of the given matrices over the field with `p`
/// elements.
pub fn invariants_mod_p(actions: &[IntMatrix], rank: usize, p: u64) -> Result<Vec<Vec<u64>>> {
    if !is_prime(p) {
        return Err(Error::InvalidModulus(p));
    }
    let mut stacked = IntMatrix::zeros(0, rank);
    for a in actions {
        if a.rows() != rank || a.cols() != rank {
            return Err(Error::Dimension(format!("action matrices must be {rank} x {rank}")));
        }
        stacked = stacked.vstack(&a.sub(&IntMatrix::identity(rank))?)?;
    }
    Ok(nullspace_mod_p(&stacked, p))
}

/// `H¹(G, M)` computed from cocycle values on a generating set.
#[derive(Clone, Debug)]
pub struct H1Group {
    modulus: i128,
    rank: usize,
    generators: Vec<usize>,
    /// Upper-triangular basis of the row lattice of cocycle constraints
    /// together with `n Z^k`.
    hnf: Vec<Vec<i128>>,
    left: IntMatrix,
    diag: Vec<BigInt>,
}

impl H1Group {
    /// Invariant factors `d_1 | d_2 | ...`, all greater than 1.
    pub fn divisors(&self) -> Vec<BigInt> {
        self.diag.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn order(&self) -> BigInt {
        self.diag.iter().product()
    }

    pub fn exponent(&self) -> BigInt {
        self.diag.iter().fold(BigInt::one(), |acc, d| acc.lcm(d))
    }

    pub fn is_trivial(&self) -> bool {
        self.diag.iter().all(One::is_one)
    }

    /// Group elements whose cocycle values are the coordinates of `class_of`.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    fn lattice_coords(&self, u: &[i128]) -> Option<Vec<BigInt>> {
        let n = self.modulus;
        self.hnf
            .iter()
            .map(|row| {
                let s: i128 = row.iter().zip(u).map(|(a, b)| a * b).sum();
                (s.rem_euclid(n) == 0).then(|| BigInt::from(s) / BigInt::from(n))
            })
            .collect()
    }

    /// Class of the cocycle with values `f(s)` on [`Self::generators`],
    /// concatenated; one residue per nontrivial invariant factor.
    pub fn class_of(&self, values: &[BigInt]) -> Result<Vec<BigInt>> {
        if values.len() != self.generators.len() * self.rank {
            return Err(Error::Dimension("one value block per generator".into()));
        }
        let n = BigInt::from(self.modulus);
        let u: Vec<i128> = values
            .iter()
            .map(|v| v.mod_floor(&n).to_i128().expect("reduced"))
            .collect();
        let c = self
            .lattice_coords(&u)
            .ok_or_else(|| Error::IdentityFailed("values do not extend to a cocycle".into()))?;
        let lc = self.left.mul_vec(&c)?;
        Ok(lc
            .iter()
            .zip(&self.diag)
            .filter(|(_, d)| !d.is_one())
            .map(|(x, d)| x.mod_floor(d))
            .collect())
    }
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (d, x, y) = egcd(b, a.rem_euclid(b));
        (d, y, x - a.div_euclid(b) * y)
    }
}

/// Adds `v` to the lattice spanned by the triangular rows `h`.
fn insert_row(h: &mut [Vec<i128>], mut v: Vec<i128>, n: i128) {
    let k = v.len();
    for x in v.iter_mut() {
        *x = x.rem_euclid(n);
    }
    for i in 0..k {
        if v[i] == 0 {
            continue;
        }
        let (a, b) = (h[i][i], v[i]);
        let (d, x, y) = egcd(a, b);
        let (ad, bd) = (a / d, b / d);
        let hi = &h[i];
        let new_h: Vec<i128> = (0..k).map(|j| (x * hi[j] + y * v[j]).rem_euclid(n)).collect();
        let new_v: Vec<i128> = (0..k).map(|j| (ad * v[j] - bd * hi[j]).rem_euclid(n)).collect();
        h[i] = new_h;
        // the pivot is d itself, which divides n
        h[i][i] = d;
        v = new_v;
        v[i] = 0;
    }
}

fn mat_i128(a: &IntMatrix, n: i128) -> Vec<Vec<i128>> {
    (0..a.rows())
        .map(|i| {
            a.row(i)
                .iter()
                .map(|x| x.to_i128().expect("small entry").rem_euclid(n))
                .collect()
        })
        .collect()
}

/// `H¹(G, M) = Z¹ / B¹` by integer linear algebra on cocycle values at a
/// generating set, using a spanning tree of the Cayley graph.
pub fn h1_bruteforce(group: &FiniteGroupTable, module: &FiniteModule) -> Result<H1Group> {
    let r = module.rank();
    if group.order() * r.max(1) > H1_SIZE_LIMIT {
        return Err(Error::TooLarge(format!(
            "order {} x rank {r} exceeds {H1_SIZE_LIMIT}",
            group.order()
        )));
    }
    if module.modulus() > MODULUS_LIMIT {
        return Err(Error::TooLarge(format!("modulus {} exceeds 2^31", module.modulus())));
    }
    if module.actions().len() != group.order() {
        return Err(Error::Dimension("module is not defined on this group".into()));
    }
    let n = module.modulus() as i128;
    let gens = group.generators();
    let k = gens.len() * r;
    let acts: Vec<Vec<Vec<i128>>> = module.actions().iter().map(|a| mat_i128(a, n)).collect();

    // f(x) = coef[x] · u with u the concatenated values on generators
    let (parent, visit) = group.spanning_tree(&gens)?;
    let mut coef = vec![vec![vec![0i128; k]; r]; group.order()];
    // f(p s) = f(p) + p · f(s)
    let step = |cp: &Vec<Vec<i128>>, p: usize, t: usize| -> Vec<Vec<i128>> {
        let mut c = cp.clone();
        for (row, crow) in c.iter_mut().enumerate() {
            for col in 0..r {
                let v = &mut crow[t * r + col];
                *v = (*v + acts[p][row][col]).rem_euclid(n);
            }
        }
        c
    };
    for &x in visit.iter().skip(1) {
        let (p, t) = parent[x].expect("tree edge");
        coef[x] = step(&coef[p], p, t);
    }

    let mut h: Vec<Vec<i128>> = (0..k)
        .map(|i| {
            let mut row = vec![0i128; k];
            row[i] = n;
            row
        })
        .collect();
    for x in 0..group.order() {
        for (t, &s) in gens.iter().enumerate() {
            let y = group.mul(x, s);
            if parent[y] == Some((x, t)) {
                continue;
            }
            let want = step(&coef[x], x, t);
            for row in 0..r {
                let diff: Vec<i128> = (0..k).map(|j| coef[y][row][j] - want[row][j]).collect();
                if diff.iter().any(|&d| d.rem_euclid(n) != 0) {
                    insert_row(&mut h, diff, n);
                }
            }
        }
    }

    // coboundaries v -> (s v - v)_s, plus n Z^k, in lattice coordinates H u / n
    let mut cols: Vec<Vec<i128>> = Vec::with_capacity(r + k);
    for v in 0..r {
        let mut u = vec![0i128; k];
        for (t, &s) in gens.iter().enumerate() {
            for (row, arow) in acts[s].iter().enumerate() {
                let delta = arow[v] - i128::from(row == v);
                u[t * r + row] = delta.rem_euclid(n);
            }
        }
        cols.push(u);
    }
    for i in 0..k {
        let mut u = vec![0i128; k];
        u[i] = n;
        cols.push(u);
    }
    let mut c = IntMatrix::zeros(k, cols.len());
    for (j, u) in cols.iter().enumerate() {
        for (i, row) in h.iter().enumerate() {
            let s: i128 = row.iter().zip(u).map(|(a, b)| a * b).sum();
            debug_assert_eq!(s.rem_euclid(n), 0, "coboundary outside the cocycle lattice");
            c[(i, j)] = BigInt::from(s / n);
        }
    }
    let snf = smith_normal_form(&c);
    let mut diag = snf.diag.clone();
    diag.resize(k, BigInt::zero());
    if diag.iter().any(Zero::is_zero) {
        return Err(Error::IdentityFailed("coboundary lattice is not of full rank".into()));
    }
    Ok(H1Group {
        modulus: n,
        rank: r,
        generators: gens,
        hnf: h,
        left: snf.left,
        diag,
    })
}

/// Connecting map `H⁰(G, V/2) -> H¹(G, V)` for `V = (Z/2^k)^r`, from the
/// short exact sequence `V --2--> V' -> V/2` with `V'` the next level: lift
/// `v`, take `(g v - v) / 2`. `lift` carries the action modulo a power of two
/// at least `2^(k+1)`.
pub fn bockstein_check(group: &FiniteGroupTable, lift: &FiniteModule, k: u32) -> Result<Report> {
    let top = lift.modulus();
    if !top.is_power_of_two() {
        return Err(Error::InvalidModulus(top));
    }
    if k == 0 || top.trailing_zeros() <= k {
        return Err(Error::Dimension(format!("need a lift modulo 2^{} for k = {k}", k + 1)));
    }
    let n = 1u64 << k;
    let module = lift.reduce(group, n)?;
    let r = module.rank();
    let h1 = h1_bruteforce(group, &module)?;
    let gens = h1.generators().to_vec();
    let gen_actions: Vec<IntMatrix> = gens.iter().map(|&s| lift.action(s).clone()).collect();
    let h0 = invariants_mod_p(&gen_actions, r, 2)?;
    if h0.len() > 16 {
        return Err(Error::TooLarge("more than 2^16 invariant vectors".into()));
    }

    let mut rep = Report::new(format!("Bockstein H0(V/2) -> H1(V), V = (Z/{n})^{r}"));
    rep.set("group_order", group.order());
    rep.set("k", k);
    rep.set("h0_dim", h0.len());
    rep.set("h1_divisors", int_list(&h1.divisors()));

    let mut classes = HashSet::new();
    let mut well_defined = true;
    for mask in 0u32..(1 << h0.len()) {
        let mut v = vec![0u64; r];
        for (b, basis) in h0.iter().enumerate() {
            if mask >> b & 1 == 1 {
                for (x, y) in v.iter_mut().zip(basis) {
                    *x ^= y;
                }
            }
        }
        let lift: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        let mut values = Vec::with_capacity(gens.len() * r);
        for a in &gen_actions {
            let gv = a.mul_vec(&lift)?;
            for (x, y) in gv.iter().zip(&lift) {
                let d = x - y;
                well_defined &= d.is_even();
                values.push(d / 2);
            }
        }
        match h1.class_of(&values) {
            Ok(c) => {
                classes.insert(c);
            }
            Err(_) => well_defined = false,
        }
    }
    let h0_size = BigInt::one() << h0.len();
    rep.check("lifts give cocycles", well_defined, "");
    rep.check(
        "injective",
        BigInt::from(classes.len()) == h0_size,
        format!("{} distinct classes", classes.len()),
    );
    rep.check(
        "surjective",
        h1.order() == BigInt::from(classes.len()),
        format!("|H1| = {}", h1.order()),
    );
    Ok(rep)
}
