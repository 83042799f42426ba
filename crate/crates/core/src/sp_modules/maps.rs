use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::module::{BasedModule, ModuleKind, ModuleMap};
use crate::error::{Error, Result};
use crate::free_lie::{lie_bracket, LieElement};
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::magnus::{generator_name, surface_gr, SurfaceGr};

/// `ω(e_i, e_j)` with `ω(a_k, b_k) = 1`.
pub fn omega(genus: usize, i: usize, j: usize) -> i64 {
    if i < genus && j == i + genus {
        1
    } else if j < genus && i == j + genus {
        -1
    } else {
        0
    }
}

/// Gram matrix of `ω`.
pub fn symplectic_form(genus: usize) -> IntMatrix {
    let n = 2 * genus;
    let mut j = IntMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            j[(a, b)] = BigInt::from(omega(genus, a, b));
        }
    }
    j
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn wedge_basis(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Sorts indices, returning the sign of the permutation, or `None` on a repeat.
pub fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

fn wedge_position(basis: &[Vec<usize>]) -> HashMap<Vec<usize>, usize> {
    basis.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()
}

/// `k`-th exterior power of a square matrix, in the lexicographic subset basis.
pub fn exterior_power(s: &IntMatrix, k: usize) -> IntMatrix {
    let n = s.rows();
    let basis = wedge_basis(n, k);
    let mut out = IntMatrix::zeros(basis.len(), basis.len());
    for (c, cols) in basis.iter().enumerate() {
        for (r, rows) in basis.iter().enumerate() {
            let sub = s.select_rows(rows).select_cols(cols);
            out[(r, c)] = crate::linalg::determinant(&sub).expect("square minor");
        }
    }
    out
}

pub fn h_module(g: usize) -> BasedModule {
    let labels = (0..2 * g as u8).map(|i| generator_name(g, i)).collect();
    BasedModule::new(ModuleKind::H, g, 0, labels)
}

fn wedge_labels(g: usize, k: usize) -> Vec<String> {
    wedge_basis(2 * g, k)
        .iter()
        .map(|s| {
            s.iter()
                .map(|&i| generator_name(g, i as u8))
                .collect::<Vec<_>>()
                .join("^")
        })
        .collect()
}

pub fn wedge2_module(g: usize) -> BasedModule {
    BasedModule::new(ModuleKind::Wedge2, g, 0, wedge_labels(g, 2))
}

/// `L = Λ³H(-1)`.
pub fn l_module(g: usize) -> BasedModule {
    BasedModule::new(ModuleKind::Lambda3, g, -1, wedge_labels(g, 3))
}

/// Bracket notation for a Lyndon word.
pub fn lyndon_label(g: usize, w: &[u8]) -> String {
    match crate::free_lie::standard_factorization(w) {
        None => generator_name(g, w[0]),
        Some((u, v)) => format!("[{},{}]", lyndon_label(g, u), lyndon_label(g, v)),
    }
}

fn gr_labels(s: &SurfaceGr) -> Vec<String> {
    s.basis_words().iter().map(|w| lyndon_label(s.genus(), w)).collect()
}

pub fn gr2_module(g: usize) -> Result<BasedModule> {
    Ok(BasedModule::new(ModuleKind::Gr2, g, 0, gr_labels(&*surface_gr(g, 2)?)))
}

fn h_tensor_gr2_module(g: usize, twist: i32) -> Result<BasedModule> {
    let h = h_module(g).labels;
    let gr2 = gr2_module(g)?.labels;
    let labels = h
        .iter()
        .flat_map(|x| gr2.iter().map(move |y| format!("{x}*{y}")))
        .collect();
    Ok(BasedModule::new(ModuleKind::HTensorGr2, g, twist, labels))
}

fn gr3_module(g: usize, twist: i32) -> Result<BasedModule> {
    Ok(BasedModule::new(
        ModuleKind::Gr3,
        g,
        twist,
        gr_labels(&*surface_gr(g, 3)?),
    ))
}

/// The fixed maps between `H`, `L`, `L/H`, `Gr²` and `Gr³` for one genus.
#[derive(Debug)]
pub struct StandardMaps {
    pub genus: usize,
    /// `x -> q ∧ x`, `H -> L`.
    pub i: ModuleMap,
    /// Contraction `L -> H`.
    pub c: ModuleMap,
    /// Cokernel projection `L -> L/H`.
    pub p: ModuleMap,
    /// Integral section of `p`.
    pub section: ModuleMap,
    /// `e -> (g-1) s(e) - q ∧ c(s(e))`, independent of the section.
    pub embed: ModuleMap,
    /// `Λ³H(-1) -> (H ⊗ Gr²)(-1)`.
    pub f: ModuleMap,
    /// `Λ²H -> Gr²`.
    pub bracket2: ModuleMap,
    /// `(H ⊗ Gr²)(-1) -> Gr³(-1)`.
    pub bracket3: ModuleMap,
}

fn cache() -> &'static RwLock<HashMap<usize, Arc<StandardMaps>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<StandardMaps>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub fn build_standard_maps(g: usize) -> Result<Arc<StandardMaps>> {
    if g == 0 {
        return Err(Error::ZeroGenus);
    }
    if let Some(m) = cache().read().unwrap().get(&g) {
        return Ok(m.clone());
    }
    let built = Arc::new(build(g)?);
    Ok(cache().write().unwrap().entry(g).or_insert(built).clone())
}

fn i_matrix(g: usize) -> IntMatrix {
    let n = 2 * g;
    let b3 = wedge_basis(n, 3);
    let pos = wedge_position(&b3);
    let mut m = IntMatrix::zeros(b3.len(), n);
    for x in 0..n {
        for j in 0..g {
            if let Some((s, sign)) = sort_with_sign(&[j, g + j, x]) {
                m[(pos[&s], x)] += BigInt::from(sign);
            }
        }
    }
    m
}

fn c_matrix(g: usize) -> IntMatrix {
    let n = 2 * g;
    let b3 = wedge_basis(n, 3);
    let mut m = IntMatrix::zeros(n, b3.len());
    for (col, t) in b3.iter().enumerate() {
        let (x, y, z) = (t[0], t[1], t[2]);
        for (u, v, w) in [(x, y, z), (y, z, x), (z, x, y)] {
            m[(w, col)] += BigInt::from(omega(g, u, v));
        }
    }
    m
}

/// Gr² coordinates of `e_x ∧ e_y` as a column of `bracket2`.
fn wedge2_class(bracket2: &IntMatrix, pos2: &HashMap<Vec<usize>, usize>, x: usize, y: usize) -> Vec<BigInt> {
    match sort_with_sign(&[x, y]) {
        None => vec![BigInt::zero(); bracket2.rows()],
        Some((s, sign)) => bracket2.column(pos2[&s]).into_iter().map(|v| v * sign).collect(),
    }
}

fn build(g: usize) -> Result<StandardMaps> {
    let n = 2 * g;
    let h = h_module(g);
    let l = l_module(g);
    let s2 = surface_gr(g, 2)?;
    let s3 = surface_gr(g, 3)?;
    let r2 = s2.rank();

    let i = ModuleMap::new(h.clone(), l.clone(), i_matrix(g))?;
    let c = ModuleMap::new(l.clone(), h.clone(), c_matrix(g))?;

    let snf = smith_normal_form(&i.matrix);
    let rank_i = snf.rank();
    if snf.diag[..rank_i].iter().any(|d| !d.is_one()) {
        return Err(Error::Dimension("q ∧ H is not saturated in Λ³H".into()));
    }
    let tail: Vec<usize> = (rank_i..l.rank).collect();
    let lmodh = BasedModule::new(
        ModuleKind::LmodH,
        g,
        -1,
        (0..tail.len()).map(|k| format!("p{}", k + 1)).collect(),
    );
    let p = ModuleMap::new(l.clone(), lmodh.clone(), snf.left.select_rows(&tail))?;
    let section = ModuleMap::new(lmodh.clone(), l.clone(), snf.left_inv.select_cols(&tail))?;
    let gm1 = BigInt::from(g as i64 - 1);
    let ics = i.matrix.mul(&c.matrix)?.mul(&section.matrix)?;
    let embed_m = section.matrix.scale(&gm1).sub(&ics)?;
    let embed = ModuleMap::new(lmodh, l.clone(), embed_m)?;

    let w2 = wedge2_module(g);
    // Λ² basis and degree-2 Lyndon words are both the increasing pairs
    let bracket2 = ModuleMap::new(w2, gr2_module(g)?, s2.projection_matrix())?;

    let b3 = wedge_basis(n, 3);
    let pos2 = wedge_position(&wedge_basis(n, 2));
    let htg = h_tensor_gr2_module(g, -1)?;
    let mut fm = IntMatrix::zeros(htg.rank, b3.len());
    for (col, t) in b3.iter().enumerate() {
        let (x, y, z) = (t[0], t[1], t[2]);
        for (u, v, w) in [(x, y, z), (y, z, x), (z, x, y)] {
            for (k, val) in wedge2_class(&bracket2.matrix, &pos2, v, w).into_iter().enumerate() {
                fm[(u * r2 + k, col)] += val;
            }
        }
    }
    let f = ModuleMap::new(l, htg.clone(), fm)?;

    let mut b3m = IntMatrix::zeros(s3.rank(), htg.rank);
    for x in 0..n {
        let gx = LieElement::generator(n, x as u8);
        for k in 0..r2 {
            let e = s2.lift(&unit(r2, k));
            let br = lie_bracket(&gx, &e, 3)?;
            for (row, val) in s3.project(&br).into_iter().enumerate() {
                b3m[(row, x * r2 + k)] = val;
            }
        }
    }
    let bracket3 = ModuleMap::new(htg, gr3_module(g, -1)?, b3m)?;

    Ok(StandardMaps {
        genus: g,
        i,
        c,
        p,
        section,
        embed,
        f,
        bracket2,
        bracket3,
    })
}

fn unit(n: usize, k: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[k] = BigInt::one();
    v
}

/// Transvection `x -> x + ω(x, v) v`.
pub fn transvection(g: usize, v: &[i64]) -> IntMatrix {
    let n = 2 * g;
    let mut m = IntMatrix::identity(n);
    for k in 0..n {
        let w: i64 = (0..n).map(|j| omega(g, k, j) * v[j]).sum();
        for r in 0..n {
            m[(r, k)] += BigInt::from(w * v[r]);
        }
    }
    m
}

/// The `2g²` transvections along `a_i`, `b_i`, `a_i + a_j`, `b_i + b_j`
/// (`i < j`) and `a_i + b_j` (`i ≠ j`), with labels.
pub fn sp_generators(g: usize) -> Vec<(String, IntMatrix)> {
    let n = 2 * g;
    let name = |i: usize| generator_name(g, i as u8);
    let mut vs: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    for i in 0..g {
        for j in i + 1..g {
            vs.push(vec![i, j]);
        }
    }
    for i in 0..g {
        for j in i + 1..g {
            vs.push(vec![g + i, g + j]);
        }
    }
    for i in 0..g {
        for j in 0..g {
            if i != j {
                vs.push(vec![i, g + j]);
            }
        }
    }
    vs.into_iter()
        .map(|support| {
            let mut v = vec![0i64; n];
            for &s in &support {
                v[s] = 1;
            }
            let label = format!("T({})", support.iter().map(|&s| name(s)).collect::<Vec<_>>().join("+"));
            (label, transvection(g, &v))
        })
        .collect()
}

/// Induced actions of one symplectic matrix.
#[derive(Clone, Debug)]
pub struct SpAction {
    pub label: String,
    pub on_h: ModuleMap,
    pub on_wedge2: ModuleMap,
    pub on_gr2: ModuleMap,
    pub on_l: ModuleMap,
    pub on_lmodh: ModuleMap,
    pub on_h_gr2: ModuleMap,
}

/// Kronecker product `a ⊗ b`, indexing `(i, k) -> i * b.rows() + k`.
pub fn kronecker(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut m = IntMatrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a[(i, j)].is_zero() {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    m[(i * b.rows() + k, j * b.cols() + l)] = &a[(i, j)] * &b[(k, l)];
                }
            }
        }
    }
    m
}

/// Checks `SᵀJS = J`.
pub fn is_symplectic(s: &IntMatrix) -> bool {
    if s.rows() != s.cols() || !s.rows().is_multiple_of(2) {
        return false;
    }
    let j = symplectic_form(s.rows() / 2);
    s.transpose()
        .mul(&j)
        .and_then(|m| m.mul(s))
        .map(|m| m == j)
        .unwrap_or(false)
}

/// Actions of a symplectic matrix on all standard modules.
pub fn induced_action(g: usize, label: &str, s: &IntMatrix) -> Result<SpAction> {
    if !is_symplectic(s) || s.rows() != 2 * g {
        return Err(Error::Dimension(format!("{label} is not in Sp({}, Z)", 2 * g)));
    }
    let maps = build_standard_maps(g)?;
    let s2 = surface_gr(g, 2)?;
    let w2 = exterior_power(s, 2);
    let q = wedge2_q(g);
    if w2.mul_vec(&q)? != q {
        return Err(Error::IdentityFailed(format!("{label} does not fix q")));
    }
    let pos2 = wedge_position(&wedge_basis(2 * g, 2));
    let mut sel = IntMatrix::zeros(w2.rows(), s2.rank());
    for (k, w) in s2.basis_words().iter().enumerate() {
        sel[(pos2[&vec![w[0] as usize, w[1] as usize]], k)] = BigInt::one();
    }
    let gr2m = maps.bracket2.matrix.mul(&w2)?.mul(&sel)?;
    let w3 = exterior_power(s, 3);
    let lmodh = maps.p.matrix.mul(&w3)?.mul(&maps.section.matrix)?;
    let hg = kronecker(s, &gr2m);
    Ok(SpAction {
        label: label.to_string(),
        on_h: ModuleMap::endo(h_module(g), s.clone())?,
        on_wedge2: ModuleMap::endo(wedge2_module(g), w2)?,
        on_gr2: ModuleMap::endo(gr2_module(g)?, gr2m)?,
        on_l: ModuleMap::endo(l_module(g), w3)?,
        on_lmodh: ModuleMap::endo(maps.p.target.clone(), lmodh)?,
        on_h_gr2: ModuleMap::endo(maps.f.target.clone(), hg)?,
    })
}

pub fn sp_generator_action(g: usize) -> Result<Vec<SpAction>> {
    sp_generators(g)
        .iter()
        .map(|(label, s)| induced_action(g, label, s))
        .collect()
}

/// `q` in the Λ² basis.
pub fn wedge2_q(g: usize) -> Vec<BigInt> {
    let b2 = wedge_basis(2 * g, 2);
    b2.iter()
        .map(|s| BigInt::from(i64::from(s[1] == s[0] + g && s[0] < g)))
        .collect()
}
