use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::maps::{build_standard_maps, sp_generator_action, StandardMaps};
use super::module::ModuleMap;
use crate::error::{Error, Result};
use crate::linalg::modp::rank_mod_p;
use crate::linalg::{kernel_basis, mod_floor, smith_divisors, solve_in_image, IntMatrix};
use crate::report::{int_list, Report};

/// `c ∘ i = (g - 1) id` on `H`.
pub fn check_ci_identity(g: usize) -> Result<Report> {
    let maps = build_standard_maps(g)?;
    let ci = maps.c.compose(&maps.i)?;
    let want = IntMatrix::scalar(2 * g, g as i64 - 1);
    let mut r = Report::new(format!("c o i = (g-1) id, g = {g}"));
    r.set("genus", g);
    r.set("rank_H", 2 * g);
    r.set("rank_L", maps.i.target.rank);
    r.set("weight_shift", ci.weight_shift);
    r.set("factor", g as i64 - 1);
    if !r.check("c o i", ci.matrix == want, format!("expected {} * id", g as i64 - 1)) {
        return Err(Error::IdentityFailed(format!("c o i != (g-1) id at g = {g}")));
    }
    Ok(r)
}

/// `x` split as `(c(x), p(x)) ∈ H ⊕ L/H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub genus: usize,
    pub h: Vec<BigInt>,
    pub lmodh: Vec<BigInt>,
}

fn require_genus_two(g: usize) -> Result<()> {
    if g < 2 {
        return Err(Error::Dimension("decomposition needs g >= 2 (g - 1 invertible)".into()));
    }
    Ok(())
}

pub fn decompose(g: usize, x: &[BigInt]) -> Result<Decomposition> {
    require_genus_two(g)?;
    let maps = build_standard_maps(g)?;
    Ok(Decomposition {
        genus: g,
        h: maps.c.apply(x)?,
        lmodh: maps.p.apply(x)?,
    })
}

/// Rational reconstruction `x = (i(h) + embed(e)) / (g - 1)`.
pub fn reconstruct(d: &Decomposition) -> Result<Vec<BigRational>> {
    require_genus_two(d.genus)?;
    let maps = build_standard_maps(d.genus)?;
    let num = add_vec(&maps.i.apply(&d.h)?, &maps.embed.apply(&d.lmodh)?);
    let den = BigInt::from(d.genus as i64 - 1);
    Ok(num.into_iter().map(|v| BigRational::new(v, den.clone())).collect())
}

/// Reconstruction over `Z/modulus`; needs `g - 1` to be a unit.
pub fn reconstruct_mod(d: &Decomposition, modulus: u64) -> Result<Vec<BigInt>> {
    require_genus_two(d.genus)?;
    if modulus < 2 {
        return Err(Error::InvalidModulus(modulus));
    }
    let n = BigInt::from(modulus);
    let gm1 = BigInt::from(d.genus as i64 - 1);
    let e = gm1.extended_gcd(&n);
    if !e.gcd.is_one() {
        return Err(Error::NotAUnit {
            g_minus_1: d.genus as u64 - 1,
            modulus,
        });
    }
    let inv = mod_floor(&e.x, &n);
    let maps = build_standard_maps(d.genus)?;
    let num = add_vec(&maps.i.apply(&d.h)?, &maps.embed.apply(&d.lmodh)?);
    Ok(num.iter().map(|v| mod_floor(&(v * &inv), &n)).collect())
}

fn add_vec(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Integral identities behind the splitting `L ≅ H ⊕ L/H`.
pub fn check_decomposition(g: usize) -> Result<Report> {
    require_genus_two(g)?;
    let maps = build_standard_maps(g)?;
    let gm1 = BigInt::from(g as i64 - 1);
    let nl = maps.p.source.rank;
    let nq = maps.p.target.rank;
    let mut r = Report::new(format!("decomposition L = H + L/H, g = {g}"));
    r.set("genus", g);
    r.set("rank_L", nl);
    r.set("rank_LmodH", nq);
    let ps = maps.p.compose(&maps.section)?;
    r.check("p o section = id", ps.matrix == IntMatrix::identity(nq), "");
    let pi = maps.p.compose(&maps.i)?;
    r.check("p o i = 0", pi.matrix.is_zero(), "");
    let pe = maps.p.compose(&maps.embed)?;
    r.check(
        "p o embed = (g-1) id",
        pe.matrix == IntMatrix::scalar(nq, g as i64 - 1),
        "",
    );
    let ce = maps.c.compose(&maps.embed)?;
    r.check("c o embed = 0", ce.matrix.is_zero(), "");
    let lhs = IntMatrix::identity(nl).scale(&gm1);
    let rhs = maps
        .i
        .compose(&maps.c)?
        .matrix
        .add(&maps.embed.compose(&maps.p)?.matrix)?;
    r.check("(g-1) x = i(c(x)) + embed(p(x))", lhs == rhs, "");
    let mut rt = true;
    for k in 0..nl {
        let x: Vec<BigInt> = (0..nl).map(|j| BigInt::from(i64::from(j == k))).collect();
        let back = reconstruct(&decompose(g, &x)?)?;
        rt &= back
            .iter()
            .zip(&x)
            .all(|(a, b)| *a == BigRational::from_integer(b.clone()));
    }
    r.check("rational round trip on basis", rt, "");
    if let Some(f) = r.first_failure() {
        return Err(Error::IdentityFailed(f.name.clone()));
    }
    Ok(r)
}

/// `0 -> Λ³H -> H ⊗ Gr² -> Gr³ -> 0` is exact over the integers.
pub fn jacobi_exactness(g: usize) -> Result<Report> {
    let maps = build_standard_maps(g)?;
    let f = &maps.f.matrix;
    let b = &maps.bracket3.matrix;
    let mut r = Report::new(format!("Jacobi sequence exactness, g = {g}"));
    r.set("genus", g);
    r.set("rank_Lambda3", f.cols());
    r.set("rank_H_tensor_Gr2", f.rows());
    r.set("rank_Gr3", b.rows());

    let fd = smith_divisors(f);
    let f_rank = fd.iter().filter(|d| !d.is_zero()).count();
    r.set("f_divisors", int_list(&fd));
    if !r.check(
        "f injective",
        f_rank == f.cols(),
        format!("rank {f_rank} of {}", f.cols()),
    ) {
        return Err(exactness("f injective", &r));
    }
    let bd = smith_divisors(b);
    let b_rank = bd.iter().filter(|d| !d.is_zero()).count();
    r.set("bracket3_divisors", int_list(&bd));
    let onto = b_rank == b.rows() && bd.iter().take(b_rank).all(One::is_one);
    if !r.check("bracket3 surjective", onto, format!("rank {b_rank} of {}", b.rows())) {
        return Err(exactness("bracket3 surjective", &r));
    }
    let comp = maps.bracket3.compose(&maps.f)?;
    if !r.check("bracket3 o f = 0", comp.matrix.is_zero(), "") {
        return Err(exactness("bracket3 o f = 0", &r));
    }
    let ker = kernel_basis(b);
    let inside = ker.iter().all(|v| solve_in_image(f, v).is_some());
    let detail = format!("{} kernel vectors", ker.len());
    if !r.check("ker bracket3 in im f", inside && ker.len() == f.cols(), detail) {
        return Err(exactness("ker bracket3 = im f", &r));
    }
    r.set("rank_identity", format!("{} + {} = {}", f.cols(), b.rows(), f.rows()));
    Ok(r)
}

fn exactness(stage: &str, r: &Report) -> Error {
    Error::ExactnessFailed {
        stage: stage.to_string(),
        detail: r.to_text(),
    }
}

/// Mod-2 behaviour of the two copies of `L/H` inside `L`: the explicit map
/// `embed`, and the kernel of `c`.
pub fn mod2_embedding_report(g: usize) -> Result<Report> {
    require_genus_two(g)?;
    let maps = build_standard_maps(g)?;
    let nq = maps.p.target.rank;
    let embed_rank = rank_mod_p(&maps.embed.matrix, 2);
    let ker = kernel_basis(&maps.c.matrix);
    let kmat = if ker.is_empty() {
        IntMatrix::zeros(maps.c.source.rank, 0)
    } else {
        IntMatrix::from_columns(maps.c.source.rank, &ker)?
    };
    let ker_rank = rank_mod_p(&kmat, 2);
    let c_div = smith_divisors(&maps.c.matrix);
    let mut r = Report::new(format!("(L/H)/2 -> L/2, g = {g}"));
    r.set("genus", g);
    r.set("rank_LmodH", nq);
    r.set("embed_rank_mod2", embed_rank);
    r.set("ker_c_rank_mod2", ker_rank);
    r.set("c_divisors", int_list(&c_div));
    r.check("ker c injects mod 2", ker.len() == nq && ker_rank == nq, "");
    r.check(
        "c surjective",
        c_div.iter().all(One::is_one) && c_div.len() == 2 * g,
        "",
    );
    r.check("embed injective mod 2", embed_rank == nq, "");
    Ok(r)
}

/// Every standard map commutes with every symplectic generator.
pub fn check_equivariance(g: usize) -> Result<Report> {
    let maps: std::sync::Arc<StandardMaps> = build_standard_maps(g)?;
    let actions = sp_generator_action(g)?;
    let mut r = Report::new(format!("Sp(2g, Z) equivariance, g = {g}"));
    r.set("generators", actions.len());
    let commutes = |m: &ModuleMap, src: &ModuleMap, dst: &ModuleMap| -> Result<bool> {
        Ok(dst.matrix.mul(&m.matrix)? == m.matrix.mul(&src.matrix)?)
    };
    let (mut ok_i, mut ok_c, mut ok_f, mut ok_p, mut ok_e) = (true, true, true, true, true);
    for a in &actions {
        ok_i &= commutes(&maps.i, &a.on_h, &a.on_l)?;
        ok_c &= commutes(&maps.c, &a.on_l, &a.on_h)?;
        ok_f &= commutes(&maps.f, &a.on_l, &a.on_h_gr2)?;
        ok_p &= commutes(&maps.p, &a.on_l, &a.on_lmodh)?;
        ok_e &= commutes(&maps.embed, &a.on_lmodh, &a.on_l)?;
    }
    r.check("i", ok_i, "");
    r.check("c", ok_c, "");
    r.check("f", ok_f, "");
    r.check("p", ok_p, "");
    r.check("embed", ok_e, "");
    if let Some(f) = r.first_failure() {
        return Err(Error::IdentityFailed(format!("{} is not equivariant", f.name)));
    }
    Ok(r)
}
