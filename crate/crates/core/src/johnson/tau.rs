use num_bigint::BigInt;
use num_traits::Zero;

use super::endo::GroupEndo;
use super::validate::TorelliEndo;
use crate::error::{Error, Result};
use crate::free_lie::DEFAULT_MAX_DEGREE;
use crate::linalg::solve_in_image;
use crate::magnus::{epsilon_n, Word};
use crate::sp_modules::{build_standard_maps, ModuleMap};

/// `Σ_j a_j ⊗ ε₁(b_j) - b_j ⊗ ε₁(a_j)` in `H ⊗ Gr²`, index `h * rank(Gr²) + k`.
pub fn tau_tilde(phi: &TorelliEndo) -> Result<Vec<BigInt>> {
    let phi = phi.endo();
    let g = phi.genus();
    let e1 = epsilon_n(phi, 1, DEFAULT_MAX_DEGREE)?;
    let r2 = e1.rows();
    let mut out = vec![BigInt::zero(); 2 * g * r2];
    for j in 0..g {
        let (a, b) = (j, g + j);
        for k in 0..r2 {
            out[a * r2 + k] += &e1[(k, b)];
            out[b * r2 + k] -= &e1[(k, a)];
        }
    }
    Ok(out)
}

pub fn f_map(g: usize) -> Result<ModuleMap> {
    Ok(build_standard_maps(g)?.f.clone())
}

/// The unique `x ∈ Λ³H` with `f(x) = tau_tilde(phi)`.
pub fn johnson_tau(phi: &TorelliEndo) -> Result<Vec<BigInt>> {
    let t = tau_tilde(phi)?;
    let maps = build_standard_maps(phi.endo().genus())?;
    solve_in_image(&maps.f.matrix, &t).ok_or(Error::NotInImage)
}

/// `u -> w u w^-1` on every generator.
pub fn inner_endo(w: &Word) -> GroupEndo {
    GroupEndo::inner(w)
}
