use num_bigint::BigInt;
use num_traits::One;

use super::expand::magnus_expand;
use super::surface::surface_gr_capped;
use super::word::Word;
use crate::error::{Error, Result};
use crate::free_lie::assoc_coords;
use crate::johnson::GroupEndo;
use crate::linalg::IntMatrix;

/// Quotient coordinates in degree `n + 1` of `phi(u) u^-1`, for a word `u`
/// whose image `phi(u) u^-1` must lie in filtration degree `n + 1`.
pub fn epsilon_on_word(phi: &GroupEndo, u: &Word, n: usize, max_degree: usize) -> Result<Vec<BigInt>> {
    let target = surface_gr_capped(phi.genus(), n + 1, max_degree)?;
    let w = phi.apply(u).mul(&u.inverse());
    let mut p = magnus_expand(&w, n + 1);
    p.add_term(Vec::new(), -BigInt::one());
    if let Some(d) = p.lowest_degree().filter(|&d| d <= n) {
        return Err(Error::LiftDegreeError {
            lift: u.to_text(),
            expected: n + 1,
            found: d,
        });
    }
    let cls = assoc_coords(&p.homogeneous_part(n + 1), 2 * phi.genus())?;
    Ok(target.project(&cls))
}

/// Matrix of `epsilon_n(phi)`: column `j` is the image of basis element `j`
/// of degree `n`, in degree-`n + 1` quotient coordinates.
pub fn epsilon_n(phi: &GroupEndo, n: usize, max_degree: usize) -> Result<IntMatrix> {
    if n == 0 {
        return Err(Error::Dimension("degree must be at least 1".into()));
    }
    if !phi.acts_trivially_on_h() {
        return Err(Error::NotTorelliModN {
            degree: 1,
            reason: "abelianization is not the identity".into(),
        });
    }
    let source = surface_gr_capped(phi.genus(), n, max_degree)?;
    let target = surface_gr_capped(phi.genus(), n + 1, max_degree)?;
    let mut cols = Vec::with_capacity(source.rank());
    for j in 0..source.rank() {
        let col = epsilon_on_word(phi, &source.lift_word(j), n, max_degree).map_err(|e| match e {
            Error::LiftDegreeError { found, .. } if n >= 2 => Error::NotTorelliModN {
                degree: n,
                reason: format!("acts nontrivially in degree {found} on the lift of basis element {j}"),
            },
            other => other,
        })?;
        cols.push(col);
    }
    IntMatrix::from_columns(target.rank(), &cols)
}
