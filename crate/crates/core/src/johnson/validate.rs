use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::sparse::sparse_from_dense;
use crate::magnus::{filtration_degree, gr_class, surface_gr_capped, surface_relator, Filtration};

use super::endo::GroupEndo;

/// How the relator condition is certified.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum ValidationMode {
    /// `phi(r)` is conjugate to `r` in the free group.
    Strict,
    /// `phi(r) r^-1` lies in `N(r) · L^(m+1)` of the free group.
    Relaxed(usize),
}

impl fmt::Display for ValidationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationMode::Strict => f.write_str("strict"),
            ValidationMode::Relaxed(m) => write!(f, "relaxed {m}"),
        }
    }
}

impl ValidationMode {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "strict" {
            return Ok(ValidationMode::Strict);
        }
        let m = s
            .strip_prefix("relaxed")
            .map(str::trim)
            .and_then(|m| m.parse::<usize>().ok())
            .filter(|&m| m >= 2)
            .ok_or_else(|| Error::Parse(format!("mode must be 'strict' or 'relaxed M' (M >= 2): {s:?}")))?;
        Ok(ValidationMode::Relaxed(m))
    }
}

/// An endo acting trivially on `H` and preserving the relator in the given sense.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorelliEndo {
    endo: GroupEndo,
    mode: ValidationMode,
}

impl TorelliEndo {
    pub fn endo(&self) -> &GroupEndo {
        &self.endo
    }

    pub fn mode(&self) -> ValidationMode {
        self.mode
    }

    pub fn is_relaxed(&self) -> bool {
        matches!(self.mode, ValidationMode::Relaxed(_))
    }

    /// Filtration degree through which the relator is known preserved; `None`
    /// for exact preservation.
    pub fn validated_to_degree(&self) -> Option<usize> {
        match self.mode {
            ValidationMode::Strict => None,
            ValidationMode::Relaxed(m) => Some(m),
        }
    }
}

pub fn validate_endo(phi: &GroupEndo, mode: ValidationMode) -> Result<TorelliEndo> {
    if !phi.acts_trivially_on_h() {
        return Err(Error::NotTorelli("abelianization is not the identity matrix".into()));
    }
    let r = surface_relator(phi.genus());
    match mode {
        ValidationMode::Strict => {
            let img = phi.apply(&r);
            if !img.is_conjugate_to(&r) {
                return Err(Error::NotTorelli(format!(
                    "image of the relator is not conjugate to it (cyclic reduction has length {} vs {})",
                    img.cyclic_reduce().len(),
                    r.len()
                )));
            }
        }
        ValidationMode::Relaxed(m) => relator_defect(phi, m)?,
    }
    Ok(TorelliEndo {
        endo: phi.clone(),
        mode,
    })
}

/// Strips `phi(r) r^-1` degree by degree with words from the normal closure
/// of `r`, failing if some class leaves the ideal before degree `m + 1`.
fn relator_defect(phi: &GroupEndo, m: usize) -> Result<()> {
    let g = phi.genus();
    let r = surface_relator(g);
    let mut w = phi.apply(&r).mul(&r.inverse());
    loop {
        let d = match filtration_degree(&w, m) {
            Filtration::AtLeast(_) => return Ok(()),
            Filtration::Degree(d) => d,
        };
        let cls = gr_class(&w, m)?;
        let s = surface_gr_capped(g, d, usize::MAX)?;
        let v = sparse_from_dense(&cls.dense_coords(d));
        let Some(coeffs) = s.ideal_coefficients(&v) else {
            return Err(Error::NotTorelli(format!(
                "relator not preserved modulo degree {}: the degree-{d} defect is nonzero in the surface quotient",
                d + 1
            )));
        };
        for (k, c) in coeffs {
            let e = i64::try_from(&c).map_err(|_| Error::TooLarge("ideal coefficient".into()))?;
            w = w.mul(&s.ideal_word(k)?.pow(-e));
        }
    }
}
