use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::report::Report;
use crate::sp_modules::{build_standard_maps, sp_generator_action, ModuleKind};

use super::cohomology::invariants_mod_p;

fn generator_matrices(g: usize, kind: ModuleKind) -> Result<(usize, Vec<IntMatrix>)> {
    let maps = build_standard_maps(g)?;
    let rank = match kind {
        ModuleKind::H => maps.i.source.rank,
        ModuleKind::Lambda3 => maps.i.target.rank,
        ModuleKind::LmodH => maps.p.target.rank,
        other => {
            return Err(Error::Dimension(format!(
                "no invariant computation for {}",
                other.name()
            )))
        }
    };
    let mats = sp_generator_action(g)?
        .into_iter()
        .map(|a| match kind {
            ModuleKind::H => a.on_h.matrix,
            ModuleKind::Lambda3 => a.on_l.matrix,
            _ => a.on_lmodh.matrix,
        })
        .collect();
    Ok((rank, mats))
}

/// Fixed vectors of the transvection generators of `Sp(2g, Z)` on `H/p`,
/// `L/p` or `(L/H)/p`.
pub fn sp_invariants_mod_p(g: usize, kind: ModuleKind, p: u64) -> Result<Vec<Vec<u64>>> {
    let (rank, mats) = generator_matrices(g, kind)?;
    invariants_mod_p(&mats, rank, p)
}

pub fn sp_invariants_report(g: usize, kind: ModuleKind, p: u64) -> Result<Report> {
    let (rank, mats) = generator_matrices(g, kind)?;
    let basis = invariants_mod_p(&mats, rank, p)?;
    let mut r = Report::new(format!("H0(Sp({}, Z/{p}), {}/{p})", 2 * g, kind.name()));
    r.set("genus", g);
    r.set("p", p);
    r.set("rank", rank);
    r.set("generators", mats.len());
    r.set("invariant_dim", basis.len());
    r.set("basis", &basis);
    r.check("no invariants", basis.is_empty(), format!("dimension {}", basis.len()));
    Ok(r)
}
