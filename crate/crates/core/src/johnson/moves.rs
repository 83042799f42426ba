//! Word-level automorphisms preserving the surface relator up to conjugacy,
//! with explicit inverses. Their abelianizations generate `Sp(2g, Z)`.

use super::endo::GroupEndo;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::magnus::{surface_relator, Word};
use crate::sp_modules::exterior_power;

#[derive(Clone, Debug)]
pub struct SymplecticMove {
    pub label: String,
    pub forward: GroupEndo,
    pub inverse: GroupEndo,
}

impl SymplecticMove {
    fn new(label: String, forward: GroupEndo, inverse: GroupEndo) -> Result<Self> {
        let m = SymplecticMove {
            label,
            forward,
            inverse,
        };
        if !m.preserves_relator() {
            return Err(Error::IdentityFailed(format!("{} moves the relator", m.label)));
        }
        Ok(m)
    }

    pub fn genus(&self) -> usize {
        self.forward.genus()
    }

    /// Action on `H`.
    pub fn matrix(&self) -> &IntMatrix {
        self.forward.abelianization()
    }

    pub fn on_lambda3(&self) -> IntMatrix {
        exterior_power(self.matrix(), 3)
    }

    pub fn preserves_relator(&self) -> bool {
        let r = surface_relator(self.genus());
        self.forward.apply(&r).is_conjugate_to(&r) && self.inverse.apply(&r).is_conjugate_to(&r)
    }

    /// `psi phi psi^-1`
    pub fn conjugate(&self, phi: &GroupEndo) -> GroupEndo {
        self.forward.compose(&phi.compose(&self.inverse))
    }

    pub fn inverted(&self) -> SymplecticMove {
        SymplecticMove {
            label: format!("{}^-1", self.label),
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }
}

fn a(g: usize, i: usize) -> Word {
    Word::a(g, i)
}

fn b(g: usize, i: usize) -> Word {
    Word::b(g, i)
}

fn gen_a(i: usize) -> u8 {
    (i - 1) as u8
}

fn gen_b(g: usize, i: usize) -> u8 {
    (g + i - 1) as u8
}

fn check_handle(g: usize, i: usize, span: usize) -> Result<()> {
    if i == 0 || i + span > g {
        return Err(Error::Dimension(format!(
            "handle {i} (+{span}) out of range for genus {g}"
        )));
    }
    Ok(())
}

/// `a_i -> a_i b_i`
pub fn twist_a(g: usize, i: usize) -> Result<SymplecticMove> {
    check_handle(g, i, 0)?;
    let f = GroupEndo::from_assignments(g, &[(gen_a(i), a(g, i).mul(&b(g, i)))])?;
    let v = GroupEndo::from_assignments(g, &[(gen_a(i), a(g, i).mul(&b(g, i).inverse()))])?;
    SymplecticMove::new(format!("A{i}"), f, v)
}

/// `b_i -> b_i a_i`
pub fn twist_b(g: usize, i: usize) -> Result<SymplecticMove> {
    check_handle(g, i, 0)?;
    let f = GroupEndo::from_assignments(g, &[(gen_b(g, i), b(g, i).mul(&a(g, i)))])?;
    let v = GroupEndo::from_assignments(g, &[(gen_b(g, i), b(g, i).mul(&a(g, i).inverse()))])?;
    SymplecticMove::new(format!("B{i}"), f, v)
}

/// Exchanges handles `i` and `i + 1`.
pub fn handle_swap(g: usize, i: usize) -> Result<SymplecticMove> {
    check_handle(g, i, 1)?;
    let j = i + 1;
    let c = Word::commutator(&a(g, i), &b(g, i));
    let d = Word::commutator(&a(g, j), &b(g, j));
    let dinv = d.inverse();
    let f = GroupEndo::from_assignments(
        g,
        &[
            (gen_a(i), a(g, j).conjugate_by(&c)),
            (gen_b(g, i), b(g, j).conjugate_by(&c)),
            (gen_a(j), a(g, i)),
            (gen_b(g, j), b(g, i)),
        ],
    )?;
    let v = GroupEndo::from_assignments(
        g,
        &[
            (gen_a(i), a(g, j)),
            (gen_b(g, i), b(g, j)),
            (gen_a(j), a(g, i).conjugate_by(&dinv)),
            (gen_b(g, j), b(g, i).conjugate_by(&dinv)),
        ],
    )?;
    SymplecticMove::new(format!("S{i}{j}"), f, v)
}

/// Mixes handles `i` and `i + 1`: on `H`, `a_i -> a_i + a_j` and
/// `b_j -> b_j + a_j - b_i`. The other handles are conjugated so that the
/// relator maps to a conjugate of itself.
pub fn handle_mix(g: usize, i: usize) -> Result<SymplecticMove> {
    check_handle(g, i, 1)?;
    let j = i + 1;
    let (ai, bi, aj, bj) = (a(g, i), b(g, i), a(g, j), b(g, j));
    let bi_inv = bi.inverse();
    let aj_inv = aj.inverse();
    let mut f_img = vec![
        (gen_a(i), aj.mul(&ai)),
        (gen_a(j), aj.conjugate_by(&bi)),
        (gen_b(g, j), aj.mul(&bj).mul(&bi_inv)),
    ];
    let mut v_img = vec![
        (gen_a(i), bi_inv.mul(&aj_inv).mul(&bi).mul(&ai)),
        (gen_a(j), aj.conjugate_by(&bi_inv)),
        (gen_b(g, j), bi_inv.mul(&aj_inv).mul(&bi).mul(&bj).mul(&bi)),
    ];
    let pair = Word::commutator(&ai, &bi).mul(&Word::commutator(&aj, &bj));
    let f2 = GroupEndo::from_assignments(g, &f_img)?;
    let v2 = GroupEndo::from_assignments(g, &v_img)?;
    let u = f2
        .apply(&pair)
        .conjugator_to(&pair)
        .ok_or_else(|| Error::IdentityFailed("handle mix does not preserve the handle pair".into()))?;
    let w = v2.apply(&u).inverse();
    for k in (1..=g).filter(|&k| k != i && k != j) {
        for (x, gx) in [(a(g, k), gen_a(k)), (b(g, k), gen_b(g, k))] {
            f_img.push((gx, x.conjugate_by(&u)));
            v_img.push((gx, x.conjugate_by(&w)));
        }
    }
    let f = GroupEndo::from_assignments(g, &f_img)?;
    let v = GroupEndo::from_assignments(g, &v_img)?;
    SymplecticMove::new(format!("M{i}{j}"), f, v)
}

/// Twists on every handle, plus swaps and mixes of adjacent handles.
pub fn symplectic_moves(g: usize) -> Result<Vec<SymplecticMove>> {
    let mut out = Vec::new();
    for i in 1..=g {
        out.push(twist_a(g, i)?);
        out.push(twist_b(g, i)?);
    }
    for i in 1..g {
        out.push(handle_swap(g, i)?);
        out.push(handle_mix(g, i)?);
    }
    Ok(out)
}
