use super::{Corpus, CorpusEntry};
use crate::error::Result;
use crate::johnson::{symplectic_moves, GroupEndo, ValidationMode};
use crate::magnus::Word;

/// `b_i -> b_i [a_j, a_k]` over the cyclic triples of the first three
/// handles; Torelli modulo `L^4` of the surface group, not an automorphism of it.
pub fn seed_endo() -> GroupEndo {
    GroupEndo::parse("genus 3\nb1 -> b1 [a2, a3]\nb2 -> b2 [a3, a1]\nb3 -> b3 [a1, a2]\n").expect("seed parses")
}

/// Conjugation of the first handle by `[a1, b1]`; preserves the relator.
pub fn separating_twist(g: usize) -> GroupEndo {
    let c = Word::parse(g, "[a1, b1]").expect("commutator parses");
    let a1 = Word::parse(g, "a1").expect("generator").conjugate_by(&c);
    let b1 = Word::parse(g, "b1").expect("generator").conjugate_by(&c);
    GroupEndo::from_assignments(g, &[(0, a1), (g as u8, b1)]).expect("twist endo")
}

// Conjugating sequences for the seed, applied left to right. The first
// thirteen raise the rank of the τ span one step at a time; the rest are
// extra regression data.
const SEED_CONJUGATORS: &[&[&str]] = &[
    &["A1"],
    &["A2"],
    &["A3"],
    &["A1", "A2"],
    &["A1", "A3"],
    &["A2", "A3"],
    &["A2", "M12"],
    &["A3", "M23"],
    &["A1", "A2", "A3"],
    &["A1", "A3", "M23"],
    &["A2", "A3", "M12"],
    &["A2", "M12", "S23"],
    &["A1", "A3", "M23", "S12"],
    &["B1"],
    &["B2"],
    &["B3"],
    &["M12"],
    &["M23"],
    &["S12"],
];

/// The shipped genus-3 corpus with every value unfrozen.
pub fn g3_recipe() -> Result<Corpus> {
    let g = 3;
    let moves = symplectic_moves(g)?;
    let mut entries = Vec::new();
    for i in 0..2 * g as u8 {
        let x = Word::generator(g, i);
        entries.push(CorpusEntry {
            id: format!("inner-{x}"),
            endo: GroupEndo::inner(&x),
            mode: ValidationMode::Strict,
            expected_tau: None,
            provenance: format!("derived: pipeline tau of u -> {x} u {x}^-1"),
        });
    }
    let seed = seed_endo();
    entries.push(CorpusEntry {
        id: "seed".into(),
        endo: seed.clone(),
        mode: ValidationMode::Relaxed(3),
        expected_tau: None,
        provenance: "derived: pipeline tau of the seed".into(),
    });
    for seq in SEED_CONJUGATORS {
        let mut phi = seed.clone();
        for label in *seq {
            let m = moves.iter().find(|m| m.label == *label).expect("known move label");
            phi = m.conjugate(&phi);
        }
        entries.push(CorpusEntry {
            id: format!("seed-{}", seq.join("-")),
            endo: phi,
            mode: ValidationMode::Relaxed(3),
            expected_tau: None,
            provenance: format!("derived: pipeline tau of the seed conjugated by {}", seq.join(" then ")),
        });
    }
    entries.push(CorpusEntry {
        id: "separating-twist".into(),
        endo: separating_twist(g),
        mode: ValidationMode::Strict,
        expected_tau: None,
        provenance: "derived: pipeline tau of the handle-1 conjugation by [a1, b1]".into(),
    });
    Ok(Corpus { oracle: None, entries })
}
