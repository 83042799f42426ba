//! Word-level automorphisms and the Johnson homomorphism.

pub mod endo;
pub mod moves;
pub mod tau;
pub mod validate;

pub use endo::GroupEndo;
pub use moves::{handle_mix, handle_swap, symplectic_moves, twist_a, twist_b, SymplecticMove};
pub use tau::{f_map, inner_endo, johnson_tau, tau_tilde};
pub use validate::{validate_endo, TorelliEndo, ValidationMode};
