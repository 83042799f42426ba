//! Cohomology of finite groups with finite coefficients: invariants from
//! generator matrices, `H¹` from a full multiplication table, and the mod-2
//! Bockstein.

pub mod cohomology;
pub mod group;
pub mod module;
pub mod sp;

pub use cohomology::{bockstein_check, h1_bruteforce, invariants_mod_p, H1Group, H1_SIZE_LIMIT};
pub use group::{matrix_group, special_linear_2, FiniteGroupTable};
pub use module::FiniteModule;
pub use sp::{sp_invariants_mod_p, sp_invariants_report};
