//! Symplectic module maps around `L = Λ³H(-1)`: wedging with `q`, contraction,
//! the cokernel `L/H`, the map into `H ⊗ Gr²`, and symplectic generator actions.

mod checks;
mod maps;
mod module;

pub use checks::{
    check_ci_identity, check_decomposition, check_equivariance, decompose, jacobi_exactness, mod2_embedding_report,
    reconstruct, reconstruct_mod, Decomposition,
};
pub use maps::{
    build_standard_maps, exterior_power, gr2_module, h_module, induced_action, is_symplectic, kronecker, l_module,
    lyndon_label, omega, sort_with_sign, sp_generator_action, sp_generators, symplectic_form, transvection,
    wedge2_module, wedge2_q, wedge_basis, SpAction, StandardMaps,
};
pub use module::{BasedModule, ModuleKind, ModuleMap};
