//! Free-group words, the Magnus expansion, and graded pieces of the surface group.

pub mod epsilon;
pub mod expand;
pub mod surface;
pub mod word;

pub use epsilon::{epsilon_n, epsilon_on_word};
pub use expand::{filtration_degree, gr_class, magnus_expand, Filtration};
pub use surface::{lyndon_word_lift, relator_class, surface_gr, surface_gr_capped, IdealGenerator, SurfaceGr};
pub use word::{generator_name, surface_relator, Letter, Word};
