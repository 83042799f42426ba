pub mod corpus;
pub mod error;
pub mod linalg;

pub use error::{Error, Result};
pub mod finite_coh;
pub mod free_lie;
pub mod johnson;
pub mod magnus;
pub mod report;
pub mod sp_modules;
