use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not a Lie element in degree {degree}")]
    NotLie { degree: usize },

    #[error("degree {degree} exceeds the configured maximum {max}")]
    DegreeOverflow { degree: usize, max: usize },

    #[error("word is trivial through degree {max}")]
    TrivialWithinCap { max: usize },

    #[error("torsion in Gr^{degree} at genus {genus}: divisors {divisors:?}")]
    TorsionFound {
        genus: usize,
        degree: usize,
        divisors: Vec<String>,
    },

    #[error("no unit-pivot quotient basis in Gr^{degree} at genus {genus}")]
    NonStandardQuotient { genus: usize, degree: usize },

    #[error("endomorphism is not Torelli modulo degree {degree}: {reason}")]
    NotTorelliModN { degree: usize, reason: String },

    #[error("phi(u)u^-1 has degree {found}, expected at least {expected} (lift {lift})")]
    LiftDegreeError {
        lift: String,
        expected: usize,
        found: usize,
    },

    #[error("not a Torelli endomorphism: {0}")]
    NotTorelli(String),

    #[error("tau-tilde does not lie in the image of f")]
    NotInImage,

    #[error("identity check failed: {0}")]
    IdentityFailed(String),

    #[error("exactness failed at stage {stage}: {detail}")]
    ExactnessFailed { stage: String, detail: String },

    #[error("g-1 = {g_minus_1} is not a unit modulo {modulus}")]
    NotAUnit { g_minus_1: u64, modulus: u64 },

    #[error("problem too large: {0}")]
    TooLarge(String),

    #[error("invalid modulus {0}")]
    InvalidModulus(u64),

    #[error("genus must be at least 1")]
    ZeroGenus,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Corpus(String),
}
