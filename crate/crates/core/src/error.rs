use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("mass must be finite and non-negative, got {0}")]
    InvalidMass(f64),
    #[error("wave vector has zero frequency (massless mode with k = 0)")]
    ZeroFrequency,
    #[error("helicity basis is undefined for k = 0")]
    ZeroWaveVector,
    #[error("branch label must be in 1..=4, got {0}")]
    InvalidBranch(u8),
    #[error("operation requires {expected} solution, got {found}")]
    WrongKind {
        expected: &'static str,
        found: &'static str,
    },
    #[error("operation requires a massive field (m > 0)")]
    MasslessUnsupported,
    #[error("operation requires a massless field (m = 0), got m = {0}")]
    MassiveUnsupported(f64),
    #[error("sample point at |x| = {0} is too close to the Coulomb singularity")]
    SingularSample(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}
