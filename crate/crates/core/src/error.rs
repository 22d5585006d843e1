use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HeisError {
    #[error("dimension mismatch: expected n = {expected}, found n = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be positive")]
    ZeroDimension,

    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not in {predicate}: {detail}")]
    NotMember {
        predicate: &'static str,
        detail: String,
    },

    #[error("matrix is not symplectic for the extended form")]
    NotSymplectic,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("translation component {value} is not a multiple of the grid spacing {spacing}")]
    OffLattice { value: f64, spacing: f64 },

    #[error("grid specifications differ")]
    GridMismatch,

    #[error("no preimage: {0}")]
    NoPreimage(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, HeisError>;
