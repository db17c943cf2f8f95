use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported root system `{0}` (expected one of A1, A2, A3, B2, B3, C2, C3, G2)")]
    UnsupportedType(String),

    #[error("rank mismatch: expected rank {expected}, got {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("index {index} is not a node of the (affine) Dynkin diagram of rank {rank}")]
    BadIndex { index: usize, rank: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("window too small: elimination left a residual supported on {residual_support:?}")]
    WindowTooSmall { residual_support: Vec<String> },

    #[error("not in the K_H(Gr) lattice: coefficient of {index} is {coefficient}")]
    NotInLattice { index: String, coefficient: String },

    #[error("zero pivot at {0}; the Schubert classes failed to be triangular")]
    ZeroPivot(String),

    #[error("semi-infinite comparison did not stabilize up to depth multiplier {cap}")]
    NotStabilized { cap: u32 },

    #[error("pole at q = 1 in {0}")]
    Pole(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
