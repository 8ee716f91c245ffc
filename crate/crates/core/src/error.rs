use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("2j = {twice} is not compatible with {n} spin-1/2 particles (parity or range)")]
    Parity { n: u64, twice: i64 },

    #[error("the requested sector has dimension zero")]
    EmptySector,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("state is not inside the requested sector (residual {residual:e})")]
    OutsideSector { residual: f64 },

    #[error("unknown example state `{0}`")]
    UnknownExample(String),

    #[error("argument must be non-negative, got {0}")]
    NonPositive(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
