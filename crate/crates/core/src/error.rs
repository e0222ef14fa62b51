use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |M - M^dag| = {asymmetry:e}")]
    NotHermitian { asymmetry: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid subsystem selection: {0}")]
    InvalidSubsystem(String),

    #[error("trace is {trace:e}, expected 1")]
    TraceNotUnity { trace: f64 },

    #[error("eigenvalue {value:e} is below the negativity tolerance")]
    NegativeEigenvalue { value: f64 },

    #[error("unknown mode {0}")]
    UnknownMode(String),

    #[error("mode {mode} has {found} statistics, expected {expected}")]
    WrongStatistics {
        mode: String,
        expected: &'static str,
        found: &'static str,
    },

    #[error("duplicate mode {0} in registry")]
    DuplicateMode(String),

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("K/k1 singular at rest frame; take delta -> 0+ limit externally")]
    RestFrameSingular,

    #[error("state has zero norm after the map")]
    ZeroNorm,

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParameter { name, value, reason }
}
