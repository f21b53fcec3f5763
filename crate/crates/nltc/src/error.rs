use thiserror::Error;

#[derive(Debug, Error)]
pub enum NltcError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("truncated Fock space too small: tail mass {tail:.3e} exceeds {limit:.1e}")]
    Truncation { tail: f64, limit: f64 },

    #[error("size guard: {0}")]
    SizeGuard(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("measurement outcome has probability {0:.3e}, below resolvable threshold")]
    ZeroProbability(f64),

    #[error("no admissible N: {0}")]
    ThetaMismatch(String),

    #[error("density matrix invalid: {0}")]
    InvalidDensityMatrix(String),

    #[error("invalid run configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, NltcError>;
