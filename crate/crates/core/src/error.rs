use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("word represents the identity element")]
    TrivialWord,

    #[error("element is not hyperbolic: |trace| = {0}")]
    NotHyperbolic(f64),

    #[error("invalid generator set: {0}")]
    InvalidGenerators(String),

    #[error("length cutoff {requested} exceeds the supported maximum {limit}")]
    CutoffTooLarge { requested: f64, limit: f64 },

    #[error("spectrum cache has format version {found}, expected {expected}")]
    FormatVersionMismatch { found: String, expected: u32 },

    #[error("corrupt spectrum record at line {line}: {reason}")]
    CorruptRecord { line: usize, reason: String },

    #[error("spectrum invariant violated: {0}")]
    InvariantViolation(String),

    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),

    #[error("eigenvalue iteration failed: {0}")]
    ConvergenceFailure(String),

    #[error("spectrum is complete only up to length {available}, but {required} is required")]
    IncompleteSpectrum { available: f64, required: f64 },

    #[error("invalid flux specification: {0}")]
    InvalidFluxSpec(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
