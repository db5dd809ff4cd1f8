use thiserror::Error;

/// Errors raised by constructors and operations in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least {min}, got {got}")]
    InvalidDimension { got: usize, min: usize },

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("matrix is not positive semi-definite (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("Jacobi eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("Bloch vector norm {norm} exceeds the bound {bound}")]
    BlochNormExceeded { norm: f64, bound: f64 },

    #[error("vectors do not form an orthonormal basis (max deviation {0:e})")]
    NotOrthonormal(f64),

    #[error("dimension {0} is not prime")]
    NotPrime(usize),

    #[error(
        "requested {requested} mutually unbiased bases, at most {max} exist in this construction"
    )]
    TooManyBases { requested: usize, max: usize },

    #[error("dit {dit} out of range for alphabet size {d}")]
    DitOutOfRange { dit: usize, d: usize },

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("{what} has size {size}, above the enumeration limit {limit}")]
    SizeLimit {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
